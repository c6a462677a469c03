#include "ntlab/emit.hpp"

#include <algorithm>
#include <cstdlib>

#include "ntlab/config.hpp"

namespace ntlab {

std::uint64_t config::default_budget() {
    if (const char* env = std::getenv(budget_env)) {
        char* end = nullptr;
        const unsigned long long v = std::strtoull(env, &end, 10);
        if (end != env && *end == '\0' && v > 0) return v;
    }
    return FactorOptions::default_budget;
}

namespace emit {

std::string_view to_string(Format f) {
    switch (f) {
        case Format::json: return "json";
        case Format::csv: return "csv";
        case Format::text: return "text";
    }
    return "?";
}

std::optional<Format> parse_format(std::string_view s) {
    if (s == "json") return Format::json;
    if (s == "csv") return Format::csv;
    if (s == "text") return Format::text;
    return std::nullopt;
}

Json natural(const Natural& n) {
    if (fits_u64(n)) return to_u64(n);
    return n.get_str();
}

Json naturals(const std::vector<Natural>& v) {
    Json out = Json::array();
    for (const auto& n : v) out.push_back(natural(n));
    return out;
}

namespace {

std::string scalar(const Json& v) {
    if (v.is_null()) return "";
    if (v.is_string()) return v.get<std::string>();
    return v.dump();
}

std::string csv_quote(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += '"';
        out += c;
    }
    return out + '"';
}

}  // namespace

std::string cell(const Json& value) {
    if (!value.is_array()) return scalar(value);
    std::string out;
    for (std::size_t i = 0; i < value.size(); ++i) {
        if (i) out += ';';
        out += scalar(value[i]);
    }
    return out;
}

Emitter::Emitter(std::ostream& out, Format format) : out_(out), format_(format) {}

Emitter::~Emitter() {
    try {
        finish();
    } catch (...) {
    }
}

void Emitter::record(const Json& object) {
    ++count_;
    if (format_ == Format::json) {
        out_ << object.dump() << '\n';
        return;
    }
    std::vector<std::string> keys, row;
    for (const auto& [k, v] : object.items()) {
        keys.push_back(k);
        row.push_back(cell(v));
    }
    if (keys != keys_) {
        close_block();
        keys_ = std::move(keys);
        if (format_ == Format::csv) {
            for (std::size_t i = 0; i < keys_.size(); ++i) out_ << (i ? "," : "") << csv_quote(keys_[i]);
            out_ << '\n';
        }
    }
    if (format_ == Format::csv) {
        for (std::size_t i = 0; i < row.size(); ++i) out_ << (i ? "," : "") << csv_quote(row[i]);
        out_ << '\n';
    } else {
        rows_.push_back(std::move(row));
    }
}

void Emitter::summary(Json object) {
    Json tagged{{"type", "summary"}};
    for (auto& [k, v] : object.items()) tagged[k] = std::move(v);
    if (format_ == Format::text) {
        close_block();
        keys_.clear();
    }
    record(tagged);
    --count_;
}

void Emitter::close_block() {
    if (format_ != Format::text || keys_.empty()) return;
    std::vector<std::size_t> width(keys_.size());
    for (std::size_t i = 0; i < keys_.size(); ++i) width[i] = keys_[i].size();
    for (const auto& row : rows_)
        for (std::size_t i = 0; i < row.size(); ++i) width[i] = std::max(width[i], row[i].size());
    auto line = [&](const std::vector<std::string>& cells) {
        std::string s;
        for (std::size_t i = 0; i < cells.size(); ++i) {
            s += cells[i];
            if (i + 1 < cells.size()) s += std::string(width[i] - cells[i].size() + 2, ' ');
        }
        out_ << s << '\n';
    };
    line(keys_);
    for (const auto& row : rows_) line(row);
    out_ << '\n';
    rows_.clear();
}

void Emitter::finish() {
    if (finished_) return;
    finished_ = true;
    close_block();
    out_.flush();
}

}  // namespace emit
}  // namespace ntlab
