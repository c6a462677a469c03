#pragma once

#include <optional>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"
#include "ntlab/arith.hpp"

namespace ntlab::emit {

using Json = nlohmann::ordered_json;

enum class Format { json, csv, text };

std::string_view to_string(Format f);
std::optional<Format> parse_format(std::string_view s);

/// A JSON number when n fits in 64 bits unsigned, else its decimal string.
Json natural(const Natural& n);
Json naturals(const std::vector<Natural>& v);

/// Writes flat records in one of three formats.
///   json  one object per line, written immediately
///   csv   a header whenever the key set changes, then one row per record
///   text  the same blocks as aligned columns, rendered when a block closes
/// Arrays become ';'-joined cells in csv and text. The summary is the last
/// record and carries "type": "summary".
class Emitter {
public:
    Emitter(std::ostream& out, Format format);
    ~Emitter();
    Emitter(const Emitter&) = delete;
    Emitter& operator=(const Emitter&) = delete;

    void record(const Json& object);
    void summary(Json object);
    void finish();

    Format format() const { return format_; }
    std::size_t records() const { return count_; }

private:
    void close_block();

    std::ostream& out_;
    Format format_;
    std::vector<std::string> keys_;
    std::vector<std::vector<std::string>> rows_;
    std::size_t count_ = 0;
    bool finished_ = false;
};

/// One csv/text cell.
std::string cell(const Json& value);

}  // namespace ntlab::emit
