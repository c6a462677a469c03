#include "ntlab/cli.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "CLI11.hpp"
#include "ntlab/config.hpp"
#include "ntlab/detail/parallel.hpp"
#include "ntlab/dioph.hpp"
#include "ntlab/emit.hpp"
#include "ntlab/loeschian.hpp"
#include "ntlab/power_eq.hpp"
#include "ntlab/pseudofib.hpp"
#include "ntlab/repunit.hpp"

namespace ntlab::cli {

namespace {

using emit::Json;

struct Globals {
    bool quick = false;
    std::uint64_t seed = config::default_seed;
    std::string format = "json";
    std::uint64_t budget = 0;
    unsigned jobs = config::default_jobs;
    std::string out_path;

    const config::Bounds& bounds() const { return quick ? config::quick : config::full; }
    FactorOptions factor() const { return {budget, seed}; }
};

struct Result {
    Verdict verdict = Verdict::consistent;
};

using Action = std::function<Result(emit::Emitter&)>;

const CLI::Validator natural_text(
    [](std::string& s) -> std::string {
        Natural n;
        if (s.empty() || s[0] == '-' || s[0] == '+' || n.set_str(s, 10) != 0) return "not a natural number: " + s;
        return {};
    },
    "NATURAL");

Natural to_natural(const std::string& s) { return Natural(s, 10); }

// ----- repunit -------------------------------------------------------------

Json factor_list(const Factorization& f) {
    Json out = Json::array();
    for (const auto& pp : f.factors)
        out.push_back(pp.exponent == 1 ? pp.prime.get_str() : pp.prime.get_str() + "^" + std::to_string(pp.exponent));
    return out;
}

Json repunit_record(const repunit::RepunitReport& r) {
    Json j;
    j["p"] = emit::natural(r.input.p);
    j["q"] = r.input.q;
    j["A"] = emit::natural(r.A);
    j["factors"] = factor_list(r.factorization);
    j["below_p"] = emit::naturals(r.below_p);
    j["above_p"] = emit::naturals(r.above_p);
    j["case"] = std::string(repunit::to_string(r.theorem_case));
    j["verdict"] = std::string(to_string(r.verdict));
    j["claim"] = std::string(repunit::to_string(r.claim));
    j["equal_p"] = r.equal_p;
    j["unfactored"] = emit::naturals(r.factorization.unfactored);
    j["theorem3_all_above"] = r.theorem3 ? Json(r.theorem3->all_above) : Json();
    j["theorem3_exactly_one_above"] = r.theorem3 ? Json(r.theorem3->exactly_one_above) : Json();
    j["details"] = r.details;
    return j;
}

std::optional<repunit::TheoremCase> parse_case(const std::string& s) {
    using repunit::TheoremCase;
    for (auto c : {TheoremCase::T1, TheoremCase::T2, TheoremCase::T3, TheoremCase::T4})
        if (s == repunit::to_string(c)) return c;
    return std::nullopt;
}

void add_repunit(CLI::App& app, Globals& g, Action& action) {
    auto* cmd = app.add_subcommand("repunit", "Divisor structure of (p^q - 1)/(p - 1)");
    struct Opts {
        std::string p;
        unsigned long q = 0;
        std::string claim;
        std::string sweep;
        unsigned long bound = 0;
    };
    auto o = std::make_shared<Opts>();
    auto* p = cmd->add_option("--p", o->p, "Base p >= 2")->check(natural_text);
    auto* q = cmd->add_option("--q", o->q, "Exponent q >= 2")->check(CLI::PositiveNumber);
    p->needs(q);
    q->needs(p);
    cmd->add_option("--claim", o->claim, "Check against T1, T2, T3 or T4 instead of the applicable case")
        ->check(CLI::IsMember({"T1", "T2", "T3", "T4"}))
        ->needs(p);
    auto* sweep = cmd->add_option("--sweep", o->sweep, "Run a theorem sweep")
                      ->check(CLI::IsMember({"T1", "T2", "T3", "T4", "all"}))
                      ->excludes(p)
                      ->excludes(q);
    cmd->add_option("--bound", o->bound, "Sweep bound (q_max, or the prime bound for T2)")
        ->check(CLI::PositiveNumber)
        ->needs(sweep);
    cmd->callback([o, &g, &action] {
        if (o->p.empty() && o->sweep.empty()) throw CLI::RequiredError("--p/--q or --sweep");
        action = [o, &g](emit::Emitter& em) {
            Result res;
            std::vector<repunit::RepunitReport> reports;
            if (!o->p.empty()) {
                const Natural p = to_natural(o->p);
                reports.push_back(o->claim.empty() ? repunit::classify_divisors(p, o->q, g.factor())
                                                   : repunit::check_claim(p, o->q, *parse_case(o->claim),
                                                                          g.factor()));
            } else {
                const auto& b = g.bounds();
                repunit::SweepOptions so{g.factor(), g.jobs};
                auto bound = [&](unsigned long d) { return o->bound ? o->bound : d; };
                auto add = [&](std::vector<repunit::RepunitReport> v) {
                    for (auto& r : v) reports.push_back(std::move(r));
                };
                const bool all = o->sweep == "all";
                if (all || o->sweep == "T1") add(repunit::verify_theorem_1(bound(b.repunit_t1_q_max), so));
                if (all || o->sweep == "T2") add(repunit::verify_theorem_2(bound(b.repunit_t2_bound), so));
                if (all || o->sweep == "T3") add(repunit::verify_theorem_3(bound(b.repunit_t3_q_max), so));
                if (all || o->sweep == "T4") add(repunit::verify_theorem_4(bound(b.repunit_t4_q_max), so));
            }
            for (const auto& r : reports) em.record(repunit_record(r));
            res.verdict = repunit::overall(reports);
            em.summary({{"command", "repunit"},
                        {"reports", reports.size()},
                        {"verdict", std::string(to_string(res.verdict))}});
            return res;
        };
    });
}

// ----- power-eq ------------------------------------------------------------

Json power_record(const power_eq::PowerEqSolution& s) {
    return {{"base", emit::natural(s.base)},
            {"x", s.x},
            {"y", emit::natural(s.y)},
            {"z", s.z},
            {"provenance", std::string(to_string(s.provenance))}};
}

std::vector<power_eq::PowerEqSolution> mersenne_in_range(unsigned long x_max, std::uint32_t y_max,
                                                         unsigned long z_max) {
    std::vector<power_eq::PowerEqSolution> out;
    if (z_max < 2) return out;
    for (auto& s : power_eq::mersenne_solutions(x_max))
        if (s.y <= y_max) out.push_back(std::move(s));
    return out;
}

bool same_set(const std::vector<power_eq::PowerEqSolution>& a, const std::vector<power_eq::PowerEqSolution>& b) {
    return a.size() == b.size() &&
           std::equal(a.begin(), a.end(), b.begin(), [](const auto& x, const auto& y) { return x.same_tuple(y); });
}

void add_power_eq(CLI::App& app, Globals& g, Action& action) {
    auto* cmd = app.add_subcommand("power-eq", "Solutions of base^x = (y^z - 1)/(y - 1), y prime");
    struct Opts {
        std::string base = "2";
        unsigned long x_max = 0;
        std::uint32_t y_max = 0;
        unsigned long z_max = 0;
        std::string mode = "search";
        unsigned long decompose = 0;
    };
    auto o = std::make_shared<Opts>();
    cmd->add_option("--base", o->base, "Base, default 2")->check(natural_text);
    cmd->add_option("--x-max", o->x_max, "Largest exponent x")->check(CLI::PositiveNumber);
    cmd->add_option("--y-max", o->y_max, "Largest prime y")->check(CLI::PositiveNumber);
    cmd->add_option("--z-max", o->z_max, "Largest exponent z")->check(CLI::PositiveNumber);
    cmd->add_option("--mode", o->mode, "search, mersenne or cross (base 2 only)")
        ->check(CLI::IsMember({"search", "mersenne", "cross"}));
    cmd->add_option("--decompose", o->decompose, "Write 2^n + ... as distinct Mersenne exponents summing to n")
        ->check(CLI::PositiveNumber);
    cmd->callback([o, &g, &action] {
        const Natural base = to_natural(o->base);
        if (o->mode != "search" && base != 2) throw CLI::ValidationError("--mode", "mersenne and cross need base 2");
        action = [o, base, &g](emit::Emitter& em) {
            Result res;
            if (o->decompose) {
                auto d = power_eq::power_of_two_product_decomposition(o->decompose);
                Json rec{{"n", o->decompose}, {"exponents", Json::array()}, {"found", d.has_value()}};
                if (d) rec["exponents"] = *d;
                em.record(rec);
                em.summary({{"command", "power-eq"}, {"mode", "decompose"}, {"verdict", "consistent"}});
                return res;
            }
            const auto& b = g.bounds();
            const unsigned long x_max = o->x_max ? o->x_max : b.power_x_max;
            const std::uint32_t y_max = o->y_max ? o->y_max : b.power_y_max;
            const unsigned long z_max = o->z_max ? o->z_max : b.power_z_max;
            std::vector<power_eq::PowerEqSolution> shown;
            Json summary{{"command", "power-eq"}, {"mode", o->mode},     {"base", emit::natural(base)},
                         {"x_max", x_max},        {"y_max", y_max},      {"z_max", z_max}};
            if (o->mode == "mersenne") {
                shown = mersenne_in_range(x_max, y_max, z_max);
            } else {
                shown = power_eq::search_power_eq(base, x_max, y_max, z_max, g.jobs);
                if (o->mode == "cross") {
                    const bool match = same_set(shown, mersenne_in_range(x_max, y_max, z_max));
                    summary["match"] = match;
                    if (!match) res.verdict = Verdict::violation;
                }
            }
            for (const auto& s : shown) em.record(power_record(s));
            summary["solutions"] = shown.size();
            summary["verdict"] = std::string(to_string(res.verdict));
            em.summary(summary);
            return res;
        };
    });
}

// ----- dioph ---------------------------------------------------------------

Json dioph_record(const dioph::DiophSolution& s, const char* status = nullptr) {
    Json j{{"equation", std::string(dioph::to_string(s.equation))},
           {"x", emit::natural(s.x)},
           {"y", emit::natural(s.y)}};
    if (dioph::has_z(s.equation)) j["z"] = s.z;
    j["provenance"] = std::string(to_string(s.provenance));
    j["family"] = s.family;
    if (status) j["status"] = status;
    return j;
}

Json tuple_list(const std::vector<dioph::DiophSolution>& v) {
    Json out = Json::array();
    for (const auto& s : v) {
        std::string t = "(" + s.x.get_str() + "," + s.y.get_str();
        if (dioph::has_z(s.equation)) t += "," + std::to_string(s.z);
        out.push_back(t + ")");
    }
    return out;
}

void add_dioph(CLI::App& app, Globals& g, Action& action) {
    auto* cmd = app.add_subcommand("dioph", "Exponential Diophantine equations I-X");
    struct Opts {
        std::string equation;
        unsigned long x_max = 0, y_max = 0, z_max = 0;
        std::string mode = "cross";
        std::uint64_t bit_budget = 0;
        unsigned long ab_max = 0, n_max = 0;
    };
    auto o = std::make_shared<Opts>();
    cmd->add_option("--equation", o->equation, "I, II, ..., X");
    cmd->add_option("--x-max", o->x_max)->check(CLI::PositiveNumber);
    cmd->add_option("--y-max", o->y_max)->check(CLI::PositiveNumber);
    cmd->add_option("--z-max", o->z_max)->check(CLI::PositiveNumber);
    cmd->add_option("--mode", o->mode, "search, family, cross or lemma1")
        ->check(CLI::IsMember({"search", "family", "cross", "lemma1"}));
    cmd->add_option("--bit-budget", o->bit_budget, "Largest side, in bits, that is expanded")
        ->check(CLI::PositiveNumber);
    cmd->add_option("--ab-max", o->ab_max, "lemma1: bound on a and b")->check(CLI::PositiveNumber);
    cmd->add_option("--n-max", o->n_max, "lemma1: largest exponent")->check(CLI::PositiveNumber);
    cmd->callback([o, &g, &action] {
        std::optional<dioph::Equation> eq;
        if (o->mode != "lemma1") {
            if (o->equation.empty()) throw CLI::RequiredError("--equation");
            eq = dioph::parse_equation(o->equation);
            if (!eq) throw CLI::ValidationError("--equation", "unknown equation " + o->equation);
        }
        action = [o, eq, &g](emit::Emitter& em) {
            Result res;
            const auto& b = g.bounds();
            if (o->mode == "lemma1") {
                const unsigned long ab = o->ab_max ? o->ab_max : b.lemma1_ab_max;
                const unsigned long n = o->n_max ? o->n_max : b.lemma1_n_max;
                auto sw = dioph::lemma1_sweep(ab, n);
                for (const auto& c : sw.counterexamples) em.record({{"counterexample", c}});
                res.verdict = sw.counterexamples.empty() ? Verdict::consistent : Verdict::violation;
                em.summary({{"command", "dioph"},
                            {"mode", "lemma1"},
                            {"ab_max", ab},
                            {"n_max", n},
                            {"pairs", sw.pairs},
                            {"divides", sw.divides},
                            {"counterexamples", sw.counterexamples.size()},
                            {"verdict", std::string(to_string(res.verdict))}});
                return res;
            }
            dioph::Box box{o->x_max ? o->x_max : b.dioph_xy_max, o->y_max ? o->y_max : b.dioph_xy_max,
                           o->z_max ? o->z_max : b.dioph_z_max};
            dioph::SearchOptions so{o->bit_budget ? o->bit_budget : b.dioph_bit_budget, g.jobs};
            Json summary{{"command", "dioph"},
                         {"mode", o->mode},
                         {"equation", std::string(dioph::to_string(*eq))},
                         {"x_max", box.x_max},
                         {"y_max", box.y_max}};
            if (dioph::has_z(*eq)) summary["z_max"] = box.z_max;
            if (o->mode == "search") {
                auto sr = dioph::search(*eq, box, so);
                for (const auto& s : sr.solutions) em.record(dioph_record(s));
                if (sr.skipped) res.verdict = Verdict::indeterminate;
                summary["candidates"] = sr.candidates;
                summary["skipped"] = sr.skipped;
                summary["solutions"] = sr.solutions.size();
            } else if (o->mode == "family") {
                auto fr = dioph::closed_form_in_box(*eq, box);
                for (const auto& s : fr.solutions) em.record(dioph_record(s));
                summary["family_known"] = fr.known;
                summary["solutions"] = fr.solutions.size();
            } else {
                auto cr = dioph::cross_verify(*eq, box, so);
                auto in = [](const std::vector<dioph::DiophSolution>& v, const dioph::DiophSolution& s) {
                    return std::any_of(v.begin(), v.end(), [&](const auto& t) { return t.same_tuple(s); });
                };
                for (const auto& s : cr.searched) {
                    auto fam = std::find_if(cr.family.begin(), cr.family.end(),
                                            [&](const auto& t) { return t.same_tuple(s); });
                    em.record(dioph_record(fam != cr.family.end() ? *fam : s,
                                           fam != cr.family.end() ? "both" : "search_only"));
                }
                for (const auto& s : cr.family)
                    if (!in(cr.searched, s)) em.record(dioph_record(s, "family_only"));
                res.verdict = cr.verdict;
                summary["family_known"] = cr.family_known;
                summary["searched"] = cr.searched.size();
                summary["family"] = cr.family.size();
                summary["missed_by_family"] = tuple_list(cr.missed_by_family);
                summary["extra_in_family"] = tuple_list(cr.extra_in_family);
                summary["skipped"] = cr.skipped;
                summary["match"] = cr.match;
                summary["details"] = cr.details;
            }
            summary["verdict"] = std::string(to_string(res.verdict));
            em.summary(summary);
            return res;
        };
    });
}

// ----- loeschian -----------------------------------------------------------

Json rep_record(const loeschian::LoeschianRep& r) {
    return {{"a", emit::natural(r.a)},
            {"b", emit::natural(r.b)},
            {"value", emit::natural(r.value)},
            {"primitive", r.primitive},
            {"degenerate", r.degenerate}};
}

Json tuple_of(const loeschian::LoeschianRep& r) { return "(" + r.a.get_str() + "," + r.b.get_str() + ")"; }

Json sweep_summary(const char* check, const loeschian::SweepReport& r) {
    return {{"command", "loeschian"},
            {"check", check},
            {"checked", r.checked},
            {"sub_checks", r.sub_checks},
            {"violations", r.violations.size()},
            {"verdict", std::string(to_string(r.verdict()))}};
}

void add_loeschian(CLI::App& app, Globals& g, Action& action) {
    auto* cmd = app.add_subcommand("loeschian", "The form a^2 + ab + b^2");
    cmd->require_subcommand(1);
    auto n_text = std::make_shared<std::string>();
    auto limit = std::make_shared<std::uint32_t>(0);
    auto ab = std::make_shared<std::array<std::string, 4>>();
    auto max_exp = std::make_shared<unsigned long>(5);

    auto* repr = cmd->add_subcommand("repr", "All 1 <= a <= b with a^2 + ab + b^2 = N");
    repr->add_option("N", *n_text)->required()->check(natural_text);
    repr->callback([n_text, &action] {
        action = [n_text](emit::Emitter& em) {
            const Natural n = to_natural(*n_text);
            auto reps = loeschian::representations(n);
            for (const auto& r : reps) em.record(rep_record(r));
            em.summary({{"command", "loeschian"},
                        {"check", "repr"},
                        {"n", emit::natural(n)},
                        {"representations", reps.size()},
                        {"verdict", "consistent"}});
            return Result{};
        };
    });

    auto* solv = cmd->add_subcommand("solvable", "Whether a^2 + ab + b^2 = N has a solution with a, b >= 1");
    solv->add_option("N", *n_text)->required()->check(natural_text);
    solv->callback([n_text, &g, &action] {
        action = [n_text, &g](emit::Emitter& em) {
            const Natural n = to_natural(*n_text);
            const auto s = loeschian::solvable(n, g.factor());
            Result res;
            if (s == loeschian::Solvable::indeterminate) res.verdict = Verdict::indeterminate;
            const auto f = factorize(n, g.factor());
            em.record({{"n", emit::natural(n)},
                       {"solvable", std::string(loeschian::to_string(s))},
                       {"factors", factor_list(f)},
                       {"odd_exponent_criterion", f.complete() ? Json(loeschian::odd_exponent_criterion(f)) : Json()}});
            em.summary({{"command", "loeschian"}, {"check", "solvable"}, {"verdict", std::string(to_string(res.verdict))}});
            return res;
        };
    });

    auto* classify = cmd->add_subcommand("classify", "Whether a prime P is a value of the form");
    classify->add_option("P", *n_text)->required()->check(natural_text);
    classify->callback([n_text, &action] {
        action = [n_text](emit::Emitter& em) {
            const Natural p = to_natural(*n_text);
            const auto c = loeschian::classify_prime(p);
            em.record({{"p", emit::natural(p)}, {"class", std::string(loeschian::to_string(c))}, {"p_mod_3", Natural(p % 3).get_ui()}});
            em.summary({{"command", "loeschian"}, {"check", "classify"}, {"verdict", "consistent"}});
            return Result{};
        };
    });

    auto* powers = cmd->add_subcommand("powers", "Forms of (a^2 + ab + b^2)^e reached by composition");
    powers->add_option("--a", (*ab)[0])->required()->check(natural_text);
    powers->add_option("--b", (*ab)[1])->required()->check(natural_text);
    powers->add_option("--max-exp", *max_exp)->check(CLI::PositiveNumber);
    powers->callback([ab, max_exp, &action] {
        action = [ab, max_exp](emit::Emitter& em) {
            auto rep = loeschian::power_identities_check(to_natural((*ab)[0]), to_natural((*ab)[1]), *max_exp);
            for (std::size_t e = 0; e < rep.levels.size(); ++e)
                for (const auto& r : rep.levels[e]) {
                    Json j{{"exponent", e + 1}};
                    const Json fields = rep_record(r);
                    for (const auto& [k, v] : fields.items()) j[k] = v;
                    em.record(j);
                }
            em.summary({{"command", "loeschian"},
                        {"check", "powers"},
                        {"square_form", tuple_of(rep.square_form)},
                        {"cube_form", tuple_of(rep.cube_form)},
                        {"square_ok", rep.square_ok},
                        {"cube_ok", rep.cube_ok},
                        {"levels_ok", rep.levels_ok},
                        {"square_reached", rep.square_reached},
                        {"cube_reached", rep.cube_reached},
                        {"verdict", std::string(to_string(rep.verdict))}});
            return Result{rep.verdict};
        };
    });

    auto* compose = cmd->add_subcommand("compose", "Both product forms of (a, b) and (c, d)");
    for (int i = 0; i < 4; ++i)
        compose->add_option(std::string("--") + "abcd"[i], (*ab)[i])->required()->check(natural_text);
    compose->callback([ab, &action] {
        action = [ab](emit::Emitter& em) {
            auto r1 = loeschian::make_rep(to_natural((*ab)[0]), to_natural((*ab)[1]));
            auto r2 = loeschian::make_rep(to_natural((*ab)[2]), to_natural((*ab)[3]));
            auto c = loeschian::compose(r1, r2);
            for (const auto* f : {&c.form_a, &c.form_b}) em.record(rep_record(*f));
            em.summary({{"command", "loeschian"}, {"check", "compose"}, {"verdict", "consistent"}});
            return Result{};
        };
    });

    struct Sweep {
        const char* name;
        const char* help;
        loeschian::SweepReport (*run)(std::uint32_t);
        std::uint32_t config::Bounds::*bound;
    };
    static const Sweep sweeps[] = {
        {"closure", "Divisors of primitive values are values", &loeschian::verify_divisor_closure,
         &config::Bounds::loeschian_n_max},
        {"solvable-sweep", "solvable(n) against enumeration", &loeschian::verify_solvable,
         &config::Bounds::loeschian_n_max},
        {"primes", "Prime classification against residues mod 3", &loeschian::verify_prime_classification,
         &config::Bounds::loeschian_n_max},
    };
    for (const auto& sw : sweeps) {
        auto* sub = cmd->add_subcommand(sw.name, sw.help);
        sub->add_option("--max", *limit, "Upper bound")->check(CLI::PositiveNumber);
        sub->callback([&sw, limit, &g, &action] {
            action = [&sw, limit, &g](emit::Emitter& em) {
                const auto r = sw.run(*limit ? *limit : g.bounds().*sw.bound);
                for (const auto& v : r.violations) em.record({{"violation", v}});
                em.summary(sweep_summary(sw.name, r));
                return Result{r.verdict()};
            };
        });
    }

    auto* ids = cmd->add_subcommand("identities", "Composition and cross-term identities on a grid");
    ids->add_option("--limit", *limit, "Grid bound for a, b, c, d")->check(CLI::PositiveNumber);
    ids->callback([limit, &g, &action] {
        action = [limit, &g](emit::Emitter& em) {
            const auto r = loeschian::verify_composition_identities(*limit ? *limit : g.bounds().loeschian_grid);
            for (const auto& v : r.violations) em.record({{"violation", v}});
            em.summary(sweep_summary("identities", r));
            return Result{r.verdict()};
        };
    });
}

// ----- pseudofib -----------------------------------------------------------

Json complex_fields(Json j, const pseudofib::Complex& c) {
    j["re"] = c.real();
    j["im"] = c.imag();
    return j;
}

void add_pseudofib(CLI::App& app, Globals& g, Action& action) {
    auto* cmd = app.add_subcommand("pseudofib", "Order-k sums of the previous k terms");
    cmd->require_subcommand(1);
    struct Opts {
        unsigned k = 3;
        unsigned n = 20;
        unsigned n_max = 0;
        unsigned depth = 0;
        unsigned trials = 0;
        bool compare = false;
    };
    auto o = std::make_shared<Opts>();
    auto order = [o](CLI::App* sub) {
        sub->add_option("-k,--order", o->k, "Order k")->check(CLI::Range(2u, 64u));
    };

    auto* t = cmd->add_subcommand("terms", "u_1..u_n");
    order(t);
    t->add_option("-n,--count", o->n)->check(CLI::PositiveNumber);
    t->callback([o, &action] {
        action = [o](emit::Emitter& em) {
            auto u = pseudofib::terms(pseudofib::RecurrenceSpec::ones(o->k), o->n);
            for (unsigned i = 0; i < u.size(); ++i) em.record({{"n", i + 1}, {"u", emit::natural(u[i])}});
            em.summary({{"command", "pseudofib"}, {"check", "terms"}, {"k", o->k}, {"verdict", "consistent"}});
            return Result{};
        };
    });

    auto* r = cmd->add_subcommand("roots", "Roots of x^k - x^(k-1) - ... - 1");
    order(r);
    r->callback([o, &action] {
        action = [o](emit::Emitter& em) {
            auto cr = pseudofib::characteristic_roots(o->k);
            for (std::size_t i = 0; i < cr.roots.size(); ++i)
                em.record(complex_fields({{"index", i + 1}}, cr.roots[i]));
            em.summary({{"command", "pseudofib"},
                        {"check", "roots"},
                        {"k", o->k},
                        {"dominant", cr.dominant},
                        {"max_residual", cr.max_residual},
                        {"verdict", "consistent"}});
            return Result{};
        };
    });

    auto* c = cmd->add_subcommand("closedform", "sum c_i q_i^(n-1) for n = 1..N");
    c->add_option("-k,--order", o->k)->check(CLI::Range(2u, 12u));
    c->add_option("-n,--count", o->n)->check(CLI::PositiveNumber);
    c->add_flag("--compare", o->compare, "Compare against the exact terms (relative 1e-6)");
    c->callback([o, &action] {
        action = [o](emit::Emitter& em) {
            Result res;
            auto cf = pseudofib::closed_form(o->k);
            const auto exact = pseudofib::terms(pseudofib::RecurrenceSpec::ones(o->k), o->n);
            double worst = 0;
            for (unsigned n = 1; n <= o->n; ++n) {
                const double v = pseudofib::closed_form_eval(cf, n);
                Json j{{"n", n}, {"closed_form", v}};
                if (o->compare) {
                    const double want = exact[n - 1].get_d();
                    const double rel = std::abs(v - want) / want;
                    worst = std::max(worst, rel);
                    j["exact"] = emit::natural(exact[n - 1]);
                    j["relative_error"] = rel;
                }
                em.record(j);
            }
            Json s{{"command", "pseudofib"}, {"check", "closedform"}, {"k", o->k}};
            Json coeffs = Json::array();
            for (const auto& x : cf.coefficients) coeffs.push_back(Json::array({x.real(), x.imag()}));
            s["coefficients"] = coeffs;
            if (o->compare) {
                s["max_relative_error"] = worst;
                if (!(worst < 1e-6)) res.verdict = Verdict::violation;
            }
            s["verdict"] = std::string(to_string(res.verdict));
            em.summary(s);
            return res;
        };
    });

    auto* id = cmd->add_subcommand("identities", "u_n = 2u_(n-1) - u_(n-k-1) on the terms and iterated sums");
    order(id);
    id->add_option("-n,--n-max", o->n_max)->check(CLI::PositiveNumber);
    id->add_option("--depth", o->depth, "Iterated-sum depth")->check(CLI::PositiveNumber);
    id->callback([o, &g, &action] {
        action = [o, &g](emit::Emitter& em) {
            const auto spec = pseudofib::RecurrenceSpec::ones(o->k);
            const unsigned n_max = o->n_max ? o->n_max : g.bounds().pseudofib_n_max;
            std::vector<pseudofib::IdentityReport> reps{pseudofib::verify_shift_identity(spec, n_max)};
            for (auto& x : pseudofib::verify_sum_identity(spec, n_max, o->depth ? o->depth : g.bounds().pseudofib_depth))
                reps.push_back(std::move(x));
            Result res;
            for (const auto& x : reps) {
                em.record({{"level", x.level},
                           {"checked", x.checked},
                           {"holds", x.holds()},
                           {"first_failure", x.first_failure ? Json(*x.first_failure) : Json()},
                           {"offset", x.holds() ? Json() : Json(x.offset.get_str())}});
                if (!x.holds()) res.verdict = Verdict::violation;
            }
            em.summary({{"command", "pseudofib"},
                        {"check", "identities"},
                        {"k", o->k},
                        {"n_max", n_max},
                        {"verdict", std::string(to_string(res.verdict))}});
            return res;
        };
    });

    auto* card = cmd->add_subcommand("cardano", "The k = 3 roots from radicals");
    card->callback([&action] {
        action = [](emit::Emitter& em) {
            auto rep = pseudofib::cardano_root_check();
            int i = 0;
            for (const auto& q : {rep.q1, rep.q2, rep.q3}) em.record(complex_fields({{"root", ++i}}, q));
            em.summary({{"command", "pseudofib"},
                        {"check", "cardano"},
                        {"max_residual", rep.max_residual},
                        {"dominant_gap", rep.dominant_gap},
                        {"product", Json::array({rep.product.real(), rep.product.imag()})},
                        {"product_matches_vieta", rep.product_matches_vieta},
                        {"product_matches_printed", rep.product_matches_paper},
                        {"verdict", std::string(to_string(rep.verdict))}});
            return Result{rep.verdict};
        };
    });

    auto* sp = cmd->add_subcommand("closure", "Scaled and summed solutions stay solutions");
    order(sp);
    sp->add_option("--trials", o->trials)->check(CLI::PositiveNumber);
    sp->callback([o, &g, &action] {
        action = [o, &g](emit::Emitter& em) {
            auto rep = pseudofib::solution_space_check(o->k, o->trials ? o->trials : g.bounds().solution_trials, g.seed);
            em.summary({{"command", "pseudofib"},
                        {"check", "closure"},
                        {"k", o->k},
                        {"trials", rep.trials},
                        {"sequences", rep.sequences_checked},
                        {"failures", rep.failures},
                        {"verdict", std::string(to_string(rep.verdict()))}});
            return Result{rep.verdict()};
        };
    });
}


// ----- verify-all ----------------------------------------------------------

struct Outcome {
    Verdict verdict = Verdict::consistent;
    std::uint64_t instances = 0;
    std::uint64_t violations = 0;
    std::string detail;
};

struct Check {
    const char* module;
    const char* name;
    std::function<Outcome(const Globals&)> run;
};

Outcome from_sweep(const loeschian::SweepReport& r) {
    Outcome o{r.verdict(), r.checked, r.violations.size(), {}};
    if (!r.violations.empty()) o.detail = r.violations.front();
    return o;
}

Outcome repunit_sweep(std::vector<repunit::RepunitReport> reports) {
    Outcome o;
    o.instances = reports.size();
    o.verdict = repunit::overall(reports);
    for (const auto& r : reports) {
        if (r.verdict == Verdict::violation) {
            ++o.violations;
            if (o.detail.empty())
                o.detail = "p=" + r.input.p.get_str() + " q=" + std::to_string(r.input.q) +
                           (r.details.empty() ? "" : ": " + r.details.front());
        }
    }
    return o;
}

Outcome expect_power(const Globals& g, unsigned long base, std::vector<std::array<unsigned long, 3>> want) {
    const auto& b = g.bounds();
    auto got = power_eq::search_power_eq(base, b.power_x_max, b.power_y_max, b.power_z_max);
    Outcome o;
    o.instances = got.size();
    bool match = got.size() == want.size();
    for (std::size_t i = 0; match && i < got.size(); ++i)
        match = got[i].x == want[i][0] && got[i].y == want[i][1] && got[i].z == want[i][2];
    if (!match) {
        o.verdict = Verdict::violation;
        o.violations = 1;
        o.detail = "found " + std::to_string(got.size()) + " solutions against " + std::to_string(want.size()) +
                   " expected";
    }
    return o;
}

std::vector<Check> all_checks() {
    std::vector<Check> checks;
    using repunit::SweepOptions;
    checks.push_back({"repunit", "theorem_1", [](const Globals& g) {
                          return repunit_sweep(repunit::verify_theorem_1(g.bounds().repunit_t1_q_max,
                                                                         SweepOptions{g.factor(), 1}));
                      }});
    checks.push_back({"repunit", "theorem_2", [](const Globals& g) {
                          return repunit_sweep(repunit::verify_theorem_2(g.bounds().repunit_t2_bound,
                                                                         SweepOptions{g.factor(), 1}));
                      }});
    checks.push_back({"repunit", "theorem_3", [](const Globals& g) {
                          return repunit_sweep(repunit::verify_theorem_3(g.bounds().repunit_t3_q_max,
                                                                         SweepOptions{g.factor(), 1}));
                      }});
    checks.push_back({"repunit", "theorem_4", [](const Globals& g) {
                          return repunit_sweep(repunit::verify_theorem_4(g.bounds().repunit_t4_q_max,
                                                                         SweepOptions{g.factor(), 1}));
                      }});
    checks.push_back({"power_eq", "base_2_mersenne", [](const Globals& g) {
                          const auto& b = g.bounds();
                          auto got = power_eq::search_power_eq(2, b.power_x_max, b.power_y_max, b.power_z_max);
                          Outcome o;
                          o.instances = got.size();
                          if (!same_set(got, mersenne_in_range(b.power_x_max, b.power_y_max, b.power_z_max))) {
                              o.verdict = Verdict::violation;
                              o.violations = 1;
                              o.detail = "search and Mersenne exponents disagree";
                          }
                          return o;
                      }});
    checks.push_back({"power_eq", "base_3", [](const Globals& g) { return expect_power(g, 3, {{1, 2, 2}}); }});
    checks.push_back({"power_eq", "base_5", [](const Globals& g) { return expect_power(g, 5, {}); }});
    checks.push_back({"power_eq", "base_7", [](const Globals& g) { return expect_power(g, 7, {{1, 2, 3}}); }});
    for (auto e : dioph::all_equations) {
        static const std::string names[] = {"cross_I",  "cross_II",  "cross_III", "cross_IV",   "cross_V",
                                            "cross_VI", "cross_VII", "cross_VIII", "cross_IX", "cross_X"};
        checks.push_back({"dioph", names[static_cast<int>(e)].c_str(), [e](const Globals& g) {
                              const auto& b = g.bounds();
                              auto cr = dioph::cross_verify(e, {b.dioph_xy_max, b.dioph_xy_max, b.dioph_z_max},
                                                            {b.dioph_bit_budget, 1});
                              Outcome o;
                              o.verdict = cr.verdict;
                              o.instances = cr.searched.size();
                              o.violations = cr.missed_by_family.size() + cr.extra_in_family.size();
                              if (!cr.details.empty()) o.detail = cr.details.front();
                              return o;
                          }});
    }
    checks.push_back({"dioph", "lemma_1", [](const Globals& g) {
                          auto sw = dioph::lemma1_sweep(g.bounds().lemma1_ab_max, g.bounds().lemma1_n_max);
                          Outcome o;
                          o.instances = sw.pairs;
                          o.violations = sw.counterexamples.size();
                          if (o.violations) {
                              o.verdict = Verdict::violation;
                              o.detail = sw.counterexamples.front();
                          }
                          return o;
                      }});
    checks.push_back({"loeschian", "composition_identities", [](const Globals& g) {
                          return from_sweep(loeschian::verify_composition_identities(g.bounds().loeschian_grid));
                      }});
    checks.push_back({"loeschian", "seventh_power", [](const Globals&) {
                          auto rep = loeschian::power_identities_check(1, 2, 5);
                          const auto& fifth = rep.levels.back();
                          const bool found = std::find(fifth.begin(), fifth.end(), loeschian::make_rep(7, 126)) !=
                                             fifth.end();
                          Outcome o;
                          o.instances = fifth.size();
                          if (!found || rep.verdict != Verdict::consistent) {
                              o.verdict = Verdict::violation;
                              o.violations = 1;
                              o.detail = "(7,126) not reached at exponent 5";
                          }
                          return o;
                      }});
    checks.push_back({"loeschian", "divisor_closure", [](const Globals& g) {
                          return from_sweep(loeschian::verify_divisor_closure(g.bounds().loeschian_n_max));
                      }});
    checks.push_back({"loeschian", "solvable", [](const Globals& g) {
                          return from_sweep(loeschian::verify_solvable(g.bounds().loeschian_n_max));
                      }});
    checks.push_back({"loeschian", "prime_classification", [](const Globals& g) {
                          return from_sweep(loeschian::verify_prime_classification(g.bounds().loeschian_n_max));
                      }});
    checks.push_back({"pseudofib", "shift_identity", [](const Globals& g) {
                          Outcome o;
                          for (unsigned k = 2; k <= g.bounds().pseudofib_k_max; ++k) {
                              auto r = pseudofib::verify_shift_identity(pseudofib::RecurrenceSpec::ones(k),
                                                                        g.bounds().pseudofib_n_max);
                              o.instances += r.checked;
                              if (!r.holds()) {
                                  ++o.violations;
                                  o.verdict = Verdict::violation;
                              }
                          }
                          return o;
                      }});
    checks.push_back({"pseudofib", "sum_identity", [](const Globals& g) {
                          Outcome o;
                          auto reps = pseudofib::verify_sum_identity(pseudofib::RecurrenceSpec::ones(3),
                                                                     g.bounds().pseudofib_n_max,
                                                                     g.bounds().pseudofib_depth);
                          for (const auto& r : reps) {
                              o.instances += r.checked;
                              if (r.holds()) continue;
                              ++o.violations;
                              o.verdict = Verdict::violation;
                              if (o.detail.empty())
                                  o.detail = "level " + std::to_string(r.level) + " fails at n=" +
                                             std::to_string(*r.first_failure) + " with offset " + r.offset.get_str();
                          }
                          return o;
                      }});
    checks.push_back({"pseudofib", "closed_form", [](const Globals& g) {
                          Outcome o;
                          const auto& b = g.bounds();
                          for (unsigned k = 2; k <= b.closed_form_k_max; ++k) {
                              auto cf = pseudofib::closed_form(k);
                              auto exact = pseudofib::terms(pseudofib::RecurrenceSpec::ones(k), b.closed_form_n_max);
                              for (unsigned n = 1; n <= b.closed_form_n_max; ++n) {
                                  ++o.instances;
                                  const double want = exact[n - 1].get_d();
                                  if (!(std::abs(pseudofib::closed_form_eval(cf, n) - want) / want < 1e-6)) {
                                      ++o.violations;
                                      o.verdict = Verdict::violation;
                                  }
                              }
                          }
                          return o;
                      }});
    checks.push_back({"pseudofib", "cardano", [](const Globals&) {
                          auto rep = pseudofib::cardano_root_check();
                          Outcome o{rep.verdict, 3, rep.verdict == Verdict::violation ? 1u : 0u, {}};
                          o.detail = std::string("product of the three roots matches ") +
                                     (rep.product_matches_vieta ? "+1" : "neither +1") +
                                     (rep.product_matches_paper ? " and the printed -1" : ", not the printed -1");
                          return o;
                      }});
    checks.push_back({"pseudofib", "solution_space", [](const Globals& g) {
                          Outcome o;
                          for (unsigned k = 2; k <= g.bounds().pseudofib_k_max; ++k) {
                              auto r = pseudofib::solution_space_check(k, g.bounds().solution_trials, g.seed + k);
                              o.instances += r.sequences_checked;
                              o.violations += r.failures;
                          }
                          if (o.violations) o.verdict = Verdict::violation;
                          return o;
                      }});
    return checks;
}

void add_verify_all(CLI::App& app, Globals& g, Action& action) {
    auto* cmd = app.add_subcommand("verify-all", "Run the verification suite of every module");
    cmd->callback([&g, &action] {
        action = [&g](emit::Emitter& em) {
            const auto checks = all_checks();
            std::vector<Outcome> outcomes(checks.size());
            detail::parallel_for(checks.size(), g.jobs, [&](std::size_t i) {
                try {
                    outcomes[i] = checks[i].run(g);
                } catch (const std::exception& e) {
                    outcomes[i] = {Verdict::violation, 0, 1, std::string("exception: ") + e.what()};
                }
            });
            Result res;
            std::uint64_t violated = 0, undecided = 0;
            for (std::size_t i = 0; i < checks.size(); ++i) {
                const auto& o = outcomes[i];
                em.record({{"module", checks[i].module},
                           {"check", checks[i].name},
                           {"verdict", std::string(to_string(o.verdict))},
                           {"instances", o.instances},
                           {"violations", o.violations},
                           {"detail", o.detail}});
                res.verdict = combine(res.verdict, o.verdict);
                violated += o.verdict == Verdict::violation;
                undecided += o.verdict == Verdict::indeterminate;
            }
            em.summary({{"command", "verify-all"},
                        {"bounds", g.quick ? "quick" : "full"},
                        {"seed", g.seed},
                        {"checks", checks.size()},
                        {"violated", violated},
                        {"indeterminate", undecided},
                        {"verdict", std::string(to_string(res.verdict))}});
            return res;
        };
    });
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Computational checks for repunit divisors, power equations, exponential Diophantine "
                 "equations, the form a^2 + ab + b^2 and order-k Fibonacci-type sequences",
                 "ntlab"};
    Globals g;
    g.budget = config::default_budget();
    app.require_subcommand(1);
    app.fallthrough();
    app.add_flag("--quick", g.quick, "Use the reduced default bounds");
    app.add_option("--seed", g.seed, "Seed for randomized checks and factoring");
    app.add_option("--format", g.format, "json, csv or text")->check(CLI::IsMember({"json", "csv", "text"}));
    app.add_option("--budget", g.budget,
                   std::string("Factoring effort in modular multiplications; default from ") + config::budget_env)
        ->check(CLI::PositiveNumber);
    app.add_option("--jobs", g.jobs, "Worker threads")->check(CLI::Range(1u, 1024u));
    app.add_option("--out", g.out_path, "Write records to FILE instead of stdout");

    Action action;
    add_repunit(app, g, action);
    add_power_eq(app, g, action);
    add_dioph(app, g, action);
    add_loeschian(app, g, action);
    add_pseudofib(app, g, action);
    add_verify_all(app, g, action);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) {
            app.exit(e, out, err);
            return exit_consistent;
        }
        err << "error: " << e.what() << "\n\n" << app.help();
        return exit_usage;
    }
    if (!action) {
        err << app.help();
        return exit_usage;
    }

    std::ofstream file;
    if (!g.out_path.empty()) {
        file.open(g.out_path, std::ios::binary);
        if (!file) {
            err << "error: cannot open " << g.out_path << " for writing\n";
            return exit_usage;
        }
    }
    std::ostream& sink = g.out_path.empty() ? out : file;
    emit::Emitter em(sink, *emit::parse_format(g.format));
    try {
        const Result res = action(em);
        em.finish();
        return exit_code(res.verdict);
    } catch (const DomainError& e) {
        em.finish();
        err << "error: " << e.what() << '\n';
        return exit_usage;
    } catch (const std::exception& e) {
        em.finish();
        err << "error: " << e.what() << '\n';
        return exit_violation;
    }
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    std::vector<const char*> argv{"ntlab"};
    for (const auto& a : args) argv.push_back(a.c_str());
    return run(static_cast<int>(argv.size()), argv.data(), out, err);
}

}  // namespace ntlab::cli
