#include "ntlab/dioph.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <sstream>

#include "ntlab/detail/parallel.hpp"

namespace ntlab::dioph {

namespace {

constexpr const char* kNames[] = {"I", "II", "III", "IV", "V", "VI", "VII", "VIII", "IX", "X"};

struct Power {
    Natural base;
    Natural exp;
};

double log2_of(const Natural& n) {
    long e = 0;
    const double m = mpz_get_d_2exp(&e, n.get_mpz_t());
    return std::log2(m) + static_cast<double>(e);
}

// Approximate bit length of base^exp (0 for 0^e and 1^e, infinity when
// the exponent alone is astronomically large).
double bits_of(const Power& p) {
    if (p.base <= 1 || p.exp == 0) return 0.0;
    if (mpz_sizeinbase(p.exp.get_mpz_t(), 2) > 900) return HUGE_VAL;
    return mpz_get_d(p.exp.get_mpz_t()) * log2_of(p.base);
}

Natural expand(const Power& p) {
    if (!p.exp.fits_ulong_p()) throw BitBudgetExceeded("exponent does not fit a machine word");
    return power(p.base, p.exp.get_ui());
}

// Both sides of IV..X as single powers. Assumes the side condition holds.
std::pair<Power, Power> power_sides(Equation e, const Natural& x, const Natural& y) {
    const Natural sum = x + y;
    switch (e) {
        case Equation::IV: return {{y - x, sum}, {x, y}};
        case Equation::V: return {{y - x, sum}, {y, x}};
        case Equation::VI: return {{sum, x - y}, {x, y}};
        case Equation::VII: return {{sum, x - y}, {y, x}};
        case Equation::VIII: return {{sum, y}, {x - y, x}};
        case Equation::IX: return {{x - y, sum}, {x, x - y}};
        case Equation::X: return {{sum, x - y}, {x - y, x}};
        default: throw std::logic_error("power_sides: not a two-power equation");
    }
}

// Powers appearing in I..III, for the size estimate.
std::vector<Power> sum_terms(Equation e, const Natural& x, const Natural& y, unsigned long z) {
    const Natural zz = z;
    switch (e) {
        case Equation::I: return {{(x + y) / 2, zz}, {x, zz}, {y, zz}};
        case Equation::II: return {{x + y, zz}, {2 * x, zz}, {y, zz}};
        case Equation::III: return {{x + y, zz}, {3 * x, zz}, {y, zz}};
        default: throw std::logic_error("sum_terms: not a sum equation");
    }
}

// n = root^k with root not a perfect power; root is unique, so
// a^e == b^f exactly when the roots agree and k_a * e == k_b * f.
std::pair<Natural, Natural> primitive_root(Natural n) {
    Natural k = 1;
    for (bool reduced = true; reduced && mpz_perfect_power_p(n.get_mpz_t());) {
        reduced = false;
        const unsigned long bits = mpz_sizeinbase(n.get_mpz_t(), 2);
        for (unsigned long e = 2; e <= bits; ++e) {
            if (!is_prime_u64(e)) continue;
            auto r = integer_nth_root(n, e);
            if (r.exact) {
                n = r.root;
                k *= e;
                reduced = true;
                break;
            }
        }
    }
    return {n, k};
}

bool powers_equal(const Power& a, const Power& b, std::uint64_t bit_budget) {
    const double la = bits_of(a), lb = bits_of(b);
    if (std::isfinite(la) && std::isfinite(lb)) {
        if (std::abs(la - lb) > 1e-9 * std::max({la, lb, 1.0}) + 1e-9) return false;
        if (std::max(la, lb) <= static_cast<double>(bit_budget)) return expand(a) == expand(b);
    }
    const bool trivial_a = a.base <= 1 || a.exp == 0, trivial_b = b.base <= 1 || b.exp == 0;
    if (trivial_a || trivial_b) return trivial_a && trivial_b && expand(a) == expand(b);
    auto [ra, ka] = primitive_root(a.base);
    auto [rb, kb] = primitive_root(b.base);
    return ra == rb && ka * a.exp == kb * b.exp;
}

bool tuple_less(const DiophSolution& a, const DiophSolution& b) {
    if (a.x != b.x) return a.x < b.x;
    if (a.y != b.y) return a.y < b.y;
    return a.z < b.z;
}

void sort_unique(std::vector<DiophSolution>& v) {
    std::sort(v.begin(), v.end(), tuple_less);
    v.erase(std::unique(v.begin(), v.end(),
                        [](const DiophSolution& a, const DiophSolution& b) { return a.same_tuple(b); }),
            v.end());
}

std::string tuple_string(const DiophSolution& s) {
    std::ostringstream os;
    os << '(' << s.x << ',' << s.y;
    if (has_z(s.equation)) os << ',' << s.z;
    os << ')';
    return os.str();
}

}  // namespace

std::string_view to_string(Equation e) { return kNames[static_cast<int>(e)]; }

std::optional<Equation> parse_equation(std::string_view s) {
    for (auto e : all_equations)
        if (to_string(e) == s) return e;
    return std::nullopt;
}

bool side_condition_holds(Equation e, const Natural& x, const Natural& y, unsigned long z) {
    if (x < 1 || y < 1) return false;
    if (has_z(e) && z < 1) return false;
    switch (e) {
        case Equation::I: return x > y && (x + y) % 2 == 0;
        case Equation::II:
        case Equation::III: return true;
        case Equation::IV:
        case Equation::V: return y > x;
        case Equation::VI:
        case Equation::VII: return x >= y;
        case Equation::VIII:
        case Equation::IX:
        case Equation::X: return x > y;
    }
    return false;
}

Sides evaluate(Equation e, const Natural& x, const Natural& y, unsigned long z, std::uint64_t bit_budget) {
    if (!side_condition_holds(e, x, y, z))
        throw DomainError(std::string("evaluate: tuple outside the domain of equation ") + kNames[static_cast<int>(e)]);
    const double budget = static_cast<double>(bit_budget);
    if (has_z(e)) {
        auto t = sum_terms(e, x, y, z);
        for (const auto& p : t)
            if (bits_of(p) > budget) throw BitBudgetExceeded("evaluate: side exceeds the bit budget");
        Sides s;
        s.lhs = expand(t[0]);
        s.rhs = expand(t[1]);
        if (e == Equation::I) s.rhs -= expand(t[2]);
        else s.rhs += expand(t[2]);
        return s;
    }
    auto [l, r] = power_sides(e, x, y);
    if (bits_of(l) > budget || bits_of(r) > budget)
        throw BitBudgetExceeded("evaluate: side exceeds the bit budget");
    return {expand(l), expand(r)};
}

bool is_solution(Equation e, const Natural& x, const Natural& y, unsigned long z, std::uint64_t bit_budget) {
    if (!side_condition_holds(e, x, y, z)) return false;
    if (has_z(e)) {
        auto s = evaluate(e, x, y, z, bit_budget);
        return s.lhs == s.rhs;
    }
    auto [l, r] = power_sides(e, x, y);
    return powers_equal(l, r, bit_budget);
}

SearchResult search(Equation e, const Box& box, const SearchOptions& opts) {
    if (box.x_max < 1 || box.y_max < 1 || (has_z(e) && box.z_max < 1))
        throw DomainError("search: bounds must be >= 1");
    const double budget = static_cast<double>(opts.bit_budget);
    const unsigned long z_lo = has_z(e) ? 1 : 0, z_hi = has_z(e) ? box.z_max : 0;

    struct Slice {
        std::vector<DiophSolution> found;
        std::uint64_t candidates = 0;
        std::uint64_t skipped = 0;
    };
    std::vector<Slice> slices(box.x_max);
    detail::parallel_for(box.x_max, opts.jobs, [&](std::size_t i) {
        Slice& out = slices[i];
        const Natural x = static_cast<unsigned long>(i + 1);
        for (unsigned long yv = 1; yv <= box.y_max; ++yv) {
            const Natural y = yv;
            for (unsigned long z = z_lo; z <= z_hi; ++z) {
                if (!side_condition_holds(e, x, y, z)) continue;
                ++out.candidates;
                bool hit = false;
                if (has_z(e)) {
                    try {
                        auto s = evaluate(e, x, y, z, opts.bit_budget);
                        hit = s.lhs == s.rhs;
                    } catch (const BitBudgetExceeded&) {
                        ++out.skipped;
                        continue;
                    }
                } else {
                    auto [l, r] = power_sides(e, x, y);
                    const double bl = bits_of(l), br = bits_of(r);
                    // sides whose sizes differ cannot be equal
                    if (std::abs(bl - br) > 1e-9 * std::max({bl, br, 1.0}) + 1e-9) continue;
                    if (std::max(bl, br) > budget) {
                        ++out.skipped;
                        continue;
                    }
                    hit = expand(l) == expand(r);
                }
                if (hit) out.found.push_back({e, x, y, z, Provenance::search, {}});
            }
        }
    });

    SearchResult result;
    for (auto& s : slices) {
        result.solutions.insert(result.solutions.end(), s.found.begin(), s.found.end());
        result.candidates += s.candidates;
        result.skipped += s.skipped;
    }
    sort_unique(result.solutions);
    return result;
}

namespace {

DiophSolution member(Equation e, Natural x, Natural y, unsigned long z, std::string family) {
    DiophSolution s{e, std::move(x), std::move(y), z, Provenance::closed_form, std::move(family)};
    if (!is_solution(e, s.x, s.y, s.z))
        throw std::logic_error("closed_form: generated tuple " + tuple_string(s) + " fails its equation");
    return s;
}

std::string label(const char* family, const char* param, unsigned long v) {
    return std::string(family) + " " + param + "=" + std::to_string(v);
}

// Members of every family for one parameter value; empty when the
// parameter is below the family's start.
std::vector<DiophSolution> members_for(Equation e, unsigned long k) {
    std::vector<DiophSolution> out;
    const Natural kk = k;
    switch (e) {
        case Equation::I:
            out.push_back(member(e, 3 * kk, kk, 1, label("(3k,k,1)", "k", k)));
            out.push_back(member(e, 5 * kk, 3 * kk, 2, label("(5k,3k,2)", "k", k)));
            break;
        case Equation::II:
            out.push_back(member(e, 2 * kk, 3 * kk, 2, label("(2t,3t,2)", "t", k)));
            break;
        case Equation::IV:
            if (k == 1) out.push_back(member(e, 1, 2, 0, "(1,2)"));
            break;
        case Equation::VI:
            if (k == 1) out.push_back(member(e, 1, 1, 0, "(1,1)"));
            break;
        case Equation::VII: {
            const Natural y = power(kk + 1, k - 1);
            out.push_back(member(e, kk * y, y, 0, label("(t(t+1)^(t-1),(t+1)^(t-1))", "t", k)));
            break;
        }
        case Equation::VIII: {
            if (k >= 2) {
                const Natural g = power(2 * kk - 1, k - 1);
                out.push_back(member(e, kk * g, (kk - 1) * g, 0,
                                     label("(x1(2x1-1)^(x1-1),(x1-1)(2x1-1)^(x1-1))", "x1", k)));
            }
            const unsigned long s = 4 * k * k;
            const Natural half = power(2 * kk, s - 1) / 2;
            out.push_back(member(e, (s + 1) * half, (s - 1) * half, 0,
                                 label("((4n^2+1)(2n)^(4n^2-1)/2,(4n^2-1)(2n)^(4n^2-1)/2)", "n", k)));
            break;
        }
        default:
            break;
    }
    return out;
}

bool family_known(Equation e) { return e != Equation::X; }

bool in_box(const DiophSolution& s, const Box& box) {
    return s.x <= box.x_max && s.y <= box.y_max && (!has_z(s.equation) || s.z <= box.z_max);
}

}  // namespace

FamilyResult closed_form(Equation e, unsigned long first, unsigned long last) {
    FamilyResult r;
    r.known = family_known(e);
    for (unsigned long k = std::max(first, 1UL); k <= last; ++k) {
        auto m = members_for(e, k);
        r.solutions.insert(r.solutions.end(), m.begin(), m.end());
    }
    return r;
}

FamilyResult closed_form_in_box(Equation e, const Box& box) {
    FamilyResult r;
    r.known = family_known(e);
    // Every family grows in x with its parameter and x >= parameter.
    for (unsigned long k = 1; k <= box.x_max; ++k) {
        bool any_x_in_range = false;
        for (auto& s : members_for(e, k)) {
            if (s.x <= box.x_max) any_x_in_range = true;
            if (in_box(s, box)) r.solutions.push_back(std::move(s));
        }
        if (!any_x_in_range && k > 1) break;
    }
    sort_unique(r.solutions);
    return r;
}

CrossReport cross_verify(Equation e, const Box& box, const SearchOptions& opts) {
    CrossReport rep;
    rep.equation = e;
    rep.box = box;
    auto found = search(e, box, opts);
    auto fam = closed_form_in_box(e, box);
    rep.searched = std::move(found.solutions);
    rep.skipped = found.skipped;
    rep.family = std::move(fam.solutions);
    rep.family_known = fam.known;

    auto contains = [](const std::vector<DiophSolution>& v, const DiophSolution& s) {
        return std::any_of(v.begin(), v.end(), [&](const DiophSolution& o) { return o.same_tuple(s); });
    };
    if (rep.family_known) {
        for (const auto& s : rep.searched)
            if (!contains(rep.family, s)) rep.missed_by_family.push_back(s);
        std::uint64_t unresolved = 0;
        for (const auto& s : rep.family) {
            if (contains(rep.searched, s)) continue;
            try {
                evaluate(e, s.x, s.y, s.z, opts.bit_budget);
                rep.extra_in_family.push_back(s);
            } catch (const BitBudgetExceeded&) {
                ++unresolved;  // the search skipped it too
            }
        }
        if (unresolved > 0)
            rep.details.push_back(std::to_string(unresolved) + " family tuples over the bit budget");
        rep.match = rep.missed_by_family.empty() && rep.extra_in_family.empty();
        for (const auto& s : rep.missed_by_family)
            rep.details.push_back("missed by family: " + tuple_string(s));
        for (const auto& s : rep.extra_in_family)
            rep.details.push_back("extra in family: " + tuple_string(s));
        if (!rep.match) rep.verdict = Verdict::violation;
    } else {
        rep.match = false;
        rep.details.push_back("family unknown; oracle only");
        if (e == Equation::X && box.x_max >= 6 && box.y_max >= 2) {
            const DiophSolution anchor{e, 6, 2, 0, Provenance::search, {}};
            if (!contains(rep.searched, anchor)) {
                rep.verdict = Verdict::violation;
                rep.details.push_back("regression anchor (6,2) missing");
            }
        }
    }
    if (rep.skipped > 0 && rep.verdict == Verdict::consistent) {
        rep.verdict = Verdict::indeterminate;
        rep.details.push_back(std::to_string(rep.skipped) + " candidates over the bit budget");
    }
    return rep;
}

bool lemma1_holds(const Natural& a, const Natural& b, unsigned long n) {
    if (a == b) throw DomainError("lemma1_holds: a == b");
    if (gcd(a, b) != 1) throw DomainError("lemma1_holds: gcd(a, b) != 1");
    const Natural diff = abs(Natural(a - b));
    const bool divides = power(a, n) % diff == 0;
    if (divides && diff != 1) throw std::logic_error("lemma1_holds: |a-b| divides a^n with |a-b| != 1");
    return divides;
}

Lemma1Sweep lemma1_sweep(unsigned long ab_max, unsigned long n_max) {
    Lemma1Sweep out;
    for (unsigned long a = 1; a <= ab_max; ++a) {
        for (unsigned long b = 1; b <= ab_max; ++b) {
            if (a == b || std::gcd(a, b) != 1) continue;
            ++out.pairs;
            for (unsigned long n = 1; n <= n_max; ++n) {
                try {
                    if (lemma1_holds(a, b, n)) ++out.divides;
                } catch (const std::logic_error& err) {
                    out.counterexamples.push_back("a=" + std::to_string(a) + " b=" + std::to_string(b) +
                                                  " n=" + std::to_string(n));
                }
            }
        }
    }
    return out;
}

}  // namespace ntlab::dioph
