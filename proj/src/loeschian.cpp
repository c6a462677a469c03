#include "ntlab/loeschian.hpp"

#include <algorithm>
#include <numeric>
#include <set>
#include <stdexcept>
#include <tuple>
#include <utility>

namespace ntlab::loeschian {

namespace {

using i64 = std::int64_t;

std::string pair_string(const Natural& a, const Natural& b) {
    return "(" + a.get_str() + "," + b.get_str() + ")";
}

i64 q(i64 a, i64 b) { return a * a + a * b + b * b; }

// Keeps the component order, unlike make_rep.
LoeschianRep as_given(i64 a, i64 b) {
    LoeschianRep r;
    r.a = a;
    r.b = b;
    r.value = q(a, b);
    return r;
}

}  // namespace

Natural form_value(const Natural& a, const Natural& b) { return a * a + a * b + b * b; }

LoeschianRep make_rep(const Natural& a, const Natural& b) {
    if (a < 0 || b < 0) throw DomainError("make_rep: negative component");
    LoeschianRep r;
    r.a = a < b ? a : b;
    r.b = a < b ? b : a;
    r.value = form_value(r.a, r.b);
    r.primitive = gcd(r.a, r.b) == 1;
    r.degenerate = r.a == 0;
    return r;
}

LoeschianRep normalize(const Natural& s, const Natural& t) {
    if (s < 0 && t < 0) return normalize(-s, -t);
    if (t < 0) return normalize(t, s);
    if (s >= 0) return make_rep(s, t);
    const Natural u = -s;
    if (u < t) return make_rep(t - u, u);
    if (u > t) return make_rep(u - t, t);
    return make_rep(0, t);
}

std::vector<LoeschianRep> representations(const Natural& n) {
    if (n < 1) throw DomainError("representations: n must be >= 1");
    std::vector<LoeschianRep> out;
    for (Natural a = 1; 3 * a * a <= n; ++a) {
        auto r = integer_nth_root(4 * n - 3 * a * a, 2);
        if (!r.exact) continue;
        Natural twice_b = r.root - a;
        if (twice_b < 2 * a || twice_b % 2 != 0) continue;
        out.push_back(make_rep(a, twice_b / 2));
    }
    return out;
}

Composition compose(const LoeschianRep& r1, const LoeschianRep& r2) {
    const Natural &a = r1.a, &b = r1.b, &c = r2.a, &d = r2.b;
    Composition out;
    out.form_a = normalize(a * c - b * d, a * d + b * c + b * d);
    out.form_b = normalize(a * d - b * c, a * c + b * d + b * c);
    const Natural product = r1.value * r2.value;
    if (out.form_a.value != product || out.form_b.value != product)
        throw std::logic_error("compose: product form fails the value check for " + pair_string(a, b) +
                               " x " + pair_string(c, d));
    return out;
}

PowerIdentityReport power_identities_check(const Natural& a, const Natural& b, unsigned long max_exp) {
    if (a < 1 || b < 1) throw DomainError("power_identities_check: components must be >= 1");
    if (gcd(a, b) != 1) throw DomainError("power_identities_check: gcd(a, b) != 1");
    PowerIdentityReport rep;
    rep.a = a;
    rep.b = b;
    rep.max_exp = max_exp;
    const Natural n = form_value(a, b);
    rep.square_form = normalize(b * b - a * a, a * a + 2 * a * b);
    rep.cube_form = normalize(a * a * a - 3 * b * b * a - b * b * b, 3 * a * b * (a + b));
    rep.square_ok = rep.square_form.value == n * n;
    rep.cube_ok = rep.cube_form.value == n * n * n;

    const LoeschianRep base = make_rep(a, b);
    rep.levels.push_back({base});
    rep.levels_ok = true;
    for (unsigned long e = 2; e <= max_exp; ++e) {
        auto less = [](const LoeschianRep& x, const LoeschianRep& y) {
            return std::tie(x.a, x.b) < std::tie(y.a, y.b);
        };
        std::set<LoeschianRep, decltype(less)> next(less);
        for (const auto& r : rep.levels.back()) {
            auto c = compose(r, base);
            next.insert(c.form_a);
            next.insert(c.form_b);
        }
        const Natural target = power(n, e);
        for (const auto& r : next)
            if (r.value != target) rep.levels_ok = false;
        rep.levels.emplace_back(next.begin(), next.end());
    }
    auto reached = [&](unsigned long e, const LoeschianRep& f) {
        return e <= rep.levels.size() &&
               std::find(rep.levels[e - 1].begin(), rep.levels[e - 1].end(), f) != rep.levels[e - 1].end();
    };
    rep.square_reached = max_exp < 2 || reached(2, rep.square_form);
    rep.cube_reached = max_exp < 3 || reached(3, rep.cube_form);
    if (!(rep.square_ok && rep.cube_ok && rep.levels_ok && rep.square_reached && rep.cube_reached))
        rep.verdict = Verdict::violation;
    return rep;
}

std::string_view to_string(PrimeClass c) {
    return c == PrimeClass::loeschian ? "loeschian" : "non_loeschian";
}

PrimeClass classify_prime(const Natural& p) {
    if (!is_prime(p).prime) throw DomainError("classify_prime: " + p.get_str() + " is not prime");
    return representations(p).empty() ? PrimeClass::non_loeschian : PrimeClass::loeschian;
}

std::string_view to_string(Solvable s) {
    switch (s) {
        case Solvable::yes: return "yes";
        case Solvable::no: return "no";
        case Solvable::indeterminate: return "indeterminate";
    }
    return "?";
}

bool odd_exponent_criterion(const Factorization& f) {
    for (const auto& pp : f.factors)
        if (pp.exponent % 2 == 1 && pp.prime != 3 && pp.prime % 3 != 1) return false;
    return true;
}

Solvable solvable(const Natural& n, const FactorOptions& opts) {
    if (n < 1) throw DomainError("solvable: n must be >= 1");
    if (n == 1) return Solvable::no;
    const Factorization f = factorize(n, opts);
    if (!f.complete()) return Solvable::indeterminate;
    if (!odd_exponent_criterion(f)) return Solvable::no;
    const bool square = std::all_of(f.factors.begin(), f.factors.end(),
                                    [](const PrimePower& pp) { return pp.exponent % 2 == 0; });
    const bool has_split_prime = std::any_of(f.factors.begin(), f.factors.end(),
                                             [](const PrimePower& pp) { return pp.prime % 3 == 1; });
    return !square || has_split_prime ? Solvable::yes : Solvable::no;
}

std::vector<bool> representable_table(std::uint32_t limit) {
    std::vector<bool> table(static_cast<std::size_t>(limit) + 1, false);
    for (i64 a = 1; 3 * a * a <= limit; ++a)
        for (i64 b = a; q(a, b) <= limit; ++b) table[q(a, b)] = true;
    return table;
}

SweepReport verify_composition_identities(unsigned long limit) {
    SweepReport rep;
    const i64 n = static_cast<i64>(limit);
    for (i64 a = 1; a <= n; ++a) {
        for (i64 b = 1; b <= n; ++b) {
            const i64 n1 = q(a, b);
            for (i64 c = 1; c <= n; ++c) {
                for (i64 d = 1; d <= n; ++d) {
                    ++rep.checked;
                    const i64 n2 = q(c, d), product = n1 * n2;
                    auto fail = [&](const char* what) {
                        rep.violations.push_back(std::string(what) + " at a=" + std::to_string(a) +
                                                 " b=" + std::to_string(b) + " c=" + std::to_string(c) +
                                                 " d=" + std::to_string(d));
                    };
                    if (q(a * c - b * d, a * d + b * c + b * d) != product) fail("first product form");
                    if (q(a * d - b * c, a * c + b * d + b * c) != product) fail("second product form");
                    if ((a * c - b * d) * (a * c + b * d + b * c) != c * c * n1 - b * b * n2)
                        fail("first cross-term identity");
                    if ((a * d - b * c) * (a * d + b * c + b * d) != d * d * n1 - b * b * n2)
                        fail("second cross-term identity");
                    try {
                        compose(as_given(a, b), as_given(c, d));
                    } catch (const std::logic_error&) {
                        fail("compose value check");
                    }
                    rep.sub_checks += 5;
                }
            }
        }
    }
    return rep;
}

namespace {

std::vector<std::uint32_t> smallest_prime_factors(std::uint32_t limit) {
    std::vector<std::uint32_t> spf(static_cast<std::size_t>(limit) + 1, 0);
    for (std::uint32_t i = 2; i <= limit; ++i) {
        if (spf[i]) continue;
        for (std::uint64_t j = i; j <= limit; j += i)
            if (!spf[j]) spf[j] = i;
    }
    return spf;
}

std::vector<std::uint32_t> divisors(std::uint32_t n, const std::vector<std::uint32_t>& spf) {
    std::vector<std::uint32_t> out{1};
    while (n > 1) {
        const std::uint32_t p = spf[n];
        unsigned e = 0;
        while (n % p == 0) {
            n /= p;
            ++e;
        }
        const std::size_t size = out.size();
        std::uint32_t pk = 1;
        for (unsigned k = 1; k <= e; ++k) {
            pk *= p;
            for (std::size_t i = 0; i < size; ++i) out.push_back(out[i] * pk);
        }
    }
    return out;
}

}  // namespace

SweepReport verify_divisor_closure(std::uint32_t n_max) {
    SweepReport rep;
    const auto table = representable_table(n_max);
    const auto spf = smallest_prime_factors(n_max);
    std::vector<bool> primitive(static_cast<std::size_t>(n_max) + 1, false);
    for (i64 a = 1; 3 * a * a <= n_max; ++a)
        for (i64 b = a; q(a, b) <= n_max; ++b)
            if (std::gcd(a, b) == 1) primitive[q(a, b)] = true;

    for (std::uint32_t n = 1; n <= n_max; ++n) {
        if (!primitive[n]) continue;
        ++rep.checked;
        for (auto d : divisors(n, spf)) {
            if (d < 2) continue;
            ++rep.sub_checks;
            if (!table[d])
                rep.violations.push_back("divisor " + std::to_string(d) + " of " + std::to_string(n) +
                                         " is not representable");
        }
    }
    return rep;
}

SweepReport verify_prime_classification(std::uint32_t limit) {
    SweepReport rep;
    for (auto p : primes_up_to(limit)) {
        ++rep.checked;
        const bool by_residue = p == 3 || p % 3 == 1;
        const bool by_enumeration = classify_prime(p) == PrimeClass::loeschian;
        if (by_residue != by_enumeration)
            rep.violations.push_back("prime " + std::to_string(p) + " classified against its residue");
    }
    return rep;
}

SweepReport verify_solvable(std::uint32_t n_max) {
    SweepReport rep;
    const auto table = representable_table(n_max);
    for (std::uint32_t n = 1; n <= n_max; ++n) {
        ++rep.checked;
        const Solvable s = solvable(n);
        if (s == Solvable::indeterminate) {
            rep.violations.push_back("solvable(" + std::to_string(n) + ") indeterminate");
        } else if ((s == Solvable::yes) != table[n]) {
            rep.violations.push_back("solvable(" + std::to_string(n) + ") disagrees with enumeration");
        }
    }
    return rep;
}

}  // namespace ntlab::loeschian
