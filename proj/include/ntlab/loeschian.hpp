#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "ntlab/arith.hpp"
#include "ntlab/verdict.hpp"

namespace ntlab::loeschian {

/// value = a^2 + ab + b^2 with a <= b. A zero component can only come out
/// of compose and is flagged degenerate.
struct LoeschianRep {
    Natural a;
    Natural b;
    Natural value;
    bool primitive = false;  // gcd(a, b) == 1
    bool degenerate = false;  // a == 0

    bool operator==(const LoeschianRep& o) const { return a == o.a && b == o.b; }
};

Natural form_value(const Natural& a, const Natural& b);

/// Canonical rep for a pair of nonnegative components (swaps into a <= b).
LoeschianRep make_rep(const Natural& a, const Natural& b);

/// Maps a signed pair (s, t), t > 0, to a nonnegative pair of the same
/// form value: (-u, t) becomes (t - u, u) when u < t and (u - t, t) when
/// u > t. Both use x^2 - xy + y^2 = (x - y)^2 + (x - y)y + y^2.
LoeschianRep normalize(const Natural& s, const Natural& t);

/// All 1 <= a <= b with a^2 + ab + b^2 = n.
std::vector<LoeschianRep> representations(const Natural& n);

struct Composition {
    LoeschianRep form_a;  // from (ac - bd, ad + bc + bd)
    LoeschianRep form_b;  // from (ad - bc, ac + bd + bc)
};

/// Both product representations of r1.value * r2.value, normalized. Throws
/// std::logic_error if either fails the value check.
Composition compose(const LoeschianRep& r1, const LoeschianRep& r2);

struct PowerIdentityReport {
    Natural a;
    Natural b;
    unsigned long max_exp = 0;
    LoeschianRep square_form;  // (b^2 - a^2, a^2 + 2ab)
    LoeschianRep cube_form;    // (a^3 - 3ab^2 - b^3, 3ab(a + b))
    bool square_ok = false;
    bool cube_ok = false;
    /// levels[e - 1]: every form reachable by composing (a, b) with itself e times
    std::vector<std::vector<LoeschianRep>> levels;
    bool levels_ok = false;
    bool square_reached = false;  // square_form appears at level 2
    bool cube_reached = false;    // cube_form appears at level 3
    Verdict verdict = Verdict::consistent;
};

PowerIdentityReport power_identities_check(const Natural& a, const Natural& b, unsigned long max_exp);

enum class PrimeClass { loeschian, non_loeschian };

std::string_view to_string(PrimeClass c);

/// Decided by enumeration alone. Throws DomainError if p is not prime.
PrimeClass classify_prime(const Natural& p);

enum class Solvable { yes, no, indeterminate };

std::string_view to_string(Solvable s);

/// Every prime with odd exponent is 3 or 1 mod 3.
bool odd_exponent_criterion(const Factorization& f);

/// Whether x^2 + xy + y^2 = n has a solution in naturals x, y >= 1. The odd
/// exponent criterion alone admits n = m^2 through (0, m); such n also need
/// a prime factor that is 1 mod 3.
Solvable solvable(const Natural& n, const FactorOptions& opts = {});

/// representable[n] for 0 <= n <= limit, from all pairs 1 <= a <= b.
std::vector<bool> representable_table(std::uint32_t limit);

struct SweepReport {
    std::uint64_t checked = 0;
    std::uint64_t sub_checks = 0;
    std::vector<std::string> violations;
    Verdict verdict() const { return violations.empty() ? Verdict::consistent : Verdict::violation; }
};

/// Identities (ac-bd, ad+bc+bd), (ad-bc, ac+bd+bc), the two cross-term
/// identities and compose, for every 1 <= a, b, c, d <= limit.
SweepReport verify_composition_identities(unsigned long limit);

/// Every divisor d >= 2 of every primitive value <= n_max is representable.
SweepReport verify_divisor_closure(std::uint32_t n_max);

/// classify_prime against "p = 3 or p = 1 mod 3" for primes <= limit.
SweepReport verify_prime_classification(std::uint32_t limit);

/// solvable(n) against enumeration for 1 <= n <= n_max.
SweepReport verify_solvable(std::uint32_t n_max);

}  // namespace ntlab::loeschian
