#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "ntlab/arith.hpp"
#include "ntlab/provenance.hpp"
#include "ntlab/verdict.hpp"

namespace ntlab::dioph {

/// The ten exponential equations, with the side condition each is read under.
///   I    ((x+y)/2)^z = x^z - y^z      x > y, x + y even
///   II   (x+y)^z = (2x)^z + y^z
///   III  (x+y)^z = (3x)^z + y^z
///   IV   (y-x)^(x+y) = x^y            y > x
///   V    (y-x)^(x+y) = y^x            y > x
///   VI   (x+y)^(x-y) = x^y            x >= y
///   VII  (x+y)^(x-y) = y^x            x >= y
///   VIII (x+y)^y = (x-y)^x            x > y
///   IX   (x-y)^(x+y) = x^(x-y)        x > y
///   X    (x+y)^(x-y) = (x-y)^x        x > y
enum class Equation { I, II, III, IV, V, VI, VII, VIII, IX, X };

inline constexpr Equation all_equations[] = {
    Equation::I,  Equation::II,  Equation::III,  Equation::IV, Equation::V,
    Equation::VI, Equation::VII, Equation::VIII, Equation::IX, Equation::X,
};

std::string_view to_string(Equation e);
std::optional<Equation> parse_equation(std::string_view s);

/// Equations I-III carry a third variable z.
constexpr bool has_z(Equation e) {
    return e == Equation::I || e == Equation::II || e == Equation::III;
}

struct DiophSolution {
    Equation equation = Equation::I;
    Natural x;
    Natural y;
    unsigned long z = 0;  // 0 when the equation has no z
    Provenance provenance = Provenance::search;
    std::string family;  // family and parameter for closed-form tuples

    bool same_tuple(const DiophSolution& o) const {
        return equation == o.equation && x == o.x && y == o.y && z == o.z;
    }
};

struct Sides {
    Natural lhs;
    Natural rhs;
};

class BitBudgetExceeded : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

inline constexpr std::uint64_t default_bit_budget = 1'000'000;

bool side_condition_holds(Equation e, const Natural& x, const Natural& y, unsigned long z = 0);

/// Exact values of both sides. Throws DomainError when the tuple is outside
/// the equation's domain and BitBudgetExceeded when either side would need
/// more than bit_budget bits.
Sides evaluate(Equation e, const Natural& x, const Natural& y, unsigned long z = 0,
               std::uint64_t bit_budget = default_bit_budget);

/// lhs == rhs. Sides too large to expand are compared exactly by writing
/// each base as r^k with r not a perfect power. I-III are always expanded.
bool is_solution(Equation e, const Natural& x, const Natural& y, unsigned long z = 0,
                 std::uint64_t bit_budget = default_bit_budget);

struct Box {
    unsigned long x_max = 300;
    unsigned long y_max = 300;
    unsigned long z_max = 8;
};

struct SearchOptions {
    std::uint64_t bit_budget = default_bit_budget;
    unsigned jobs = 1;
};

struct SearchResult {
    std::vector<DiophSolution> solutions;  // sorted by (x, y, z)
    std::uint64_t candidates = 0;          // tuples inside the domain
    std::uint64_t skipped = 0;             // over the bit budget, not decided
};

SearchResult search(Equation e, const Box& box, const SearchOptions& opts = {});

struct FamilyResult {
    bool known = true;  // false when no closed form exists (X)
    std::vector<DiophSolution> solutions;
};

/// Family tuples for parameters first..last (k, t, x1 or n depending on the
/// family). Each is checked with is_solution before it is returned.
FamilyResult closed_form(Equation e, unsigned long first, unsigned long last);

/// All family tuples lying inside the box, sorted by (x, y, z).
FamilyResult closed_form_in_box(Equation e, const Box& box);

struct CrossReport {
    Equation equation = Equation::I;
    Box box;
    bool family_known = true;
    std::vector<DiophSolution> searched;
    std::vector<DiophSolution> family;
    std::vector<DiophSolution> missed_by_family;  // found by search only
    std::vector<DiophSolution> extra_in_family;   // generated by family only
    std::uint64_t skipped = 0;
    bool match = true;
    Verdict verdict = Verdict::consistent;
    std::vector<std::string> details;
};

CrossReport cross_verify(Equation e, const Box& box, const SearchOptions& opts = {});

/// For coprime a != b: whether |a - b| divides a^n. Throws DomainError when
/// gcd(a, b) != 1 or a == b, and std::logic_error if it divides while
/// |a - b| != 1.
bool lemma1_holds(const Natural& a, const Natural& b, unsigned long n);

struct Lemma1Sweep {
    std::uint64_t pairs = 0;
    std::uint64_t divides = 0;
    std::vector<std::string> counterexamples;
};

/// Every coprime a != b <= ab_max and 1 <= n <= n_max.
Lemma1Sweep lemma1_sweep(unsigned long ab_max, unsigned long n_max);

}  // namespace ntlab::dioph
