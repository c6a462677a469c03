#pragma once

#include <optional>
#include <vector>

#include "ntlab/arith.hpp"
#include "ntlab/provenance.hpp"

namespace ntlab::power_eq {

/// A solution of base^x = (y^z - 1)/(y - 1) with y prime.
struct PowerEqSolution {
    Natural base;
    unsigned long x = 0;
    Natural y;
    unsigned long z = 0;
    Provenance provenance = Provenance::search;

    /// Compares the tuple only, not the provenance.
    bool same_tuple(const PowerEqSolution& o) const {
        return base == o.base && x == o.x && y == o.y && z == o.z;
    }
};

/// Every prime y <= y_max and 2 <= z <= z_max whose repunit is base^x with
/// 1 <= x <= x_max. Sorted by (x, y, z).
std::vector<PowerEqSolution> search_power_eq(const Natural& base, unsigned long x_max,
                                             std::uint32_t y_max, unsigned long z_max,
                                             unsigned jobs = 1);

/// Lucas-Lehmer test for 2^exponent - 1.
bool is_mersenne_prime(unsigned long exponent);

/// (P, 2^P - 1, 2) for each prime P <= x_max with 2^P - 1 prime.
std::vector<PowerEqSolution> mersenne_solutions(unsigned long x_max);

/// Distinct Mersenne exponents p_1 < ... < p_k summing to n, so that
/// 2^n = prod (2^p_i - 1) + 1. Lexicographically smallest choice; nullopt
/// when none exists.
std::optional<std::vector<unsigned long>> power_of_two_product_decomposition(unsigned long n);

/// Whether (y^m - 1) divides (y^n - 1). Throws std::logic_error if the
/// answer ever disagrees with m | n.
bool divisibility_lemma_check(const Natural& y, unsigned long m, unsigned long n);

}  // namespace ntlab::power_eq
