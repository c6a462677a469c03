#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <gmpxx.h>

namespace ntlab {

/// Arbitrary-precision nonnegative integer. Paper-facing operations reject
/// zero (naturals start at 1); internal helpers accept it.
using Natural = mpz_class;

class DomainError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

enum class Certainty { proven, probable };

struct PrimeTest {
    bool prime = false;
    Certainty certainty = Certainty::proven;
};

struct PrimePower {
    Natural prime;
    unsigned exponent = 0;
    Certainty certainty = Certainty::proven;

    bool operator==(const PrimePower& o) const {
        return prime == o.prime && exponent == o.exponent;
    }
};

/// Canonical decomposition. `unfactored` holds composite cofactors left
/// over when the effort budget ran out; a complete factorization has none.
struct Factorization {
    std::vector<PrimePower> factors;  // strictly increasing primes
    std::vector<Natural> unfactored;

    bool complete() const { return unfactored.empty(); }
    Natural product() const;
    bool all_proven() const;
    std::vector<Natural> distinct_primes() const;
    std::string to_string() const;  // "3^1*19^1", cofactors as "[c]"
};

struct FactorOptions {
    static constexpr std::uint64_t default_budget = 2'000'000'000ULL;
    static constexpr std::uint64_t default_seed = 0x243F6A8885A308D3ULL;

    /// Upper bound on modular multiplications spent in rho and ECM.
    std::uint64_t budget = default_budget;
    std::uint64_t seed = default_seed;
};

struct RootResult {
    Natural root;
    bool exact = false;
};

Natural mod_pow(const Natural& base, const Natural& exp, const Natural& modulus);
Natural gcd(const Natural& a, const Natural& b);
RootResult integer_nth_root(const Natural& n, unsigned long k);

PrimeTest is_prime(const Natural& n);
bool is_prime_u64(std::uint64_t n);

Factorization factorize(const Natural& n, const FactorOptions& opts = {});

/// Least e >= 1 with a^e = 1 (mod m), found by factoring phi(m) and
/// stripping prime factors from it while the power stays 1.
Natural multiplicative_order(const Natural& a, const Natural& m,
                             const FactorOptions& opts = {});

/// Same descent, started from a known exponent with a^multiple = 1 (mod m).
Natural multiplicative_order_dividing(const Natural& a, const Natural& m,
                                      const Natural& multiple,
                                      const FactorOptions& opts = {});

Natural euler_phi(const Factorization& f);

std::vector<std::uint32_t> primes_up_to(std::uint32_t limit);

inline bool fits_u64(const Natural& n) { return n >= 0 && mpz_sizeinbase(n.get_mpz_t(), 2) <= 64; }
std::uint64_t to_u64(const Natural& n);
Natural from_u64(std::uint64_t v);
Natural power(const Natural& base, unsigned long exp);

}  // namespace ntlab
