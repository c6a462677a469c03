#include "ntlab/power_eq.hpp"

#include <algorithm>
#include <stdexcept>

#include "ntlab/detail/parallel.hpp"

namespace ntlab::power_eq {

namespace {

// Exponent e with value == base^e, 1 <= e <= x_max, or 0.
unsigned long exact_power_exponent(const Natural& value, const Natural& base, unsigned long x_max) {
    for (unsigned long x = 1; x <= x_max; ++x) {
        auto r = integer_nth_root(value, x);
        if (r.root < base) break;
        if (r.exact && r.root == base) return x;
    }
    return 0;
}

bool tuple_less(const PowerEqSolution& a, const PowerEqSolution& b) {
    if (a.x != b.x) return a.x < b.x;
    if (a.y != b.y) return a.y < b.y;
    return a.z < b.z;
}

}  // namespace

std::vector<PowerEqSolution> search_power_eq(const Natural& base, unsigned long x_max,
                                             std::uint32_t y_max, unsigned long z_max,
                                             unsigned jobs) {
    if (base < 2) throw DomainError("search_power_eq: base must be >= 2");
    if (x_max < 1 || y_max < 1 || z_max < 1) throw DomainError("search_power_eq: bounds must be >= 1");
    const Natural ceiling = power(base, x_max);
    const auto primes = primes_up_to(y_max);

    constexpr std::size_t chunk = 1024;
    const std::size_t chunks = (primes.size() + chunk - 1) / chunk;
    std::vector<std::vector<PowerEqSolution>> found(chunks);
    detail::parallel_for(chunks, jobs, [&](std::size_t c) {
        const std::size_t end = std::min(primes.size(), (c + 1) * chunk);
        for (std::size_t i = c * chunk; i < end; ++i) {
            const Natural y = primes[i];
            Natural repunit = 1 + y;
            for (unsigned long z = 2; z <= z_max && repunit <= ceiling; ++z) {
                if (unsigned long x = exact_power_exponent(repunit, base, x_max))
                    found[c].push_back({base, x, y, z, Provenance::search});
                repunit = repunit * y + 1;
            }
        }
    });

    std::vector<PowerEqSolution> out;
    for (auto& part : found) out.insert(out.end(), part.begin(), part.end());
    std::sort(out.begin(), out.end(), tuple_less);
    return out;
}

bool is_mersenne_prime(unsigned long exponent) {
    if (exponent < 2) return false;
    if (exponent == 2) return true;
    if (!is_prime(exponent).prime) return false;
    const Natural m = power(2, exponent) - 1;
    Natural s = 4;
    for (unsigned long i = 0; i < exponent - 2; ++i) {
        s = s * s - 2;
        mpz_mod(s.get_mpz_t(), s.get_mpz_t(), m.get_mpz_t());
    }
    return s == 0;
}

std::vector<PowerEqSolution> mersenne_solutions(unsigned long x_max) {
    std::vector<PowerEqSolution> out;
    for (unsigned long p = 2; p <= x_max; ++p) {
        if (is_mersenne_prime(p))
            out.push_back({2, p, power(2, p) - 1, 2, Provenance::closed_form});
    }
    return out;
}

std::optional<std::vector<unsigned long>> power_of_two_product_decomposition(unsigned long n) {
    if (n < 1) throw DomainError("power_of_two_product_decomposition: n must be >= 1");
    std::vector<unsigned long> exps;
    for (unsigned long p = 2; p <= n; ++p)
        if (is_mersenne_prime(p)) exps.push_back(p);

    // reach[i][s]: some subset of exps[i..] sums to s
    const std::size_t k = exps.size();
    std::vector<std::vector<bool>> reach(k + 1, std::vector<bool>(n + 1, false));
    reach[k][0] = true;
    for (std::size_t i = k; i-- > 0;) {
        for (unsigned long s = 0; s <= n; ++s)
            reach[i][s] = reach[i + 1][s] || (s >= exps[i] && reach[i + 1][s - exps[i]]);
    }
    if (!reach[0][n]) return std::nullopt;

    std::vector<unsigned long> chosen;
    unsigned long left = n;
    for (std::size_t i = 0; i < k && left > 0; ++i) {
        if (exps[i] <= left && reach[i + 1][left - exps[i]]) {
            chosen.push_back(exps[i]);
            left -= exps[i];
        }
    }

    Natural product = 1;
    for (auto p : chosen) product *= (power(2, p) - 1) + 1;
    if (product != power(2, n)) throw std::logic_error("power_of_two_product_decomposition: value check failed");
    return chosen;
}

bool divisibility_lemma_check(const Natural& y, unsigned long m, unsigned long n) {
    if (y < 2) throw DomainError("divisibility_lemma_check: y must be >= 2");
    if (m < 1 || n < 1) throw DomainError("divisibility_lemma_check: exponents must be >= 1");
    const bool divides = (power(y, n) - 1) % (power(y, m) - 1) == 0;
    if (divides != (n % m == 0)) throw std::logic_error("divisibility_lemma_check: equivalence with m | n fails");
    return divides;
}

}  // namespace ntlab::power_eq
