#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <chrono>
#include <tuple>
#include <vector>

#include "ntlab/power_eq.hpp"

using namespace ntlab;
using namespace ntlab::power_eq;

namespace {

using Triple = std::tuple<unsigned long, unsigned long, unsigned long>;  // (x, y, z)

bool trial_prime(unsigned long n) {
    if (n < 2) return false;
    for (unsigned long d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

// Divides out the base instead of taking roots.
std::vector<Triple> oracle(unsigned long base, unsigned long x_max, unsigned long y_max, unsigned long z_max) {
    std::vector<Triple> out;
    const Natural ceiling = power(base, x_max);
    for (unsigned long y = 2; y <= y_max; ++y) {
        if (!trial_prime(y)) continue;
        for (unsigned long z = 2; z <= z_max; ++z) {
            Natural v = (power(y, z) - 1) / (y - 1);
            if (v > ceiling) break;
            unsigned long x = 0;
            while (v % base == 0) {
                v /= base;
                ++x;
            }
            if (v == 1 && x >= 1) out.emplace_back(x, y, z);
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

std::vector<Triple> triples(const std::vector<PowerEqSolution>& s) {
    std::vector<Triple> out;
    for (const auto& e : s) out.emplace_back(e.x, to_u64(e.y), e.z);
    return out;
}

}  // namespace

TEST_CASE("base 2 oracle is the Mersenne set") {
    const auto start = std::chrono::steady_clock::now();
    auto found = search_power_eq(2, 15, 100'000, 16);
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    const std::vector<Triple> expected{{2, 3, 2}, {3, 7, 2}, {5, 31, 2}, {7, 127, 2}, {13, 8191, 2}};
    CHECK(triples(found) == expected);
    CHECK(triples(mersenne_solutions(15)) == expected);
    for (const auto& s : found) {
        CHECK(s.z == 2);
        CHECK(s.provenance == Provenance::search);
        CHECK(power(2, s.x) == (power(s.y, s.z) - 1) / (s.y - 1));
    }
    CHECK(secs < 60.0);
}

TEST_CASE("base 3, 5 and 7 oracles") {
    CHECK(triples(search_power_eq(3, 15, 100'000, 16)) == std::vector<Triple>{{1, 2, 2}});
    CHECK(triples(search_power_eq(7, 15, 100'000, 16)) == std::vector<Triple>{{1, 2, 3}});
    CHECK(search_power_eq(5, 15, 100'000, 16).empty());
}

TEST_CASE("search agrees with the division oracle") {
    for (unsigned long base : {2, 3, 5, 7, 11, 13, 31, 127}) {
        INFO("base=", base);
        CHECK(triples(search_power_eq(base, 12, 3000, 12)) == oracle(base, 12, 3000, 12));
    }
    CHECK(triples(search_power_eq(2, 40, 2000, 40)) == oracle(2, 40, 2000, 40));
}

TEST_CASE("search is independent of the thread count") {
    auto a = search_power_eq(2, 20, 50'000, 20, 1);
    auto b = search_power_eq(2, 20, 50'000, 20, 8);
    REQUIRE(a.size() == b.size());
    for (std::size_t i = 0; i < a.size(); ++i) CHECK(a[i].same_tuple(b[i]));
}

TEST_CASE("oracle and closed form agree for base 2 across bounds") {
    for (unsigned long x_max : {1, 2, 5, 7, 13, 19, 31}) {
        auto found = search_power_eq(2, x_max, 1u << 20, 8);
        std::vector<Triple> expected;
        for (const auto& s : mersenne_solutions(x_max))
            if (s.y <= (1u << 20)) expected.emplace_back(s.x, to_u64(s.y), s.z);
        CHECK(triples(found) == expected);
    }
}

TEST_CASE("odd prime z gives base = 1 mod z for bases >= 5") {
    for (unsigned long base : {5, 7, 11, 13, 31, 43, 127}) {
        for (const auto& s : search_power_eq(base, 10, 20'000, 13)) {
            if (s.z > 2 && is_prime_u64(s.z)) CHECK(s.base % s.z == 1);
        }
    }
    // 31 = 1 + 2 + 4 + 8 + 16 = 1 + 5 + 25
    CHECK(triples(search_power_eq(31, 3, 100, 5)) == std::vector<Triple>{{1, 2, 5}, {1, 5, 3}});
}

TEST_CASE("mersenne_solutions") {
    CHECK(mersenne_solutions(1).empty());
    CHECK(triples(mersenne_solutions(5)) == std::vector<Triple>{{2, 3, 2}, {3, 7, 2}, {5, 31, 2}});
    auto m13 = mersenne_solutions(13);
    CHECK(m13.size() == 5);
    for (const auto& s : m13) CHECK(s.provenance == Provenance::closed_form);
    CHECK_FALSE(is_mersenne_prime(11));  // 2047 = 23 * 89

    std::vector<unsigned long> exps;
    for (const auto& s : mersenne_solutions(700)) exps.push_back(s.x);
    CHECK(exps == std::vector<unsigned long>{2, 3, 5, 7, 13, 17, 19, 31, 61, 89, 107, 127, 521, 607});
}

TEST_CASE("2^x - 1 prime forces x prime, x <= 64") {
    for (unsigned long x = 1; x <= 64; ++x) {
        const bool mersenne = is_prime(power(2, x) - 1).prime;
        if (mersenne) CHECK(trial_prime(x));
        CHECK(mersenne == is_mersenne_prime(x));
    }
}

TEST_CASE("power_of_two_product_decomposition") {
    using V = std::vector<unsigned long>;
    CHECK(power_of_two_product_decomposition(5) == V{2, 3});
    CHECK(power_of_two_product_decomposition(2) == V{2});
    CHECK_FALSE(power_of_two_product_decomposition(1).has_value());
    CHECK_FALSE(power_of_two_product_decomposition(4).has_value());  // 2 + 2 repeats a prime
    CHECK(power_of_two_product_decomposition(10) == V{2, 3, 5});
    for (unsigned long n = 1; n <= 200; ++n) {
        auto d = power_of_two_product_decomposition(n);
        if (!d) continue;
        Natural product = 1;
        unsigned long sum = 0;
        for (std::size_t i = 0; i < d->size(); ++i) {
            CHECK(is_mersenne_prime((*d)[i]));
            if (i > 0) CHECK((*d)[i - 1] < (*d)[i]);
            product *= power(2, (*d)[i]);
            sum += (*d)[i];
        }
        CHECK(sum == n);
        CHECK(product == power(2, n));
    }
}

TEST_CASE("divisibility_lemma_check") {
    CHECK(divisibility_lemma_check(2, 3, 6));
    CHECK(divisibility_lemma_check(10, 4, 4));
    CHECK_FALSE(divisibility_lemma_check(2, 4, 6));
    for (unsigned long y = 2; y <= 12; ++y)
        for (unsigned long m = 1; m <= 20; ++m)
            for (unsigned long n = 1; n <= 20; ++n)
                CHECK(divisibility_lemma_check(y, m, n) == (n % m == 0));
    CHECK_THROWS_AS(divisibility_lemma_check(1, 2, 4), DomainError);
}
