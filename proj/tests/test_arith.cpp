#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <chrono>
#include <cstdint>
#include <numeric>

#include "ntlab/arith.hpp"

using namespace ntlab;

namespace {

bool trial_division_prime(std::uint64_t n) {
    if (n < 2) return false;
    for (std::uint64_t d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

std::uint64_t brute_order(std::uint64_t a, std::uint64_t m) {
    std::uint64_t x = a % m;
    for (std::uint64_t e = 1;; ++e) {
        if (x == 1) return e;
        x = x * a % m;
    }
}

std::uint64_t brute_phi(std::uint64_t m) {
    std::uint64_t c = 0;
    for (std::uint64_t k = 1; k <= m; ++k)
        if (std::gcd(k, m) == 1) ++c;
    return c;
}

}  // namespace

TEST_CASE("mod_pow") {
    CHECK(mod_pow(7, 3, 10) == 3);
    CHECK(mod_pow(123456789, 0, 97) == 1);
    CHECK(mod_pow(2, 13, 8191) == 1);  // 8191 = 2^13 - 1
    CHECK(mod_pow(2, 14, 8191) == 2);
    CHECK_THROWS_AS(mod_pow(2, 3, 1), DomainError);
    CHECK_THROWS_AS(mod_pow(2, 3, 0), DomainError);
}

TEST_CASE("gcd and the d-reduction step") {
    CHECK(gcd(6, 3) == 3);
    CHECK(gcd(1, 12345) == 1);
    Natural x0 = 6, y0 = 3;
    Natural d = gcd(x0, y0);
    CHECK(d == 3);
    CHECK(x0 / d == 2);
    CHECK(y0 / d == 1);
}

TEST_CASE("integer_nth_root") {
    auto r = integer_nth_root(729, 6);
    CHECK(r.root == 3);
    CHECK(r.exact);
    r = integer_nth_root(730, 6);
    CHECK(r.root == 3);
    CHECK_FALSE(r.exact);
    r = integer_nth_root(4096, 4);
    CHECK(r.root == 8);
    CHECK(r.exact);
    CHECK_THROWS_AS(integer_nth_root(5, 0), DomainError);

    // floor property on a range of values and degrees
    for (unsigned long n = 1; n < 3000; n += 7) {
        for (unsigned long k = 1; k <= 5; ++k) {
            auto rr = integer_nth_root(n, k);
            CHECK(power(rr.root, k) <= n);
            CHECK(power(rr.root + 1, k) > n);
            CHECK(rr.exact == (power(rr.root, k) == n));
        }
    }
}

TEST_CASE("is_prime examples") {
    CHECK(is_prime(8191).prime);
    CHECK_FALSE(is_prime(1).prime);
    CHECK_FALSE(is_prime(0).prime);
    CHECK(is_prime(2801).prime);
    CHECK(is_prime(2801).certainty == Certainty::proven);
}

TEST_CASE("is_prime agrees with trial division up to 10^6") {
    std::uint64_t mismatches = 0;
    for (std::uint64_t n = 0; n <= 1'000'000; ++n) {
        if (is_prime(from_u64(n)).prime != trial_division_prime(n)) ++mismatches;
    }
    CHECK(mismatches == 0);
}

TEST_CASE("is_prime near and above 2^64") {
    // strong pseudoprimes to several small bases
    CHECK_FALSE(is_prime_u64(3215031751ULL));
    CHECK_FALSE(is_prime_u64(3825123056546413051ULL));
    CHECK(is_prime_u64(18446744073709551557ULL));  // largest prime below 2^64
    Natural m127 = power(2, 127) - 1;
    auto t = is_prime(m127);
    CHECK(t.prime);
    CHECK(t.certainty == Certainty::probable);
    CHECK_FALSE(is_prime(power(2, 128) + 1).prime);
    // product of two primes above 2^32 each
    CHECK_FALSE(is_prime(Natural("18446744073709551557") * Natural("4294967311")).prime);
}

TEST_CASE("factorize examples") {
    auto f = factorize(57);
    REQUIRE(f.factors.size() == 2);
    CHECK(f.factors[0] == PrimePower{3, 1});
    CHECK(f.factors[1] == PrimePower{19, 1});

    f = factorize(16105);
    REQUIRE(f.factors.size() == 2);
    CHECK(f.factors[0] == PrimePower{5, 1});
    CHECK(f.factors[1] == PrimePower{3221, 1});

    f = factorize(8);
    REQUIRE(f.factors.size() == 1);
    CHECK(f.factors[0] == PrimePower{2, 3});
    CHECK(f.to_string() == "2^3");

    CHECK_THROWS_AS(factorize(1), DomainError);
    CHECK_THROWS_AS(factorize(0), DomainError);
}

TEST_CASE("factorize reconstructs every n up to 20000") {
    for (unsigned long n = 2; n <= 20000; ++n) {
        auto f = factorize(n);
        REQUIRE(f.complete());
        CHECK(f.product() == n);
        for (std::size_t i = 0; i < f.factors.size(); ++i) {
            CHECK(f.factors[i].exponent >= 1);
            CHECK(is_prime(f.factors[i].prime).prime);
            if (i > 0) CHECK(f.factors[i - 1].prime < f.factors[i].prime);
        }
    }
}

TEST_CASE("factorize large semiprimes and prime powers") {
    // 2^64 - 59 and 2^61 - 1 are prime
    Natural p("18446744073709551557"), q = power(2, 61) - 1;
    auto f = factorize(p * q);
    REQUIRE(f.complete());
    REQUIRE(f.factors.size() == 2);
    CHECK(f.factors[0].prime == q);
    CHECK(f.factors[1].prime == p);

    f = factorize(power(q, 3) * 49);
    REQUIRE(f.complete());
    CHECK(f.factors[0] == PrimePower{7, 2});
    CHECK(f.factors[1] == PrimePower{q, 3});

    // (29^31 - 1)/28 has a 54-bit prime factor next to a 77-bit one.
    Natural a = (power(29, 31) - 1) / 28;
    auto start = std::chrono::steady_clock::now();
    f = factorize(a);
    auto secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    REQUIRE(f.complete());
    CHECK(f.product() == a);
    CHECK(secs < 20.0);
}

TEST_CASE("factorize reports exhausted budget instead of guessing") {
    Natural p = power(2, 89) - 1, q = power(2, 107) - 1;
    FactorOptions opts;
    opts.budget = 1000;
    auto f = factorize(p * q, opts);
    CHECK_FALSE(f.complete());
    REQUIRE(f.unfactored.size() == 1);
    CHECK(f.unfactored[0] == p * q);
    CHECK(f.product() == p * q);
    CHECK(f.to_string() == "[" + Natural(p * q).get_str() + "]");
}

TEST_CASE("factorize is deterministic for a fixed seed") {
    Natural n = (power(19, 29) - 1) / 18;
    auto a = factorize(n), b = factorize(n);
    CHECK(a.to_string() == b.to_string());
}

TEST_CASE("multiplicative_order examples") {
    CHECK(multiplicative_order(7, 19) == 3);
    CHECK(multiplicative_order(1, 1000) == 1);
    CHECK(multiplicative_order(2, 7) == 3);
    CHECK_THROWS_AS(multiplicative_order(6, 9), DomainError);
    CHECK_THROWS_AS(multiplicative_order(3, 1), DomainError);
}

TEST_CASE("multiplicative_order matches brute force for m <= 400") {
    for (std::uint64_t m = 2; m <= 400; ++m) {
        for (std::uint64_t a = 1; a < m; ++a) {
            if (std::gcd(a, m) != 1) continue;
            CHECK(multiplicative_order(from_u64(a), from_u64(m)) == from_u64(brute_order(a, m)));
        }
    }
}

TEST_CASE("order is minimal and divides phi for m <= 10^4") {
    for (std::uint64_t m = 2; m <= 10'000; ++m) {
        const Natural mm = from_u64(m);
        const auto fm = factorize(mm);
        const Natural phi = euler_phi(fm);
        if (m <= 2000) CHECK(phi == from_u64(brute_phi(m)));
        int tried = 0;
        for (std::uint64_t a = 2; a < m && tried < 3; ++a) {
            if (std::gcd(a, m) != 1) continue;
            ++tried;
            const Natural e = multiplicative_order(from_u64(a), mm);
            CHECK(mod_pow(from_u64(a), e, mm) == 1);
            CHECK(phi % e == 0);
            for (const auto& pp : factorize(e == 1 ? Natural(2) : e).factors) {
                if (e % pp.prime == 0) CHECK(mod_pow(from_u64(a), e / pp.prime, mm) != 1);
            }
        }
    }
}

TEST_CASE("order from a known multiple") {
    Natural r("3221");
    CHECK(multiplicative_order_dividing(11, r, 5) == 5);
    CHECK(multiplicative_order_dividing(11, r, 5) == multiplicative_order(11, r));
    CHECK_THROWS_AS(multiplicative_order_dividing(11, r, 3), DomainError);
}
