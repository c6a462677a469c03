#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <chrono>
#include <utility>
#include <vector>

#include "ntlab/loeschian.hpp"

using namespace ntlab;
using namespace ntlab::loeschian;

namespace {

using Pair = std::pair<unsigned long, unsigned long>;

std::vector<Pair> pairs(const std::vector<LoeschianRep>& reps) {
    std::vector<Pair> out;
    for (const auto& r : reps) out.emplace_back(r.a.get_ui(), r.b.get_ui());
    return out;
}

Pair pair_of(const LoeschianRep& r) { return {r.a.get_ui(), r.b.get_ui()}; }

// Double loop over the whole square, no bound tricks.
std::vector<Pair> brute_reps(unsigned long n) {
    std::vector<Pair> out;
    for (unsigned long a = 1; a * a <= n; ++a)
        for (unsigned long b = a; a * a + a * b + b * b <= n; ++b)
            if (a * a + a * b + b * b == n) out.emplace_back(a, b);
    return out;
}

}  // namespace

TEST_CASE("representations examples") {
    CHECK(pairs(representations(49)) == std::vector<Pair>{{3, 5}});
    CHECK(pairs(representations(3)) == std::vector<Pair>{{1, 1}});
    CHECK(pairs(representations(343)) == std::vector<Pair>{{1, 18}, {7, 14}});
    CHECK(representations(5).empty());
    CHECK(representations(4).empty());  // only (0, 2)
    auto r = representations(12);
    REQUIRE(r.size() == 1);
    CHECK(pair_of(r[0]) == Pair{2, 2});
    CHECK_FALSE(r[0].primitive);
    CHECK_THROWS_AS(representations(0), DomainError);
}

TEST_CASE("representations match a double loop for n <= 3000") {
    for (unsigned long n = 1; n <= 3000; ++n) CHECK(pairs(representations(n)) == brute_reps(n));
}

TEST_CASE("normalize") {
    CHECK(pair_of(normalize(-19, 18)) == Pair{1, 18});
    CHECK(pair_of(normalize(-3, 8)) == Pair{3, 5});
    CHECK(pair_of(normalize(5, 3)) == Pair{3, 5});
    auto z = normalize(-3, 3);
    CHECK(pair_of(z) == Pair{0, 3});
    CHECK(z.degenerate);
    for (long s = -40; s <= 40; ++s)
        for (long t = 1; t <= 40; ++t)
            CHECK(normalize(s, t).value == Natural(s * s + s * t + t * t));
}

TEST_CASE("compose examples") {
    auto c = compose(make_rep(1, 2), make_rep(1, 2));
    CHECK(c.form_a.value == 49);
    CHECK(c.form_b.value == 49);
    const std::vector<Pair> got{pair_of(c.form_a), pair_of(c.form_b)};
    CHECK(std::find(got.begin(), got.end(), Pair{3, 5}) != got.end());

    c = compose(make_rep(1, 1), make_rep(1, 1));
    CHECK(c.form_a.value == 9);
    CHECK(c.form_b.value == 9);
    CHECK(c.form_b.degenerate);  // ad - bc = 0
    CHECK(pair_of(c.form_b) == Pair{0, 3});

    // 7^5 from (1,18) x (3,5), and (7,126) from 7^4 = (16,39) times (1,2)
    c = compose(make_rep(16, 39), make_rep(1, 2));
    CHECK((pair_of(c.form_a) == Pair{7, 126} || pair_of(c.form_b) == Pair{7, 126}));
    CHECK(form_value(7, 126) == power(7, 5));
}

TEST_CASE("power identity report") {
    auto rep = power_identities_check(1, 2, 5);
    CHECK(rep.verdict == Verdict::consistent);
    CHECK(pair_of(rep.square_form) == Pair{3, 5});
    CHECK(pair_of(rep.cube_form) == Pair{1, 18});
    CHECK(pairs(rep.levels[2]) == std::vector<Pair>{{1, 18}, {7, 14}});
    const auto& fifth = rep.levels[4];
    CHECK(std::find(fifth.begin(), fifth.end(), make_rep(7, 126)) != fifth.end());
    for (std::size_t e = 0; e < rep.levels.size(); ++e)
        for (const auto& r : rep.levels[e]) CHECK(r.value == power(7, e + 1));

    rep = power_identities_check(2, 3, 2);
    CHECK(rep.square_form.value == 361);
    auto all = representations(361);
    CHECK(std::find(all.begin(), all.end(), rep.square_form) != all.end());

    CHECK_THROWS_AS(power_identities_check(2, 4, 3), DomainError);
    for (unsigned long a = 1; a <= 12; ++a)
        for (unsigned long b = 1; b <= 12; ++b)
            if (gcd(a, b) == 1) CHECK(power_identities_check(a, b, 6).verdict == Verdict::consistent);
}

TEST_CASE("classify_prime") {
    CHECK(classify_prime(7) == PrimeClass::loeschian);
    CHECK(classify_prime(5) == PrimeClass::non_loeschian);
    CHECK(classify_prime(3) == PrimeClass::loeschian);
    CHECK(classify_prime(2) == PrimeClass::non_loeschian);
    CHECK_THROWS_AS(classify_prime(9), DomainError);
    CHECK(to_string(PrimeClass::non_loeschian) == "non_loeschian");
}

TEST_CASE("solvable") {
    CHECK(solvable(49) == Solvable::yes);
    CHECK(solvable(10) == Solvable::no);
    CHECK(solvable(12) == Solvable::yes);
    CHECK(solvable(4) == Solvable::no);   // the criterion alone would accept (0, 2)
    CHECK(solvable(9) == Solvable::no);
    CHECK(solvable(36) == Solvable::no);
    CHECK(solvable(1) == Solvable::no);
    FactorOptions starved;
    starved.budget = 1;
    CHECK(solvable(Natural(power(2, 89) - 1) * (power(2, 107) - 1), starved) == Solvable::indeterminate);
}

TEST_CASE("odd exponent criterion is only necessary") {
    CHECK(odd_exponent_criterion(factorize(4)));
    CHECK(representations(4).empty());
    CHECK(odd_exponent_criterion(factorize(25)));
    CHECK(representations(25).empty());
    CHECK_FALSE(odd_exponent_criterion(factorize(10)));
}

TEST_CASE("representable table agrees with representations") {
    auto table = representable_table(5000);
    for (unsigned long n = 1; n <= 5000; ++n) CHECK(table[n] == !representations(n).empty());
}

TEST_CASE("sweeps at full size") {
    const auto start = std::chrono::steady_clock::now();
    auto ids = verify_composition_identities(30);
    CHECK(ids.checked == 30 * 30 * 30 * 30);
    CHECK(ids.violations.empty());

    auto closure = verify_divisor_closure(100'000);
    CHECK(closure.checked > 0);
    CHECK(closure.violations.empty());

    auto primes = verify_prime_classification(100'000);
    CHECK(primes.checked == 9592);
    CHECK(primes.violations.empty());

    auto solv = verify_solvable(100'000);
    CHECK(solv.checked == 100'000);
    CHECK(solv.violations.empty());
    CHECK(std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count() < 120.0);
}

TEST_CASE("divisor closure examples") {
    auto closure = verify_divisor_closure(100);
    CHECK(closure.violations.empty());
    for (unsigned long d : {3, 7, 13, 49, 91}) CHECK_FALSE(representations(d).empty());
    CHECK(pairs(representations(91)) == std::vector<Pair>{{1, 9}, {5, 6}});
}
