#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <chrono>
#include <numeric>
#include <set>
#include <tuple>

#include "ntlab/dioph.hpp"

using namespace ntlab;
using namespace ntlab::dioph;

namespace {

using Tuple = std::tuple<unsigned long, unsigned long, unsigned long>;

Natural pw(unsigned long b, unsigned long e) { return power(b, e); }

// Direct evaluation over the whole box, no size pruning.
std::set<Tuple> brute(Equation eq, unsigned long n, unsigned long z_max) {
    std::set<Tuple> out;
    for (unsigned long x = 1; x <= n; ++x) {
        for (unsigned long y = 1; y <= n; ++y) {
            switch (eq) {
                case Equation::I:
                    if (x <= y || (x + y) % 2) break;
                    for (unsigned long z = 1; z <= z_max; ++z)
                        if (pw((x + y) / 2, z) + pw(y, z) == pw(x, z)) out.emplace(x, y, z);
                    break;
                case Equation::II:
                    for (unsigned long z = 1; z <= z_max; ++z)
                        if (pw(x + y, z) == pw(2 * x, z) + pw(y, z)) out.emplace(x, y, z);
                    break;
                case Equation::III:
                    for (unsigned long z = 1; z <= z_max; ++z)
                        if (pw(x + y, z) == pw(3 * x, z) + pw(y, z)) out.emplace(x, y, z);
                    break;
                case Equation::IV:
                    if (y > x && pw(y - x, x + y) == pw(x, y)) out.emplace(x, y, 0);
                    break;
                case Equation::V:
                    if (y > x && pw(y - x, x + y) == pw(y, x)) out.emplace(x, y, 0);
                    break;
                case Equation::VI:
                    if (x >= y && pw(x + y, x - y) == pw(x, y)) out.emplace(x, y, 0);
                    break;
                case Equation::VII:
                    if (x >= y && pw(x + y, x - y) == pw(y, x)) out.emplace(x, y, 0);
                    break;
                case Equation::VIII:
                    if (x > y && pw(x + y, y) == pw(x - y, x)) out.emplace(x, y, 0);
                    break;
                case Equation::IX:
                    if (x > y && pw(x - y, x + y) == pw(x, x - y)) out.emplace(x, y, 0);
                    break;
                case Equation::X:
                    if (x > y && pw(x + y, x - y) == pw(x - y, x)) out.emplace(x, y, 0);
                    break;
            }
        }
    }
    return out;
}

std::set<Tuple> as_set(const std::vector<DiophSolution>& v) {
    std::set<Tuple> out;
    for (const auto& s : v) out.emplace(s.x.get_ui(), s.y.get_ui(), s.z);
    return out;
}

}  // namespace

TEST_CASE("evaluate examples") {
    auto s = evaluate(Equation::I, 5, 3, 2);
    CHECK(s.lhs == 16);
    CHECK(s.rhs == 16);
    s = evaluate(Equation::II, 2, 3, 2);
    CHECK(s.lhs == 25);
    CHECK(s.rhs == 25);
    s = evaluate(Equation::VIII, 6, 3);
    CHECK(s.lhs == 729);
    CHECK(s.rhs == 729);
    s = evaluate(Equation::X, 6, 2);
    CHECK(s.lhs == 4096);
    CHECK(s.rhs == 4096);
    s = evaluate(Equation::VI, 1, 1);
    CHECK(s.lhs == 1);  // zero exponent
    CHECK(s.rhs == 1);

    CHECK_THROWS_AS(evaluate(Equation::I, 4, 3, 2), DomainError);  // odd x + y
    CHECK_THROWS_AS(evaluate(Equation::IV, 3, 2), DomainError);
    CHECK_THROWS_AS(evaluate(Equation::X, 2, 6), DomainError);
    CHECK_THROWS_AS(evaluate(Equation::VII, 200000, 1, 0, 1000), BitBudgetExceeded);
}

TEST_CASE("equation names round-trip") {
    for (auto e : all_equations) CHECK(parse_equation(to_string(e)) == e);
    CHECK_FALSE(parse_equation("XI").has_value());
    CHECK(has_z(Equation::III));
    CHECK_FALSE(has_z(Equation::IV));
}

TEST_CASE("search matches the unpruned oracle on every equation") {
    for (auto e : all_equations) {
        const unsigned long n = has_z(e) ? 120 : 150;
        INFO("equation ", to_string(e));
        auto r = search(e, {n, n, 6});
        CHECK(r.skipped == 0);
        CHECK(as_set(r.solutions) == brute(e, n, 6));
    }
}

TEST_CASE("search examples on the default box") {
    using S = std::set<Tuple>;
    CHECK(search(Equation::IX, {500, 500, 8}).solutions.empty());
    CHECK(as_set(search(Equation::IV, {500, 500, 8}).solutions) == S{{1, 2, 0}});
    auto x = as_set(search(Equation::X, {500, 500, 8}).solutions);
    CHECK(x.count({6, 2, 0}) == 1);
    CHECK(x.count({6, 3, 0}) == 1);
    CHECK(as_set(search(Equation::VIII, {300, 300, 8}).solutions) == S{{6, 3, 0}, {20, 12, 0}, {75, 50, 0}});
    CHECK(as_set(search(Equation::VII, {300, 300, 8}).solutions) == S{{1, 1, 0}, {6, 3, 0}, {48, 16, 0}});
}

TEST_CASE("search does not depend on slicing or threads") {
    for (auto e : {Equation::II, Equation::VIII, Equation::X}) {
        auto whole = search(e, {200, 200, 6});
        SearchOptions par;
        par.jobs = 6;
        auto threaded = search(e, {200, 200, 6}, par);
        CHECK(as_set(whole.solutions) == as_set(threaded.solutions));
        // union of x-prefix boxes in reverse order
        std::set<Tuple> merged;
        for (unsigned long top = 200; top >= 50; top -= 50)
            for (auto t : as_set(search(e, {top, 200, 6}).solutions)) merged.insert(t);
        CHECK(merged == as_set(whole.solutions));
    }
}

TEST_CASE("closed-form families") {
    auto r = closed_form(Equation::VII, 2, 2);
    REQUIRE(r.solutions.size() == 1);
    CHECK(r.solutions[0].x == 6);
    CHECK(r.solutions[0].y == 3);
    CHECK(r.solutions[0].provenance == Provenance::closed_form);

    r = closed_form(Equation::VIII, 1, 1);  // only the second family starts at 1
    REQUIRE(r.solutions.size() == 1);
    CHECK(r.solutions[0].x == 20);
    CHECK(r.solutions[0].y == 12);
    CHECK(power(32, 12) == power(2, 60));

    r = closed_form(Equation::I, 1, 1);
    REQUIRE(r.solutions.size() == 2);
    CHECK(std::tie(r.solutions[0].x, r.solutions[0].y, r.solutions[0].z) ==
          std::make_tuple(Natural(3), Natural(1), 1UL));
    CHECK(std::tie(r.solutions[1].x, r.solutions[1].y, r.solutions[1].z) ==
          std::make_tuple(Natural(5), Natural(3), 2UL));

    CHECK(closed_form(Equation::III, 1, 10).solutions.empty());
    CHECK(closed_form(Equation::IX, 1, 10).solutions.empty());
    CHECK_FALSE(closed_form(Equation::X, 1, 10).known);

    // large members are compared through primitive roots, not expansion
    r = closed_form(Equation::VIII, 2, 6);
    CHECK(r.solutions.size() == 10);
    for (const auto& s : r.solutions) CHECK(is_solution(Equation::VIII, s.x, s.y));
    r = closed_form(Equation::VII, 1, 12);
    for (const auto& s : r.solutions) CHECK(is_solution(Equation::VII, s.x, s.y));
}

TEST_CASE("is_solution rejects near misses of large members") {
    auto r = closed_form(Equation::VIII, 4, 4);
    for (const auto& s : r.solutions) {
        CHECK(is_solution(Equation::VIII, s.x, s.y));
        CHECK_FALSE(is_solution(Equation::VIII, s.x + 1, s.y));
        CHECK_FALSE(is_solution(Equation::VIII, s.x, s.y - 1));
    }
}

TEST_CASE("scaling preserves solutions of I and II") {
    for (const auto& s : closed_form(Equation::I, 1, 4).solutions)
        for (unsigned long k = 1; k <= 9; ++k) CHECK(is_solution(Equation::I, k * s.x, k * s.y, s.z));
    for (const auto& s : closed_form(Equation::II, 1, 4).solutions)
        for (unsigned long k = 1; k <= 9; ++k) CHECK(is_solution(Equation::II, k * s.x, k * s.y, s.z));
}

TEST_CASE("cross verification on the 300 box") {
    const Box box{300, 300, 8};
    const auto start = std::chrono::steady_clock::now();
    for (auto e : all_equations) {
        INFO("equation ", to_string(e));
        auto rep = cross_verify(e, box);
        CHECK(rep.skipped == 0);
        switch (e) {
            case Equation::III:
                // search finds (t, 4t, 2): (5t)^2 = (3t)^2 + (4t)^2
                CHECK_FALSE(rep.match);
                CHECK(rep.verdict == Verdict::violation);
                CHECK(rep.missed_by_family.size() == 75);
                CHECK(rep.extra_in_family.empty());
                for (const auto& s : rep.missed_by_family) {
                    CHECK(s.y == 4 * s.x);
                    CHECK(s.z == 2);
                }
                break;
            case Equation::X:
                CHECK_FALSE(rep.family_known);
                CHECK(rep.verdict == Verdict::consistent);
                CHECK(as_set(rep.searched) == std::set<Tuple>{{6, 2, 0}, {6, 3, 0}});
                break;
            default:
                CHECK(rep.match);
                CHECK(rep.verdict == Verdict::consistent);
                CHECK(rep.details.empty());
        }
        if (e == Equation::I) CHECK(rep.searched.size() == 160);
        if (e == Equation::II) CHECK(rep.searched.size() == 100);
        if (e == Equation::V || e == Equation::IX) CHECK(rep.searched.empty());
        if (e == Equation::VI) CHECK(as_set(rep.searched) == std::set<Tuple>{{1, 1, 0}});
    }
    CHECK(std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count() < 300.0);
}

TEST_CASE("cross verification reports the direction of a mismatch") {
    // a box too small in y for (5k,3k,2) but not for (3k,k,1)
    auto rep = cross_verify(Equation::I, {10, 2, 1});
    CHECK(rep.match);
    CHECK(as_set(rep.searched) == std::set<Tuple>{{3, 1, 1}, {6, 2, 1}});
}

TEST_CASE("bit budget skips are counted and make the report indeterminate") {
    SearchOptions tight;
    tight.bit_budget = 64;
    auto r = search(Equation::VIII, {80, 80, 1}, tight);
    CHECK(r.skipped > 0);
    CHECK(as_set(r.solutions) == std::set<Tuple>{{6, 3, 0}, {20, 12, 0}});  // (75,50) needs 348 bits
    auto rep = cross_verify(Equation::VIII, {80, 80, 1}, tight);
    CHECK(rep.extra_in_family.empty());
    CHECK(rep.verdict == Verdict::indeterminate);
}

TEST_CASE("lemma1_holds") {
    CHECK(lemma1_holds(4, 3, 5));
    CHECK_FALSE(lemma1_holds(5, 3, 4));
    CHECK_FALSE(lemma1_holds(7, 2, 3));
    CHECK_THROWS_AS(lemma1_holds(6, 4, 2), DomainError);
    CHECK_THROWS_AS(lemma1_holds(3, 3, 2), DomainError);
}

TEST_CASE("lemma 1 sweep, a, b <= 200, n <= 6") {
    auto sweep = lemma1_sweep(200, 6);
    CHECK(sweep.counterexamples.empty());
    // pairs with |a - b| = 1 are the only divisible ones: 2 * 199 ordered pairs
    CHECK(sweep.divides == 2 * 199 * 6);
    std::uint64_t coprime = 0;
    for (unsigned long a = 1; a <= 200; ++a)
        for (unsigned long b = 1; b <= 200; ++b)
            if (a != b && std::gcd(a, b) == 1) ++coprime;
    CHECK(sweep.pairs == coprime);
}
