#include "ntlab/repunit.hpp"

#include <sstream>

#include "ntlab/detail/parallel.hpp"

namespace ntlab::repunit {

namespace {

bool odd_prime(const Natural& n) { return n > 2 && is_prime(n).prime; }
bool odd_prime(unsigned long n) { return odd_prime(Natural(n)); }

template <class... Args>
std::string cat(const Args&... args) {
    std::ostringstream os;
    (os << ... << args);
    return os.str();
}

void flag(RepunitReport& r, std::string what) {
    r.verdict = Verdict::violation;
    r.details.push_back(std::move(what));
}

// Claims of the form "exactly one prime divisor below p, it equals q, at
// least two distinct primes, all others above p and 1 mod q".
void check_single_small_divisor(RepunitReport& r) {
    const Natural& p = r.input.p;
    const Natural q = r.input.q;
    if (r.below_p.size() != 1) {
        flag(r, cat("expected exactly one prime divisor below p=", p, ", found ", r.below_p.size()));
    } else if (r.below_p.front() != q) {
        flag(r, cat("prime divisor below p is ", r.below_p.front(), ", expected q=", q));
    }
    if (r.factorization.factors.size() < 2)
        flag(r, "A has fewer than two distinct prime divisors");
    for (const auto& prime : r.above_p) {
        if (prime <= p) flag(r, cat("prime ", prime, " is not above p"));
        if (prime % q != 1) flag(r, cat("prime ", prime, " is not 1 mod q"));
    }
}

void check_all_above(RepunitReport& r) {
    for (const auto& prime : r.below_p)
        flag(r, cat("prime divisor ", prime, " is below p=", r.input.p));
}

}  // namespace

std::string_view to_string(TheoremCase c) {
    switch (c) {
        case TheoremCase::T1: return "T1";
        case TheoremCase::T2: return "T2";
        case TheoremCase::T3: return "T3";
        case TheoremCase::T4: return "T4";
        case TheoremCase::none: return "none";
    }
    return "?";
}

Natural repunit_value(const Natural& p, unsigned long q) {
    if (p < 2) throw DomainError("repunit_value: p must be >= 2");
    if (q < 1) throw DomainError("repunit_value: q must be >= 1");
    Natural a = 1;
    for (unsigned long i = 1; i < q; ++i) a = a * p + 1;
    return a;
}

TheoremCase theorem_case_for(const Natural& p, unsigned long q) {
    if (!odd_prime(q)) return TheoremCase::none;
    const Natural qq = q;
    const Natural twice = 2 * qq;
    if (p == twice + 1 && odd_prime(p)) return TheoremCase::T1;
    if (p == qq + 1 || p == twice + 1) return TheoremCase::T4;
    if (odd_prime(p) && p < twice + 1) return TheoremCase::T2;
    if ((p >= 2 && p <= qq) || (p >= qq + 2 && p <= twice)) return TheoremCase::T3;
    return TheoremCase::none;
}

RepunitReport check_claim(const Natural& p, unsigned long q, TheoremCase claim,
                          const FactorOptions& opts) {
    if (p < 2) throw DomainError("classify_divisors: p must be >= 2");
    if (q < 2) throw DomainError("classify_divisors: q must be >= 2");

    RepunitReport r;
    r.input = {p, q};
    r.A = repunit_value(p, q);
    r.theorem_case = theorem_case_for(p, q);
    r.claim = claim;
    if (r.A >= 2) r.factorization = factorize(r.A, opts);

    for (const auto& f : r.factorization.factors) {
        if (f.prime < p) r.below_p.push_back(f.prime);
        else if (f.prime > p) r.above_p.push_back(f.prime);
        else r.equal_p = true;
    }

    // Invariants that hold for every (p, q).
    if (r.A % p != 1 % p) flag(r, "A is not 1 mod p");
    if (r.equal_p) flag(r, "p divides A");
    if (r.factorization.product() != r.A) flag(r, "factorization does not reconstruct A");
    const Natural qq = q;
    if (gcd(r.A, p - 1) != gcd(p - 1, qq)) flag(r, "gcd(A, p-1) != gcd(p-1, q)");

    const bool q_prime = is_prime(qq).prime;
    if (q_prime && r.factorization.complete()) {
        for (const auto& f : r.factorization.factors) {
            if (f.prime == qq) continue;
            if (f.prime % qq != 1) flag(r, cat("prime ", f.prime, " is not 1 mod q"));
            if (multiplicative_order_dividing(p, f.prime, qq, opts) != qq)
                flag(r, cat("order of p modulo ", f.prime, " is not q"));
        }
    }

    switch (claim) {
        case TheoremCase::T1:
        case TheoremCase::T4:
            check_single_small_divisor(r);
            break;
        case TheoremCase::T2:
            check_all_above(r);
            break;
        case TheoremCase::T3: {
            check_all_above(r);
            Theorem3Readings readings;
            readings.all_above = r.below_p.empty();
            readings.exactly_one_above = r.above_p.size() == 1;
            r.theorem3 = readings;
            break;
        }
        case TheoremCase::none:
            break;
    }
    if (r.theorem_case == TheoremCase::T1 && r.factorization.complete()) {
        // q = p_1 < p < p_2 < ... < p_k
        if (!(qq < p) || r.below_p != std::vector<Natural>{qq})
            flag(r, "inequality chain q < p < other prime divisors fails");
    }

    if (!r.factorization.complete() && r.verdict != Verdict::violation) {
        r.verdict = Verdict::indeterminate;
        for (const auto& c : r.factorization.unfactored)
            r.details.push_back(cat("unfactored cofactor ", c));
    }
    return r;
}

RepunitReport classify_divisors(const Natural& p, unsigned long q, const FactorOptions& opts) {
    return check_claim(p, q, theorem_case_for(p, q), opts);
}

namespace {

struct Instance {
    unsigned long p;
    unsigned long q;
};

std::vector<RepunitReport> run(const std::vector<Instance>& instances, TheoremCase claim,
                               const SweepOptions& opts) {
    std::vector<RepunitReport> out(instances.size());
    detail::parallel_for(instances.size(), opts.jobs, [&](std::size_t i) {
        out[i] = check_claim(instances[i].p, instances[i].q, claim, opts.factor);
    });
    return out;
}

std::vector<unsigned long> odd_primes_up_to(unsigned long limit) {
    std::vector<unsigned long> out;
    for (auto p : primes_up_to(static_cast<std::uint32_t>(limit)))
        if (p > 2) out.push_back(p);
    return out;
}

}  // namespace

std::vector<RepunitReport> verify_theorem_1(unsigned long q_max, const SweepOptions& opts) {
    std::vector<Instance> inst;
    for (auto q : odd_primes_up_to(q_max))
        if (is_prime_u64(2 * q + 1)) inst.push_back({2 * q + 1, q});
    return run(inst, TheoremCase::T1, opts);
}

std::vector<RepunitReport> verify_theorem_2(unsigned long bound, const SweepOptions& opts) {
    std::vector<Instance> inst;
    const auto primes = odd_primes_up_to(bound);
    for (auto q : primes)
        for (auto p : primes)
            if (p < 2 * q + 1) inst.push_back({p, q});
    return run(inst, TheoremCase::T2, opts);
}

std::vector<RepunitReport> verify_theorem_3(unsigned long q_max, const SweepOptions& opts) {
    std::vector<Instance> inst;
    for (auto q : odd_primes_up_to(q_max)) {
        for (unsigned long p = 2; p <= q; ++p) inst.push_back({p, q});
        for (unsigned long p = q + 2; p <= 2 * q; ++p) inst.push_back({p, q});
    }
    return run(inst, TheoremCase::T3, opts);
}

std::vector<RepunitReport> verify_theorem_4(unsigned long q_max, const SweepOptions& opts) {
    std::vector<Instance> inst;
    for (auto q : odd_primes_up_to(q_max)) {
        inst.push_back({q + 1, q});
        inst.push_back({2 * q + 1, q});
    }
    return run(inst, TheoremCase::T4, opts);
}

Verdict overall(const std::vector<RepunitReport>& reports) {
    Verdict v = Verdict::consistent;
    for (const auto& r : reports) v = combine(v, r.verdict);
    return v;
}

}  // namespace ntlab::repunit
