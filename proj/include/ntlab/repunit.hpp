#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "ntlab/arith.hpp"
#include "ntlab/verdict.hpp"

namespace ntlab::repunit {

/// Which divisor-structure statement applies to A = (p^q - 1)/(p - 1).
///   T1: q odd prime, p = 2q + 1 prime
///   T2: p, q odd primes, p < 2q + 1
///   T3: q odd prime, p in 2..q or q+2..2q
///   T4: q odd prime, p in {q + 1, 2q + 1}
/// When several apply the first in the order T1, T4, T2, T3 wins.
enum class TheoremCase { T1, T2, T3, T4, none };

std::string_view to_string(TheoremCase c);

struct RepunitInput {
    Natural p;
    unsigned long q = 0;
};

/// Both readings of the T3 statement: every prime divisor above p, or
/// exactly one distinct prime divisor above p.
struct Theorem3Readings {
    bool all_above = false;
    bool exactly_one_above = false;
};

struct RepunitReport {
    RepunitInput input;
    Natural A;
    Factorization factorization;
    std::vector<Natural> below_p;
    std::vector<Natural> above_p;
    bool equal_p = false;
    TheoremCase theorem_case = TheoremCase::none;
    TheoremCase claim = TheoremCase::none;  // statement the verdict was checked against
    Verdict verdict = Verdict::consistent;
    std::vector<std::string> details;
    std::optional<Theorem3Readings> theorem3;
};

/// 1 + p + ... + p^(q-1) by Horner's rule.
Natural repunit_value(const Natural& p, unsigned long q);

TheoremCase theorem_case_for(const Natural& p, unsigned long q);

/// Factors A, sorts its primes around p, and checks the statement for the
/// applicable case plus the invariants every report must satisfy.
RepunitReport classify_divisors(const Natural& p, unsigned long q, const FactorOptions& opts = {});

/// As classify_divisors, but verdict is checked against `claim`.
RepunitReport check_claim(const Natural& p, unsigned long q, TheoremCase claim,
                          const FactorOptions& opts = {});

struct SweepOptions {
    FactorOptions factor;
    unsigned jobs = 1;
};

std::vector<RepunitReport> verify_theorem_1(unsigned long q_max, const SweepOptions& opts = {});
std::vector<RepunitReport> verify_theorem_2(unsigned long bound, const SweepOptions& opts = {});
std::vector<RepunitReport> verify_theorem_3(unsigned long q_max, const SweepOptions& opts = {});
std::vector<RepunitReport> verify_theorem_4(unsigned long q_max, const SweepOptions& opts = {});

Verdict overall(const std::vector<RepunitReport>& reports);

}  // namespace ntlab::repunit
