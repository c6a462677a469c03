#pragma once

#include <complex>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <vector>

#include "ntlab/arith.hpp"
#include "ntlab/verdict.hpp"

namespace ntlab::pseudofib {

/// u_1..u_k given, u_n = u_{n-1} + ... + u_{n-k} afterwards.
struct RecurrenceSpec {
    unsigned order = 3;
    std::vector<Natural> initial_terms;  // empty means all ones

    static RecurrenceSpec ones(unsigned k) { return {k, std::vector<Natural>(k, Natural(1))}; }
};

/// u_1..u_n.
std::vector<Natural> terms(const RecurrenceSpec& spec, unsigned n);

/// Running sums of a sequence: out[i] = v[0] + ... + v[i].
std::vector<Natural> partial_sums(const std::vector<Natural>& v);

struct IdentityReport {
    unsigned order = 0;
    unsigned n_max = 0;
    unsigned level = 0;  // 0 for the terms, 1 for S, 2 for S', ...
    std::uint64_t checked = 0;
    std::optional<unsigned> first_failure;  // 1-based index n
    Natural offset;  // T_n - 2T_{n-1} + T_{n-k-1} at the first failure
    bool holds() const { return !first_failure; }
};

/// u_n = 2u_{n-1} - u_{n-k-1} for k + 2 <= n <= n_max.
IdentityReport verify_shift_identity(const RecurrenceSpec& spec, unsigned n_max);

/// The same identity on the iterated partial sums, one report per level
/// 1..depth.
std::vector<IdentityReport> verify_sum_identity(const RecurrenceSpec& spec, unsigned n_max, unsigned depth);

struct SolutionSpaceReport {
    unsigned order = 0;
    unsigned trials = 0;
    std::uint64_t sequences_checked = 0;
    std::uint64_t failures = 0;
    Verdict verdict() const { return failures ? Verdict::violation : Verdict::consistent; }
};

/// Random rational starts for v_n = 2v_{n-1} - v_{n-k-1}; checks that
/// c*V and V' + V'' + V''' satisfy it up to n = 50, exactly.
SolutionSpaceReport solution_space_check(unsigned k, unsigned trials, std::uint64_t seed);

using Complex = std::complex<double>;

struct CharacteristicRoots {
    unsigned order = 0;
    std::vector<Complex> roots;  // roots[0] is the dominant root
    double dominant = 0.0;
    double max_residual = 0.0;  // max |r^k - (r^{k-1} + ... + 1)| / max(1, |r|^k)

    std::vector<double> real_roots(double imag_tol = 1e-9) const;
};

/// Roots of x^k - x^{k-1} - ... - 1 for 2 <= k <= 64. The dominant root is
/// the fixed point of x^k (2 - x) = 1 on [1, 2); the rest are companion
/// matrix eigenvalues polished by Newton steps.
CharacteristicRoots characteristic_roots(unsigned k);

/// |r^k - (r^{k-1} + ... + 1)|.
double polynomial_residual(unsigned k, Complex r);

struct CardanoReport {
    Complex q1, q2, q3;
    double max_residual = 0.0;  // |1 + q + q^2 - q^3| over the three
    double dominant_gap = 0.0;  // |q1 - characteristic_roots(3).dominant|
    Complex product;
    bool product_matches_vieta = false;  // q1 q2 q3 = +1
    bool product_matches_paper = false;  // q1 q2 q3 = -1 as printed
    Verdict verdict = Verdict::consistent;
};

CardanoReport cardano_root_check();

class DegenerateRoots : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct ClosedForm {
    unsigned order = 0;
    std::vector<Complex> coefficients;
    CharacteristicRoots roots;
};

/// Solves sum_i c_i q_i^{j-1} = 1 for j = 1..k; 2 <= k <= 12.
ClosedForm closed_form(unsigned k);

/// sum_i c_i q_i^{n-1}. Throws std::runtime_error when the imaginary part
/// exceeds 1e-6 * max(1, |real part|).
double closed_form_eval(const ClosedForm& cf, unsigned n);

}  // namespace ntlab::pseudofib
