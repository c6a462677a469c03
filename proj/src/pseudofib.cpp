#include "ntlab/pseudofib.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <string>
#include <tuple>

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>

namespace ntlab::pseudofib {

namespace {

void check_order(unsigned k, unsigned lo, unsigned hi, const char* who) {
    if (k < lo || k > hi)
        throw DomainError(std::string(who) + ": order must be in [" + std::to_string(lo) + ", " +
                          std::to_string(hi) + "]");
}

// T_n - 2T_{n-1} + T_{n-k-1} over a 1-based sequence stored 0-based.
IdentityReport shift_report(const std::vector<Natural>& t, unsigned k, unsigned level) {
    IdentityReport rep;
    rep.order = k;
    rep.n_max = static_cast<unsigned>(t.size());
    rep.level = level;
    for (unsigned n = k + 2; n <= t.size(); ++n) {
        ++rep.checked;
        Natural d = t[n - 1] - 2 * t[n - 2] + t[n - k - 2];
        if (d != 0) {
            rep.first_failure = n;
            rep.offset = d;
            break;
        }
    }
    return rep;
}

using LComplex = std::complex<long double>;

// p(x) = x^k - x^{k-1} - ... - 1 and p'(x), by Horner.
std::pair<LComplex, LComplex> eval_poly(unsigned k, LComplex x) {
    LComplex p = 1, dp = 0;
    for (unsigned i = 0; i < k; ++i) {
        dp = dp * x + p;
        p = p * x - LComplex(1);
    }
    return {p, dp};
}

long double relative_residual(unsigned k, Complex r) {
    const long double scale = std::max<long double>(1, std::pow(static_cast<long double>(std::abs(r)), k));
    return std::abs(eval_poly(k, LComplex(r.real(), r.imag())).first) / scale;
}

Complex polish(unsigned k, Complex r0) {
    LComplex x(r0.real(), r0.imag());
    long double best = std::abs(eval_poly(k, x).first);
    for (int it = 0; it < 20; ++it) {
        auto [p, dp] = eval_poly(k, x);
        if (dp == LComplex(0)) break;
        const LComplex next = x - p / dp;
        const long double res = std::abs(eval_poly(k, next).first);
        if (!(res < best)) break;
        best = res;
        x = next;
    }
    return {static_cast<double>(x.real()), static_cast<double>(x.imag())};
}

double dominant_root(unsigned k) {
    // x^k (2 - x) - 1 is positive at 3/2 and negative at 2.
    long double lo = 1.5L, hi = 2.0L;
    auto f = [k](long double x) { return std::pow(x, static_cast<long double>(k)) * (2 - x) - 1; };
    for (int it = 0; it < 256 && lo < hi; ++it) {
        const long double mid = lo + (hi - lo) / 2;
        if (mid <= lo || mid >= hi) break;
        (f(mid) > 0 ? lo : hi) = mid;
    }
    double d = static_cast<double>(lo);
    if (d >= 2.0) d = std::nextafter(2.0, 0.0);
    return d;
}

LComplex ipow(LComplex base, unsigned e) {
    LComplex out = 1;
    while (e) {
        if (e & 1) out *= base;
        base *= base;
        e >>= 1;
    }
    return out;
}

}  // namespace

std::vector<Natural> terms(const RecurrenceSpec& spec, unsigned n) {
    const unsigned k = spec.order;
    if (k < 2) throw DomainError("terms: order must be >= 2");
    std::vector<Natural> init = spec.initial_terms;
    if (init.empty()) init.assign(k, Natural(1));
    if (init.size() != k) throw DomainError("terms: need exactly " + std::to_string(k) + " initial terms");
    std::vector<Natural> u;
    u.reserve(n);
    Natural window = 0;  // sum of the last k terms
    for (unsigned i = 0; i < n; ++i) {
        Natural next = i < k ? init[i] : window;
        window += next;
        if (i >= k) window -= u[i - k];
        u.push_back(std::move(next));
    }
    return u;
}

std::vector<Natural> partial_sums(const std::vector<Natural>& v) {
    std::vector<Natural> out;
    out.reserve(v.size());
    Natural acc = 0;
    for (const auto& x : v) {
        acc += x;
        out.push_back(acc);
    }
    return out;
}

IdentityReport verify_shift_identity(const RecurrenceSpec& spec, unsigned n_max) {
    return shift_report(terms(spec, n_max), spec.order, 0);
}

std::vector<IdentityReport> verify_sum_identity(const RecurrenceSpec& spec, unsigned n_max, unsigned depth) {
    std::vector<IdentityReport> out;
    auto level = terms(spec, n_max);
    for (unsigned d = 1; d <= depth; ++d) {
        level = partial_sums(level);
        out.push_back(shift_report(level, spec.order, d));
    }
    return out;
}

SolutionSpaceReport solution_space_check(unsigned k, unsigned trials, std::uint64_t seed) {
    check_order(k, 1, 64, "solution_space_check");
    constexpr unsigned length = 50;
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<long> num(-1000, 1000), den(1, 1000);
    auto random_q = [&] {
        mpq_class q(num(rng), den(rng));
        q.canonicalize();
        return q;
    };
    auto extend = [&](std::vector<mpq_class> v) {
        for (unsigned n = k + 2; n <= length; ++n) v.push_back(2 * v[n - 2] - v[n - k - 2]);
        return v;
    };
    auto satisfies = [&](const std::vector<mpq_class>& v) {
        for (unsigned n = k + 2; n <= length; ++n)
            if (v[n - 1] != 2 * v[n - 2] - v[n - k - 2]) return false;
        return true;
    };

    SolutionSpaceReport rep;
    rep.order = k;
    rep.trials = trials;
    for (unsigned t = 0; t < trials; ++t) {
        std::vector<std::vector<mpq_class>> seqs(3);
        for (auto& s : seqs) {
            for (unsigned i = 0; i <= k; ++i) s.push_back(random_q());
            s = extend(s);
        }
        const mpq_class scale = t % 7 == 0 ? mpq_class(t % 2) : random_q();
        std::vector<mpq_class> scaled(length), sum(length);
        for (unsigned i = 0; i < length; ++i) {
            scaled[i] = scale * seqs[0][i];
            sum[i] = seqs[0][i] + seqs[1][i] + seqs[2][i];
        }
        for (const auto* s : {&scaled, &sum}) {
            ++rep.sequences_checked;
            if (!satisfies(*s)) ++rep.failures;
        }
    }
    return rep;
}

double polynomial_residual(unsigned k, Complex r) {
    return static_cast<double>(std::abs(eval_poly(k, LComplex(r.real(), r.imag())).first));
}

std::vector<double> CharacteristicRoots::real_roots(double imag_tol) const {
    std::vector<double> out;
    for (const auto& r : roots)
        if (std::abs(r.imag()) <= imag_tol) out.push_back(r.real());
    std::sort(out.begin(), out.end(), std::greater<>());
    return out;
}

CharacteristicRoots characteristic_roots(unsigned k) {
    check_order(k, 2, 64, "characteristic_roots");
    Eigen::MatrixXd companion = Eigen::MatrixXd::Zero(k, k);
    companion.row(0).setOnes();
    for (unsigned i = 1; i < k; ++i) companion(i, i - 1) = 1.0;
    Eigen::EigenSolver<Eigen::MatrixXd> solver(companion, false);
    if (solver.info() != Eigen::Success) throw std::runtime_error("characteristic_roots: eigensolver failed");

    CharacteristicRoots out;
    out.order = k;
    out.dominant = dominant_root(k);
    std::vector<Complex> rest;
    for (Eigen::Index i = 0; i < solver.eigenvalues().size(); ++i) rest.push_back(solver.eigenvalues()[i]);
    auto nearest = std::min_element(rest.begin(), rest.end(), [&](const Complex& a, const Complex& b) {
        return std::abs(a - out.dominant) < std::abs(b - out.dominant);
    });
    rest.erase(nearest);
    for (auto& r : rest) {
        const bool real = r.imag() == 0.0;
        r = polish(k, r);
        if (real) r.imag(0.0);
    }
    std::sort(rest.begin(), rest.end(), [](const Complex& a, const Complex& b) {
        return std::make_tuple(-std::abs(a), a.real(), a.imag()) < std::make_tuple(-std::abs(b), b.real(), b.imag());
    });
    out.roots.push_back(out.dominant);
    out.roots.insert(out.roots.end(), rest.begin(), rest.end());
    for (const auto& r : out.roots)
        out.max_residual = std::max(out.max_residual, static_cast<double>(relative_residual(k, r)));
    return out;
}

CardanoReport cardano_root_check() {
    const double a = std::cbrt(19 + 3 * std::sqrt(33.0));
    const double b = std::cbrt(19 - 3 * std::sqrt(33.0));
    CardanoReport rep;
    rep.q1 = (a + b + 1) / 3;
    const double re = -(a + b - 2) / 6, im = std::sqrt(3.0) * (a - b) / 6;
    rep.q2 = {re, im};
    rep.q3 = {re, -im};
    for (const auto& q : {rep.q1, rep.q2, rep.q3})
        rep.max_residual = std::max(rep.max_residual, std::abs(1.0 + q + q * q - q * q * q));
    rep.dominant_gap = std::abs(rep.q1 - characteristic_roots(3).dominant);
    rep.product = rep.q1 * rep.q2 * rep.q3;
    rep.product_matches_vieta = std::abs(rep.product - 1.0) < 1e-9;
    rep.product_matches_paper = std::abs(rep.product + 1.0) < 1e-9;
    if (rep.max_residual > 1e-9 || rep.dominant_gap > 1e-9)
        rep.verdict = Verdict::violation;
    return rep;
}

ClosedForm closed_form(unsigned k) {
    check_order(k, 2, 12, "closed_form");
    ClosedForm cf;
    cf.order = k;
    cf.roots = characteristic_roots(k);
    const auto& q = cf.roots.roots;
    for (unsigned i = 0; i < k; ++i)
        for (unsigned j = i + 1; j < k; ++j)
            if (std::abs(q[i] - q[j]) < 1e-9)
                throw DegenerateRoots("closed_form: roots " + std::to_string(i) + " and " + std::to_string(j) +
                                      " coincide");
    Eigen::MatrixXcd vandermonde(k, k);
    for (unsigned j = 0; j < k; ++j)
        for (unsigned i = 0; i < k; ++i) vandermonde(j, i) = std::pow(q[i], static_cast<int>(j));
    const Eigen::VectorXcd rhs = Eigen::VectorXcd::Ones(k);
    const Eigen::FullPivLU<Eigen::MatrixXcd> lu(vandermonde);
    if (!lu.isInvertible()) throw DegenerateRoots("closed_form: Vandermonde matrix is singular");
    const Eigen::VectorXcd c = lu.solve(rhs);
    cf.coefficients.assign(c.data(), c.data() + c.size());
    return cf;
}

double closed_form_eval(const ClosedForm& cf, unsigned n) {
    if (n < 1) throw DomainError("closed_form_eval: n must be >= 1");
    LComplex sum = 0;
    for (std::size_t i = 0; i < cf.coefficients.size(); ++i) {
        const auto& c = cf.coefficients[i];
        const auto& q = cf.roots.roots[i];
        sum += LComplex(c.real(), c.imag()) * ipow(LComplex(q.real(), q.imag()), n - 1);
    }
    const double re = static_cast<double>(sum.real()), im = static_cast<double>(sum.imag());
    if (std::abs(im) > 1e-6 * std::max(1.0, std::abs(re)))
        throw std::runtime_error("closed_form_eval: imaginary residue " + std::to_string(im) + " at n=" +
                                 std::to_string(n));
    return re;
}

}  // namespace ntlab::pseudofib
