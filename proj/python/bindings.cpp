#include <pybind11/complex.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>
#include <string>

#include "ntlab/cli.hpp"
#include "ntlab/dioph.hpp"
#include "ntlab/loeschian.hpp"
#include "ntlab/power_eq.hpp"
#include "ntlab/pseudofib.hpp"
#include "ntlab/repunit.hpp"

namespace py = pybind11;

// Python int <-> mpz_class through the decimal string, so sizes are unbounded.
namespace pybind11::detail {
template <>
struct type_caster<mpz_class> {
    PYBIND11_TYPE_CASTER(mpz_class, const_name("int"));

    bool load(handle src, bool) {
        if (!src || !PyLong_Check(src.ptr())) return false;
        const auto text = py::str(src).cast<std::string>();
        return value.set_str(text, 10) == 0;
    }

    static handle cast(const mpz_class& n, return_value_policy, handle) {
        return PyLong_FromString(n.get_str().c_str(), nullptr, 10);
    }
};
}  // namespace pybind11::detail

namespace {

using namespace ntlab;

FactorOptions factor_options(std::uint64_t budget, std::uint64_t seed) { return {budget, seed}; }

py::dict factorization_dict(const Factorization& f) {
    py::list factors;
    for (const auto& pp : f.factors) factors.append(py::make_tuple(pp.prime, pp.exponent));
    py::dict d;
    d["factors"] = factors;
    d["unfactored"] = f.unfactored;
    d["complete"] = f.complete();
    return d;
}

py::dict repunit_dict(const repunit::RepunitReport& r) {
    py::dict d;
    d["p"] = r.input.p;
    d["q"] = r.input.q;
    d["A"] = r.A;
    d["factorization"] = factorization_dict(r.factorization);
    d["below_p"] = r.below_p;
    d["above_p"] = r.above_p;
    d["equal_p"] = r.equal_p;
    d["case"] = std::string(repunit::to_string(r.theorem_case));
    d["claim"] = std::string(repunit::to_string(r.claim));
    d["verdict"] = std::string(to_string(r.verdict));
    d["details"] = r.details;
    if (r.theorem3) {
        d["all_above"] = r.theorem3->all_above;
        d["exactly_one_above"] = r.theorem3->exactly_one_above;
    }
    return d;
}

py::list repunit_list(const std::vector<repunit::RepunitReport>& v) {
    py::list out;
    for (const auto& r : v) out.append(repunit_dict(r));
    return out;
}

py::list power_list(const std::vector<power_eq::PowerEqSolution>& v) {
    py::list out;
    for (const auto& s : v) out.append(py::make_tuple(s.base, s.x, s.y, s.z));
    return out;
}

dioph::Equation equation(const std::string& name) {
    auto e = dioph::parse_equation(name);
    if (!e) throw py::value_error("unknown equation " + name);
    return *e;
}

py::tuple dioph_tuple(const dioph::DiophSolution& s) {
    if (dioph::has_z(s.equation)) return py::make_tuple(s.x, s.y, s.z);
    return py::make_tuple(s.x, s.y);
}

py::list dioph_list(const std::vector<dioph::DiophSolution>& v) {
    py::list out;
    for (const auto& s : v) out.append(dioph_tuple(s));
    return out;
}

py::tuple rep_tuple(const loeschian::LoeschianRep& r) { return py::make_tuple(r.a, r.b); }

py::dict identity_dict(const pseudofib::IdentityReport& r) {
    py::dict d;
    d["level"] = r.level;
    d["checked"] = r.checked;
    d["holds"] = r.holds();
    d["first_failure"] = r.first_failure ? py::cast(*r.first_failure) : py::none();
    d["offset"] = r.offset;
    return d;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Exact number-theory checks: repunit divisors, power equations, exponential Diophantine "
              "equations, the form a^2 + ab + b^2 and order-k Fibonacci-type sequences.";

    py::register_exception<DomainError>(m, "DomainError", PyExc_ValueError);
    py::register_exception<pseudofib::DegenerateRoots>(m, "DegenerateRoots", PyExc_RuntimeError);
    py::register_exception<dioph::BitBudgetExceeded>(m, "BitBudgetExceeded", PyExc_RuntimeError);

    const auto budget = FactorOptions::default_budget;
    const auto seed = FactorOptions::default_seed;

    // arith
    m.def(
        "is_prime", [](const Natural& n) { return is_prime(n).prime; }, py::arg("n"));
    m.def(
        "factorize",
        [](const Natural& n, std::uint64_t b, std::uint64_t s) {
            return factorization_dict(factorize(n, factor_options(b, s)));
        },
        py::arg("n"), py::arg("budget") = budget, py::arg("seed") = seed);
    m.def(
        "multiplicative_order", [](const Natural& a, const Natural& mod) { return multiplicative_order(a, mod); },
        py::arg("a"), py::arg("m"));
    m.def("gcd", [](const Natural& a, const Natural& b) { return gcd(a, b); });

    // repunit
    m.def("repunit_value", &repunit::repunit_value, py::arg("p"), py::arg("q"));
    m.def(
        "classify_divisors",
        [](const Natural& p, unsigned long q, std::uint64_t b) {
            return repunit_dict(repunit::classify_divisors(p, q, factor_options(b, seed)));
        },
        py::arg("p"), py::arg("q"), py::arg("budget") = budget);
    m.def(
        "verify_theorem",
        [](int which, unsigned long bound, unsigned jobs) {
            const repunit::SweepOptions so{{}, jobs};
            switch (which) {
                case 1: return repunit_list(repunit::verify_theorem_1(bound, so));
                case 2: return repunit_list(repunit::verify_theorem_2(bound, so));
                case 3: return repunit_list(repunit::verify_theorem_3(bound, so));
                case 4: return repunit_list(repunit::verify_theorem_4(bound, so));
            }
            throw py::value_error("case must be 1, 2, 3 or 4");
        },
        py::arg("case"), py::arg("bound"), py::arg("jobs") = 1);

    // power_eq
    m.def(
        "search_power_eq",
        [](const Natural& base, unsigned long x_max, std::uint32_t y_max, unsigned long z_max, unsigned jobs) {
            return power_list(power_eq::search_power_eq(base, x_max, y_max, z_max, jobs));
        },
        py::arg("base"), py::arg("x_max"), py::arg("y_max"), py::arg("z_max"), py::arg("jobs") = 1);
    m.def(
        "mersenne_solutions", [](unsigned long x_max) { return power_list(power_eq::mersenne_solutions(x_max)); },
        py::arg("x_max"));
    m.def("is_mersenne_prime", &power_eq::is_mersenne_prime, py::arg("exponent"));
    m.def("power_of_two_product_decomposition", &power_eq::power_of_two_product_decomposition, py::arg("n"));

    // dioph
    m.def(
        "is_solution",
        [](const std::string& eq, const Natural& x, const Natural& y, unsigned long z) {
            return dioph::is_solution(equation(eq), x, y, z);
        },
        py::arg("equation"), py::arg("x"), py::arg("y"), py::arg("z") = 0);
    m.def(
        "search",
        [](const std::string& eq, unsigned long x_max, unsigned long y_max, unsigned long z_max, unsigned jobs) {
            auto r = dioph::search(equation(eq), {x_max, y_max, z_max}, {dioph::default_bit_budget, jobs});
            return py::make_tuple(dioph_list(r.solutions), r.skipped);
        },
        py::arg("equation"), py::arg("x_max"), py::arg("y_max"), py::arg("z_max") = 8, py::arg("jobs") = 1);
    m.def(
        "closed_form",
        [](const std::string& eq, unsigned long first, unsigned long last) -> py::object {
            auto r = dioph::closed_form(equation(eq), first, last);
            if (!r.known) return py::none();
            return dioph_list(r.solutions);
        },
        py::arg("equation"), py::arg("first"), py::arg("last"));
    m.def(
        "cross_verify",
        [](const std::string& eq, unsigned long x_max, unsigned long y_max, unsigned long z_max) {
            auto r = dioph::cross_verify(equation(eq), {x_max, y_max, z_max});
            py::dict d;
            d["family_known"] = r.family_known;
            d["searched"] = dioph_list(r.searched);
            d["family"] = dioph_list(r.family);
            d["missed_by_family"] = dioph_list(r.missed_by_family);
            d["extra_in_family"] = dioph_list(r.extra_in_family);
            d["skipped"] = r.skipped;
            d["match"] = r.match;
            d["verdict"] = std::string(to_string(r.verdict));
            return d;
        },
        py::arg("equation"), py::arg("x_max"), py::arg("y_max"), py::arg("z_max") = 8);
    m.def(
        "lemma1_sweep",
        [](unsigned long ab_max, unsigned long n_max) {
            auto r = dioph::lemma1_sweep(ab_max, n_max);
            return py::make_tuple(r.pairs, r.divides, r.counterexamples);
        },
        py::arg("ab_max"), py::arg("n_max"));

    // loeschian
    m.def(
        "representations",
        [](const Natural& n) {
            py::list out;
            for (const auto& r : loeschian::representations(n)) out.append(rep_tuple(r));
            return out;
        },
        py::arg("n"));
    m.def(
        "compose",
        [](const Natural& a, const Natural& b, const Natural& c, const Natural& d) {
            auto r = loeschian::compose(loeschian::make_rep(a, b), loeschian::make_rep(c, d));
            return py::make_tuple(rep_tuple(r.form_a), rep_tuple(r.form_b));
        },
        py::arg("a"), py::arg("b"), py::arg("c"), py::arg("d"));
    m.def(
        "solvable",
        [](const Natural& n, std::uint64_t b) {
            return std::string(loeschian::to_string(loeschian::solvable(n, factor_options(b, seed))));
        },
        py::arg("n"), py::arg("budget") = budget);
    m.def(
        "classify_prime",
        [](const Natural& p) { return std::string(loeschian::to_string(loeschian::classify_prime(p))); },
        py::arg("p"));
    m.def(
        "power_forms",
        [](const Natural& a, const Natural& b, unsigned long max_exp) {
            auto r = loeschian::power_identities_check(a, b, max_exp);
            py::list levels;
            for (const auto& level : r.levels) {
                py::list l;
                for (const auto& rep : level) l.append(rep_tuple(rep));
                levels.append(l);
            }
            return py::make_tuple(levels, std::string(to_string(r.verdict)));
        },
        py::arg("a"), py::arg("b"), py::arg("max_exp"));

    // pseudofib
    m.def(
        "terms", [](unsigned k, unsigned n) { return pseudofib::terms(pseudofib::RecurrenceSpec::ones(k), n); },
        py::arg("k"), py::arg("n"));
    m.def(
        "characteristic_roots", [](unsigned k) { return pseudofib::characteristic_roots(k).roots; }, py::arg("k"));
    m.def(
        "dominant_root", [](unsigned k) { return pseudofib::characteristic_roots(k).dominant; }, py::arg("k"));
    m.def(
        "closed_form_values",
        [](unsigned k, unsigned n) {
            const auto cf = pseudofib::closed_form(k);
            std::vector<double> out;
            for (unsigned i = 1; i <= n; ++i) out.push_back(pseudofib::closed_form_eval(cf, i));
            return out;
        },
        py::arg("k"), py::arg("n"));
    m.def(
        "verify_identities",
        [](unsigned k, unsigned n_max, unsigned depth) {
            const auto spec = pseudofib::RecurrenceSpec::ones(k);
            py::list out;
            out.append(identity_dict(pseudofib::verify_shift_identity(spec, n_max)));
            for (const auto& r : pseudofib::verify_sum_identity(spec, n_max, depth)) out.append(identity_dict(r));
            return out;
        },
        py::arg("k"), py::arg("n_max"), py::arg("depth"));
    m.def("cardano_root_check", [] {
        auto r = pseudofib::cardano_root_check();
        py::dict d;
        d["roots"] = std::vector<pseudofib::Complex>{r.q1, r.q2, r.q3};
        d["max_residual"] = r.max_residual;
        d["dominant_gap"] = r.dominant_gap;
        d["product"] = r.product;
        d["product_matches_vieta"] = r.product_matches_vieta;
        d["product_matches_printed"] = r.product_matches_paper;
        d["verdict"] = std::string(to_string(r.verdict));
        return d;
    });

    // cli
    m.def(
        "run_cli",
        [](const std::vector<std::string>& args) {
            std::ostringstream out, err;
            int code;
            {
                py::gil_scoped_release release;
                code = cli::run(args, out, err);
            }
            return py::make_tuple(code, out.str(), err.str());
        },
        py::arg("args"));
}
