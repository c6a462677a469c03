"""Exact number-theory checks backed by a C++ core."""

from ntlab._core import (
    BitBudgetExceeded,
    DegenerateRoots,
    DomainError,
    cardano_root_check,
    characteristic_roots,
    classify_divisors,
    classify_prime,
    closed_form,
    closed_form_values,
    compose,
    cross_verify,
    dominant_root,
    factorize,
    gcd,
    is_mersenne_prime,
    is_prime,
    is_solution,
    lemma1_sweep,
    mersenne_solutions,
    multiplicative_order,
    power_forms,
    power_of_two_product_decomposition,
    representations,
    repunit_value,
    run_cli,
    search,
    search_power_eq,
    solvable,
    terms,
    verify_identities,
    verify_theorem,
)

__all__ = [name for name in dir() if not name.startswith("_")]
__version__ = "0.1.0"
