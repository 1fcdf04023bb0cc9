from __future__ import annotations

import random

import pytest
from hypothesis import given
from hypothesis import strategies as st

from equimult.groebner import Ideal, height
from equimult.invariants import (
    ModuleSpec,
    dim_quotient,
    fitting_ideal,
    grade_quotient,
    is_free,
    is_free_on_punctured_spectrum,
    is_ideal_module,
    mu_at_prime,
    mu_local,
    quotient_fitting_ideal,
    rank,
)
from equimult.poly import PolyRing

from oracles import brute_first_fitting, random_ideal_module, random_monomial_gens

R3 = PolyRing(("x1", "x2", "x3"))
S = PolyRing(("x", "y"))


def two_primes():
    return ModuleSpec.direct_sum(R3, [["x1", "x2"], ["x1", "x3"]])


def test_fitting_ideal_of_sum_of_primes():
    E = two_primes()
    F2 = fitting_ideal(E, 2)
    assert F2 == Ideal(R3, [R3("x1^2"), R3("x1*x3"), R3("x1*x2"), R3("x2*x3")])
    assert height(F2) == 2
    assert fitting_ideal(E, 4).is_unit()
    assert fitting_ideal(E, 0) == Ideal(R3, [])  # rank 2 > 0


def test_rank_mu_and_grade():
    E = two_primes()
    assert rank(E) == 2 and mu_local(E) == 4
    assert grade_quotient(E) == 2 and is_ideal_module(E)
    assert not is_free_on_punctured_spectrum(E)
    assert dim_quotient(E) == 1
    assert not is_free(E)


def test_mu_at_primes():
    E = two_primes()
    P = Ideal(R3, [R3("x1"), R3("x2")])
    Q = Ideal(R3, [R3("x2"), R3("x3")])
    assert mu_at_prime(E, P) == 3
    assert mu_at_prime(E, Q) == 2
    with pytest.raises(ValueError):
        mu_at_prime(E, Ideal(R3, [R3.one()]))


def test_free_and_max_ideal_sum():
    F = ModuleSpec.free(S, 2)
    assert is_free(F) and rank(F) == 2 and grade_quotient(F) == float("inf")
    M = ModuleSpec.direct_sum(S, [["x", "y"], ["x", "y"]])
    assert is_free_on_punctured_spectrum(M) and dim_quotient(M) == 0
    assert quotient_fitting_ideal(M) == Ideal(S, [S("x^2"), S("x*y"), S("y^2")])


def test_minimal_columns_drop_redundant_generators():
    E = ModuleSpec.from_strings(S, [["x", "0"], ["y", "0"], ["x + y", "0"], ["0", "x"], ["0", "x*y"]])
    assert mu_local(E) == 3
    assert len(E.presentation) == 1


def test_constructor_validation():
    with pytest.raises(ValueError):
        ModuleSpec(S, 2, ((S("x"),),))
    with pytest.raises(ValueError):
        ModuleSpec(S, 1, ())
    assert not ModuleSpec.from_strings(S, [["x + 1"]]).is_graded


@given(st.integers(0, 10**6))
def test_direct_sum_fitting_is_product_of_summand_fittings(seed):
    rng = random.Random(seed)
    I1 = random_monomial_gens(rng, R3)
    I2 = random_monomial_gens(rng, R3)
    E = ModuleSpec.direct_sum(R3, [I1, I2])
    F1, F2 = brute_first_fitting(I1), brute_first_fitting(I2)
    assert fitting_ideal(E, 2) == Ideal(R3, [a * b for a in F1 for b in F2])


def test_first_fitting_ideal_differs_from_ideal_in_general():
    m = ModuleSpec.direct_sum(R3, [["x1", "x2", "x3"]])
    assert fitting_ideal(m, 1) == Ideal(R3, [a * b for a in R3.gens() for b in R3.gens()])
    ci = ModuleSpec.direct_sum(R3, [["x1", "x2"]])
    assert fitting_ideal(ci, 1) == Ideal(R3, [R3("x1"), R3("x2")])


@given(st.integers(0, 10**6))
def test_fitting_chain_and_rank(seed):
    E = random_ideal_module(random.Random(seed))
    e = E.ambient_rank
    assert rank(E) == e
    chain = [fitting_ideal(E, i) for i in range(mu_local(E) + 1)]
    for a, b in zip(chain, chain[1:]):
        assert b.contains_ideal(a)
    assert chain[-1].is_unit()
    # the quotient is supported in codimension >= 2
    assert grade_quotient(E) >= 2
    assert height(fitting_ideal(E, e)) >= 2 or fitting_ideal(E, e).is_unit()
