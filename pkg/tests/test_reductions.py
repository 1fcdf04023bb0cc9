from __future__ import annotations

import random
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from equimult.groebner import height
from equimult.invariants import ModuleSpec, quotient_fitting_ideal, rank
from equimult.poly import Field, PolyRing
from equimult.rees import analytic_spread
from equimult.reductions import (
    NotUpToBound,
    ReductionFailure,
    direct_sum_reduction,
    generic_minimal_reduction,
    product_power,
    reduction_certificate,
    reduction_number,
    reduction_number_wrt,
)

from oracles import random_ideal_module

S = PolyRing(("x", "y"))
R3 = PolyRing(("x1", "x2", "x3"))


def mm(e=2):
    return ModuleSpec.direct_sum(S, [["x", "y"]] * e)


def test_product_power_with_u_equal_e_is_rees_power():
    E = mm()
    P = product_power(E, E, 1)
    assert P.ambient_rank == 3
    assert len(P.columns) == 9


def test_reduction_numbers_wrt_candidates():
    E = mm()
    U = ModuleSpec.from_strings(S, [["x", "0"], ["0", "x + y"], ["y", "x"]])
    assert reduction_number_wrt(U, E) == 1
    assert reduction_number_wrt(E, E) == 0
    single = ModuleSpec.from_strings(S, [["x", "0"]])
    assert reduction_number_wrt(single, E) is NotUpToBound
    assert not NotUpToBound
    cert = reduction_certificate(U, E)
    assert cert.verified and cert.r == 1
    assert cert.to_dict()["mu"] == 3


def test_non_reduction_of_full_rank_is_refuted():
    E = mm()
    U = ModuleSpec.from_strings(S, [["x", "0"], ["0", "x"]])
    assert reduction_number_wrt(U, E) is NotUpToBound


def test_direct_sum_reduction_columns():
    U = direct_sum_reduction(S("x"), S("y"), 2, [1])
    got = {tuple(str(c) for c in col) for col in U.columns}
    assert got == {("x", "0"), ("0", "x + y"), ("y", "x")}
    U3 = direct_sum_reduction(S("x"), S("y"), 3, [1, 2])
    assert len(U3.columns) == 4
    assert reduction_number_wrt(U3, mm(3)) == 1
    with pytest.raises(ValueError):
        direct_sum_reduction(S("x"), S("y"), 3, [1, 1])
    with pytest.raises(ValueError):
        direct_sum_reduction(S("x"), S("y"), 1, [])


def test_generic_reduction_examples():
    cert = generic_minimal_reduction(ModuleSpec.free(S, 2))
    assert cert.r == 0
    cert = generic_minimal_reduction(mm(), seed=0)
    assert cert.verified and cert.r == 1 and len(cert.U.columns) == 3
    assert cert.extra["coefficients"]
    assert all(-100 <= c <= 100 for row in cert.extra["coefficients"] for c in row)
    E = ModuleSpec.direct_sum(R3, [["x1", "x2"], ["x1", "x3"]])
    cert = generic_minimal_reduction(E)
    assert cert.r == 0 and len(cert.U.columns) == 4
    assert reduction_number(mm(3)) == 1
    with pytest.raises(ReductionFailure):
        generic_minimal_reduction(mm(), target_mu=2)


def test_generic_reduction_is_seed_deterministic():
    a = generic_minimal_reduction(mm(), seed=7).to_dict()
    b = generic_minimal_reduction(mm(), seed=7).to_dict()
    assert a == b


@settings(max_examples=12)
@given(st.integers(0, 10**6))
def test_minimal_reduction_properties(seed):
    E = random_ideal_module(random.Random(seed))
    cert = generic_minimal_reduction(E, seed=seed % 5)
    U, r = cert.U, cert.r
    e = E.ambient_rank
    ell = analytic_spread(E)
    assert cert.verified
    assert len(U.columns) >= ell
    assert rank(U) == rank(E)
    # reduction persists past r and fails just before it
    assert reduction_number_wrt(U, E, r + 1) == r
    assert ell >= height(quotient_fitting_ideal(U)) + e - 1


def test_rank_short_circuit_and_ambient_mismatch():
    E = mm()
    U = ModuleSpec.from_strings(S, [["x", "y"]])
    cert = reduction_certificate(U, E)
    assert not cert.verified and "rank" in cert.reason
    with pytest.raises(ValueError):
        reduction_certificate(ModuleSpec.from_strings(S, [["x"]]), E)


def test_candidate_outside_module_is_rejected():
    E = mm()
    U = ModuleSpec.from_strings(S, [["1", "0"], ["0", "x"]])
    cert = reduction_certificate(U, E)
    assert not cert.verified and cert.r is None
    assert "not contained" in cert.reason


def test_prime_field_reduction():
    F = PolyRing(("x", "y"), Field(101))
    E = ModuleSpec.direct_sum(F, [["x", "y"], ["x", "y"]])
    assert generic_minimal_reduction(E).r == 1
