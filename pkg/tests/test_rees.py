from __future__ import annotations

import random
import warnings
from math import comb

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from equimult.groebner import hilbert_function
from equimult.invariants import ModuleSpec, is_ideal_module, mu_local, rank
from equimult.poly import PolyRing
from equimult.rees import (
    BoundExceeded,
    analytic_spread,
    check_power_bounds,
    free_power,
    is_linear_type,
    rees_kernel,
    rees_power,
    t_basis,
)

from oracles import random_ideal_module

S = PolyRing(("x", "y"))
R3 = PolyRing(("x1", "x2", "x3"))


def mm():
    return ModuleSpec.direct_sum(S, [["x", "y"], ["x", "y"]])


def kernel_vanishes(E):
    """Each kernel generator maps to zero under y_j -> sum_i psi_ij t_i."""
    data = rees_kernel(E)
    e = E.ambient_rank
    big = PolyRing(tuple(f"s{i}" for i in range(e)) + data.presentation_ring.variables)
    ts = [big.var(f"s{i}") for i in range(e)]
    images = {}
    for y, col in zip(data.y_names, data.generators):
        images[y] = sum((a.to_ring(big) * t for a, t in zip(col, ts)), big.zero())
    for g in data.kernel.generators:
        acc = big.zero()
        for exp, c in g.terms.items():
            term = big.monomial((0,) * big.nvars, c)
            for name, k in zip(data.presentation_ring.variables, exp):
                term = term * (images[name] if name in images else big.var(name)) ** k
            acc = acc + term
        if not acc.is_zero():
            return False
    return True


def test_complete_intersection_ideal():
    E = ModuleSpec.direct_sum(S, [["x", "y"]])
    data = rees_kernel(E)
    assert len(data.kernel.generators) == 1
    assert analytic_spread(E) == 2 and is_linear_type(E)
    assert kernel_vanishes(E)


def test_max_ideal_sum():
    E = mm()
    assert analytic_spread(E) == 3
    assert not is_linear_type(E)
    P = rees_kernel(E).presentation_ring
    assert P("y2*y3 - y1*y4") in rees_kernel(E).kernel
    assert kernel_vanishes(E)


def test_free_module_and_sum_of_primes():
    F = ModuleSpec.free(S, 2)
    assert rees_kernel(F).kernel.generators == [] or all(g.is_zero() for g in rees_kernel(F).kernel.generators)
    assert analytic_spread(F) == 2 and is_linear_type(F)
    E = ModuleSpec.direct_sum(R3, [["x1", "x2"], ["x1", "x3"]])
    assert analytic_spread(E) == 4 and is_linear_type(E)


@settings(max_examples=15)
@given(st.integers(0, 10**6))
def test_fiber_hilbert_function_counts_power_generators(seed):
    E = random_ideal_module(random.Random(seed))
    assert kernel_vanishes(E)
    hf = hilbert_function(rees_kernel(E).fiber, 3)
    for n in (1, 2, 3):
        assert hf[n] == mu_local(rees_power(E, n))
    e = E.ambient_rank
    assert e <= analytic_spread(E) <= E.nvars + e - 1


@pytest.mark.parametrize("n", [1, 2, 3])
def test_power_rank_and_ideal_module(n):
    E = mm()
    P = rees_power(E, n)
    assert P.ambient_rank == comb(n + 1, 1)
    assert rank(P) == n + 1
    assert is_ideal_module(P)


def test_power_of_free_plus_ideal():
    R = PolyRing(("x", "y", "z"))
    E = ModuleSpec.from_strings(R, [["1", "0"], ["0", "x"], ["0", "y"]])
    P = rees_power(E, 2)
    assert P.ambient_rank == 3
    # t_basis order (2,0), (1,1), (0,2)
    assert t_basis(2, 2) == ((2, 0), (1, 1), (0, 2))
    want = {("1", "0", "0"), ("0", "x", "0"), ("0", "y", "0"), ("0", "0", "x^2"), ("0", "0", "x*y"), ("0", "0", "y^2")}
    assert {tuple(str(c) for c in col) for col in P.columns} == want
    assert free_power(R, 2, 2).columns == rees_power(ModuleSpec.free(R, 2), 2).columns


def test_power_bounds():
    with pytest.raises(BoundExceeded) as exc:
        check_power_bounds(3, 22, 80730)
    assert exc.value.limit == 60000
    with warnings.catch_warnings(record=True) as caught:
        warnings.simplefilter("always")
        check_power_bounds(2, 40, 100)
    assert caught
    with pytest.raises(ValueError):
        rees_power(mm(), 0)


def test_spread_needs_graded_input():
    E = ModuleSpec.from_strings(S, [["x + 1"]])
    with pytest.raises(ValueError):
        analytic_spread(E)
