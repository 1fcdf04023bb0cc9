"""Reductions ``U`` of ``E``: ``E^{r+1} = U E^r`` inside the Rees algebra.

Only ``E^{r+1} <= U E^r`` needs checking once ``U <= E``; the other
inclusion is automatic.  Graded input is compared degree by degree with
exact linear algebra; anything else goes through module Groebner bases.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from math import comb
from typing import Sequence

from .groebner import Ideal, dimension, top_degree, vector_degree
from .invariants import ModuleSpec, is_free, rank
from .linalg import express, graded_contains
from .poly import Polynomial
from .rees import (
    _rees_generators,
    analytic_spread,
    check_power_bounds,
    column_form,
    form_to_vector,
    multiply_forms,
    power_forms,
    rees_kernel,
    rees_power,
)

DEFAULT_RMAX = 10
COEFF_RANGE = 100


class _NotUpToBound:
    """No equality found up to the search bound (does not refute reduction-ness)."""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self):
        return "NotUpToBound"

    def __bool__(self):
        return False


NotUpToBound = _NotUpToBound()


class ReductionFailure(RuntimeError):
    """No verified reduction was found within the allotted trials."""


@dataclass
class ReductionCertificate:
    U: ModuleSpec
    r: int | None
    verified: bool
    search_bound: int
    reason: str = ""
    seed: int | None = None
    trial: int | None = None
    extra: dict = field(default_factory=dict)

    def to_dict(self) -> dict:
        out = {
            "verified": self.verified,
            "r": self.r,
            "search_bound": self.search_bound,
            "reason": self.reason,
            "generators": [[str(c) for c in col] for col in self.U.columns],
            "mu": len(self.U.columns),
        }
        if self.seed is not None:
            out["seed"] = self.seed
            out["trial"] = self.trial
        out.update(self.extra)
        return out


def _check_ambient(U: ModuleSpec, E: ModuleSpec) -> None:
    if U.ambient_rank != E.ambient_rank:
        raise ValueError(f"ambient ranks differ: {U.ambient_rank} vs {E.ambient_rank}")
    if U.ring != E.ring:
        raise ValueError("U and E live over different rings")


def _nonzero(cols):
    return [c for c in cols if any(not a.is_zero() for a in c)]


def product_power(U: ModuleSpec, E: ModuleSpec, r: int) -> ModuleSpec:
    """``U E^r`` as a submodule of ``R^binom(r+e, e-1)`` in the canonical basis."""
    _check_ambient(U, E)
    if r < 0:
        raise ValueError("r must be nonnegative")
    e = E.ambient_rank
    ucols = _nonzero(U.columns)
    if r == 0:
        return ModuleSpec(U.ring, e, tuple(ucols) or U.columns)
    egens = _rees_generators(E)
    check_power_bounds(e, r + 1, len(ucols) * comb(len(egens) + r - 1, r))
    wforms = power_forms(egens, r)
    cols = []
    for u in ucols:
        uf = column_form(u)
        for w in wforms:
            cols.append(form_to_vector(multiply_forms(uf, w), E.ring, e, r + 1))
    cols = list(dict.fromkeys(cols))
    if not cols:
        cols = [tuple(E.ring.zero() for _ in range(comb(r + e, e - 1)))]
    return ModuleSpec(E.ring, comb(r + e, e - 1), tuple(cols))


def _power_equal(U: ModuleSpec, E: ModuleSpec, r: int) -> bool:
    big = rees_power(E, r + 1)
    prod = product_power(U, E, r)
    if U.is_graded and E.is_graded:
        return graded_contains(E.ring.field, E.nvars, prod.columns, big.columns)
    return prod.submodule().contains_module(big.submodule())


def _fiber_prediction(U: ModuleSpec, E: ModuleSpec):
    """``r_U(E)`` read off the fiber cone, or None when not applicable.

    For ``E`` generated in one degree and ``U`` generated in that degree,
    graded Nakayama gives ``E^{n+1} = U E^n`` iff ``(F(E)/L F(E))_{n+1} = 0``,
    ``L`` the linear forms of ``U``.  Returns ``-1`` when ``F(E)/L F(E)`` is
    infinite dimensional (``U`` is not a reduction at all).
    """
    if not (U.is_graded and E.is_graded):
        return None
    gens = E.minimal_columns
    degs = {vector_degree(g) for g in gens}
    ucols = _nonzero(U.columns)
    if len(degs) != 1 or not ucols or {vector_degree(u) for u in ucols} != degs:
        return None
    data = rees_kernel(E)
    fr = data.fiber_ring
    ys = fr.gens()
    lin = []
    for u in ucols:
        c = express(E.ring.field, gens, u)
        if c is None:
            return None
        lin.append(sum((y.scale(a) for a, y in zip(c, ys) if a), fr.zero()))
    Q = data.fiber + Ideal(fr, lin)
    if dimension(Q) > 0:
        return -1
    return max(top_degree(Q), 0)


def reduction_certificate(U: ModuleSpec, E: ModuleSpec, rmax: int = DEFAULT_RMAX) -> ReductionCertificate:
    """Least ``r <= rmax`` with ``E^{r+1} = U E^r``.

    Equality is always established by comparing the two modules; the
    failure one step below and the persistence one step above are checked
    too.  For equigenerated input the fiber cone predicts ``r`` first, which
    also refutes non-reductions outright.
    """
    _check_ambient(U, E)
    if rmax < 0:
        raise ValueError("rmax must be nonnegative")
    if not E.submodule().contains_module(U.submodule()):
        return ReductionCertificate(U, None, False, rmax, "U is not contained in E")
    if rank(U) < rank(E):
        return ReductionCertificate(U, None, False, rmax, "rank U < rank E: not a reduction")
    predicted = _fiber_prediction(U, E)
    if predicted == -1:
        return ReductionCertificate(U, None, False, rmax, "not a reduction: the fiber cone modulo U is infinite")
    if predicted is not None:
        if predicted > rmax:
            return ReductionCertificate(
                U, None, False, rmax, f"not a reduction up to bound {rmax} (fiber cone predicts r = {predicted})"
            )
        r = predicted
        if not _power_equal(U, E, r) or (r > 0 and _power_equal(U, E, r - 1)):
            raise AssertionError("power comparison disagrees with the fiber cone")
        if not _power_equal(U, E, r + 1):
            raise AssertionError("reduction equality failed to persist one degree up")
        return ReductionCertificate(U, r, True, rmax, "verified")
    for r in range(rmax + 1):
        if _power_equal(U, E, r):
            if not _power_equal(U, E, r + 1):
                raise AssertionError("reduction equality failed to persist one degree up")
            return ReductionCertificate(U, r, True, rmax, "verified")
    return ReductionCertificate(U, None, False, rmax, f"not a reduction up to bound {rmax}")


def reduction_number_wrt(U: ModuleSpec, E: ModuleSpec, rmax: int = DEFAULT_RMAX):
    """``r_U(E)`` or ``NotUpToBound``."""
    cert = reduction_certificate(U, E, rmax)
    return cert.r if cert.verified else NotUpToBound


def direct_sum_reduction(a, b, e: int, alphas: Sequence) -> ModuleSpec:
    """``U = <a_1 eps_1, ..., a_e eps_e, sum b_i eps_i>`` with
    ``a_1 = a, b_1 = b`` and ``a_i = alpha_i a + b, b_i = a`` for ``i >= 2``.
    """
    if e < 2:
        raise ValueError("the construction needs e >= 2")
    if len(alphas) != e - 1:
        raise ValueError(f"expected {e - 1} scalars alpha_2..alpha_e, got {len(alphas)}")
    if isinstance(a, Polynomial):
        ring = a.ring
    elif isinstance(b, Polynomial):
        ring = b.ring
    else:
        raise TypeError("a or b must be a Polynomial")
    a, b = ring(a), ring(b)
    coerced = [ring.field(Fraction(al) if not isinstance(al, int) else al) for al in alphas]
    if len(set(coerced)) != len(coerced):
        raise ValueError("the scalars alpha_i must be pairwise distinct in the coefficient field")
    a_list = [a] + [a.scale(al) + b for al in coerced]
    b_list = [b] + [a] * (e - 1)
    zero = ring.zero()
    cols = [tuple(a_list[i] if k == i else zero for k in range(e)) for i in range(e)]
    cols.append(tuple(b_list))
    return ModuleSpec(ring, e, tuple(cols))


def _fiber_screen(E: ModuleSpec, coeffs: list[list[int]]) -> bool:
    """``F(E)/(linear forms)`` has dimension 0, i.e. the forms cut a reduction."""
    data = rees_kernel(E)
    fr = data.fiber_ring
    ys = [fr.var(y) for y in data.y_names]
    lin = []
    for row in coeffs:
        f = fr.zero()
        for c, y in zip(row, ys):
            if c:
                f = f + y.scale(fr.field(c))
        lin.append(f)
    return dimension(data.fiber + Ideal(fr, lin)) <= 0


def _combine(E: ModuleSpec, gens, coeffs) -> ModuleSpec:
    ring = E.ring
    field_ = ring.field
    cols = []
    for row in coeffs:
        col = [ring.zero()] * E.ambient_rank
        for c, g in zip(row, gens):
            if c:
                col = [x + y.scale(field_(c)) for x, y in zip(col, g)]
        cols.append(tuple(col))
    return ModuleSpec(ring, E.ambient_rank, tuple(cols))


def generic_minimal_reduction(
    E: ModuleSpec,
    target_mu: int | None = None,
    seed: int = 0,
    trials: int = 5,
    rmax: int = DEFAULT_RMAX,
) -> ReductionCertificate:
    """A reduction with ``target_mu`` generators (default ``l(E)``) from random
    integer combinations of the minimal generators, verified exactly."""
    E.require_graded()
    gens = list(E.minimal_columns)
    mu = len(gens)
    if is_free(E):
        return ReductionCertificate(E.minimalized(), 0, True, rmax, "free module: no proper reductions", seed, 0)
    ell = analytic_spread(E)
    target = ell if target_mu is None else target_mu
    if target < ell:
        raise ReductionFailure(f"no reduction has fewer than l(E) = {ell} generators")
    if target >= mu:
        cert = reduction_certificate(E.minimalized(), E, rmax)
        cert.reason = "E is a minimal reduction of itself" if target == mu else cert.reason
        cert.seed, cert.trial = seed, 0
        return cert
    rng = random.Random(seed)
    equigenerated = len({vector_degree(g) for g in gens}) == 1
    attempts = []
    for trial in range(1, trials + 1):
        coeffs = [[rng.randint(-COEFF_RANGE, COEFF_RANGE) for _ in range(mu)] for _ in range(target)]
        if equigenerated and not _fiber_screen(E, coeffs):
            attempts.append("fiber screen rejected")
            continue
        U = _combine(E, gens, coeffs)
        cert = reduction_certificate(U, E, rmax)
        if cert.verified:
            cert.seed, cert.trial = seed, trial
            cert.extra["coefficients"] = coeffs
            return cert
        attempts.append(cert.reason)
    raise ReductionFailure(
        f"no verified reduction with {target} generators after {trials} trials (seed {seed}): "
        + "; ".join(attempts)
    )


def reduction_number(E: ModuleSpec, seed: int = 0, trials: int = 5, rmax: int = DEFAULT_RMAX) -> int:
    """``r_U(E)`` for a generic minimal reduction ``U``."""
    return generic_minimal_reduction(E, None, seed, trials, rmax).r
