"""Rees algebra of an embedded module, its fiber cone, and Rees powers.

``R(E)`` is presented as ``k[x, y_1..y_n] / J`` where ``y_j`` maps to the
linear form ``sum_i psi_ij t_i`` in ``R[t_1..t_e]``.  ``J`` is computed by
eliminating the ``t`` variables; the fiber ideal is ``J`` with ``x = 0``.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations_with_replacement
from math import comb
from typing import Sequence

from .groebner import Ideal, dimension, elimination, syzygies
from .invariants import ModuleSpec
from .poly import Polynomial, PolyRing

# desk-scale thresholds for Rees powers
WARN_AMBIENT = 35
WARN_PRODUCTS = 4000
MAX_PRODUCTS = 60000


class BoundExceeded(RuntimeError):
    """A computation would exceed a configured size bound."""

    def __init__(self, bound: str, value, limit):
        super().__init__(f"{bound} = {value} exceeds the limit {limit}")
        self.bound = bound
        self.value = value
        self.limit = limit


@dataclass
class ReesData:
    base_ring: PolyRing
    presentation_ring: PolyRing
    fiber_ring: PolyRing
    y_names: tuple[str, ...]
    generators: tuple[tuple[Polynomial, ...], ...]
    kernel: Ideal
    fiber: Ideal
    analytic_spread: int


def _rees_generators(E: ModuleSpec):
    if E.is_graded:
        return E.minimal_columns
    return tuple(c for c in E.columns if any(not a.is_zero() for a in c))


def _kernel_cache(E: ModuleSpec) -> dict:
    return E.__dict__.setdefault("_rees_cache", {})


def rees_kernel(E: ModuleSpec) -> ReesData:
    """Presentation ideal of ``R(E)`` and its fiber ideal."""
    cache = _kernel_cache(E)
    if "data" in cache:
        return cache["data"]
    ring = E.ring
    gens = _rees_generators(E)
    n = len(gens)
    e = E.ambient_rank
    t_names = ring.fresh_names("t", e)
    y_names = ring.fresh_names("y", n)
    big = PolyRing(tuple(t_names) + ring.variables + tuple(y_names), ring.field)
    pres = PolyRing(ring.variables + tuple(y_names), ring.field)
    fiber_ring = PolyRing(tuple(y_names), ring.field) if n else None
    ts = [big.var(t) for t in t_names]
    rels = []
    for j, col in enumerate(gens):
        f = big.var(y_names[j])
        for i, a in enumerate(col):
            if not a.is_zero():
                f = f - a.to_ring(big) * ts[i]
        rels.append(f)
    J_big = elimination(Ideal(big, rels), t_names)
    J = Ideal(pres, [g.to_ring(pres) for g in J_big.generators])
    if fiber_ring is None:
        raise ValueError("the zero module has no Rees algebra to speak of")
    xs = list(ring.variables)
    fib = []
    for g in J.generators:
        h = g.substitute_zero(xs)
        if not h.is_zero():
            fib.append(h.to_ring(fiber_ring))
    F = Ideal(fiber_ring, fib)
    data = ReesData(ring, pres, fiber_ring, tuple(y_names), tuple(gens), J, F, dimension(F))
    cache["data"] = data
    return data


def analytic_spread(E: ModuleSpec) -> int:
    """Krull dimension of the fiber cone ``R(E)/m R(E)``."""
    E.require_graded()
    return rees_kernel(E).analytic_spread


def is_linear_type(E: ModuleSpec) -> bool:
    """``R(E) = Sym(E)``: the Rees ideal is generated by the linear syzygy forms."""
    data = rees_kernel(E)
    L = symmetric_ideal(E)
    return L.contains_ideal(data.kernel)


def symmetric_ideal(E: ModuleSpec) -> Ideal:
    """Ideal ``(sum_j phi_jk y_j)`` presenting ``Sym(E)`` over ``k[x, y]``."""
    data = rees_kernel(E)
    pres = data.presentation_ring
    ys = [pres.var(y) for y in data.y_names]
    forms = []
    for col in syzygies(data.generators, E.ring):
        f = pres.zero()
        for c, y in zip(col, ys):
            if not c.is_zero():
                f = f + c.to_ring(pres) * y
        if not f.is_zero():
            forms.append(f)
    return Ideal(pres, forms)


# --------------------------------------------------------------------------
# forms in t and Rees powers


@lru_cache(maxsize=None)
def t_basis(e: int, n: int) -> tuple[tuple[int, ...], ...]:
    """Exponents of degree-``n`` monomials in ``e`` variables, lex-decreasing."""
    out = []

    def rec(prefix, left, slots):
        if slots == 1:
            out.append(prefix + (left,))
            return
        for a in range(left, -1, -1):
            rec(prefix + (a,), left - a, slots - 1)

    rec((), n, e)
    return tuple(out)


def column_form(col: Sequence[Polynomial]) -> dict:
    """Linear form ``sum_i col_i t_i`` as ``{t-exponent: coefficient}``."""
    e = len(col)
    return {tuple(1 if k == i else 0 for k in range(e)): a for i, a in enumerate(col) if not a.is_zero()}


def multiply_forms(a: dict, b: dict) -> dict:
    out: dict = {}
    for ea, pa in a.items():
        for eb, pb in b.items():
            ex = tuple(x + y for x, y in zip(ea, eb))
            v = pa * pb
            out[ex] = out[ex] + v if ex in out else v
    return {k: v for k, v in out.items() if not v.is_zero()}


def form_to_vector(form: dict, ring: PolyRing, e: int, n: int) -> tuple[Polynomial, ...]:
    return tuple(form.get(b, ring.zero()) for b in t_basis(e, n))


def check_power_bounds(e: int, n: int, nproducts: int) -> None:
    amb = comb(n + e - 1, e - 1)
    if nproducts > MAX_PRODUCTS:
        raise BoundExceeded("product generators", nproducts, MAX_PRODUCTS)
    if amb > WARN_AMBIENT:
        warnings.warn(f"ambient rank {amb} of the Rees power exceeds {WARN_AMBIENT}", stacklevel=3)
    if nproducts > WARN_PRODUCTS:
        warnings.warn(f"{nproducts} product generators exceed {WARN_PRODUCTS}", stacklevel=3)


def power_forms(gens: Sequence[Sequence[Polynomial]], n: int) -> list[dict]:
    """Forms of all ``n``-fold products of the generators, in canonical order."""
    forms = [column_form(c) for c in gens]
    memo: dict = {(): None}
    out = []
    for combo in combinations_with_replacement(range(len(gens)), n):
        f = None
        for k in range(1, n + 1):
            key = combo[:k]
            if key not in memo:
                prev = memo[combo[: k - 1]]
                cur = forms[combo[k - 1]]
                memo[key] = cur if prev is None else multiply_forms(prev, cur)
        f = memo[combo]
        out.append(f)
    return out


def rees_power(E: ModuleSpec, n: int) -> ModuleSpec:
    """``E^n``: degree-``n`` part of ``R(E)`` inside ``R^binom(n+e-1, e-1)``."""
    if n <= 0:
        raise ValueError("Rees powers are defined for n >= 1")
    gens = _rees_generators(E)
    if not gens:
        raise ValueError("zero module")
    e = E.ambient_rank
    check_power_bounds(e, n, comb(len(gens) + n - 1, n))
    ring = E.ring
    cols = list(dict.fromkeys(form_to_vector(f, ring, e, n) for f in power_forms(gens, n)))
    return ModuleSpec(ring, comb(n + e - 1, e - 1), tuple(cols))


def free_power(ring: PolyRing, e: int, n: int) -> ModuleSpec:
    """``G^n`` for ``G = R^e``."""
    return rees_power(ModuleSpec.free(ring, e), n)
