"""Exact linear algebra on graded components of submodules of ``R^e``.

For homogeneous generators, ``v`` of degree ``D`` lies in ``<g_1..g_s>`` iff
it lies in the k-span of ``m g_j`` with ``deg m = D - deg g_j``.  This avoids
Groebner bases when only graded containment is needed.
"""

from __future__ import annotations

from fractions import Fraction
from itertools import combinations_with_replacement
from math import gcd
from typing import Sequence

from .groebner import vector_degree
from .poly import Field, Polynomial


def _key(k):
    # position first (lower position ranks higher), then exponent
    pos, e = k
    return (-pos, e)


class Echelon:
    """Rows over a field with distinct leading keys (sparse dicts).

    Over Q the rows are kept as primitive integer vectors and reduced
    fraction-free, which is far cheaper than ``Fraction`` arithmetic.
    """

    def __init__(self, field: Field):
        self.field = field
        self.p = field.p
        self.pivots: dict = {}

    @staticmethod
    def _lead(row: dict):
        return max(row, key=_key)

    def _normalize(self, row: dict) -> dict:
        if self.p:
            return {k: v % self.p for k, v in row.items() if v % self.p}
        den = 1
        for v in row.values():
            den = den * v.denominator // gcd(den, v.denominator) if isinstance(v, Fraction) else den
        out = {k: int(v * den) for k, v in row.items() if v}
        return _primitive(out)

    def _reduce_normalized(self, row: dict) -> dict:
        p = self.p
        while row:
            k = self._lead(row)
            piv = self.pivots.get(k)
            if piv is None:
                return row
            c = row[k]
            if p:
                for kk, a in piv.items():
                    v = (row.get(kk, 0) - c * a) % p
                    if v:
                        row[kk] = v
                    else:
                        del row[kk]
            else:
                a0 = piv[k]
                g = gcd(a0, c)
                mr, mp = a0 // g, c // g
                new = {kk: v * mr for kk, v in row.items()}
                for kk, a in piv.items():
                    v = new.get(kk, 0) - mp * a
                    if v:
                        new[kk] = v
                    else:
                        new.pop(kk, None)
                row = _primitive(new)
        return row

    def reduce(self, row: dict) -> dict:
        return self._reduce_normalized(self._normalize(row))

    def add(self, row: dict) -> bool:
        """Insert ``row``; False when it was already in the span."""
        r = self.reduce(row)
        if not r:
            return False
        k = self._lead(r)
        if self.p:
            inv = pow(r[k], -1, self.p)
            r = {kk: a * inv % self.p for kk, a in r.items()}
        elif r[k] < 0:
            r = {kk: -a for kk, a in r.items()}
        self.pivots[k] = r
        return True

    def contains(self, row: dict) -> bool:
        return not self.reduce(row)

    @property
    def rank(self) -> int:
        return len(self.pivots)


def _primitive(row: dict) -> dict:
    g = 0
    for v in row.values():
        g = gcd(g, v)
        if g == 1:
            return row
    if g > 1:
        return {k: v // g for k, v in row.items()}
    return row


def _vec_row(v: Sequence[Polynomial]) -> dict:
    return {(i, e): c for i, f in enumerate(v) for e, c in f.terms.items()}


def _shifted_row(v: Sequence[Polynomial], m: tuple) -> dict:
    return {(i, tuple(a + b for a, b in zip(e, m))): c for i, f in enumerate(v) for e, c in f.terms.items()}


def _monomials(nvars: int, d: int):
    for combo in combinations_with_replacement(range(nvars), d):
        e = [0] * nvars
        for i in combo:
            e[i] += 1
        yield tuple(e)


def graded_contains(
    field: Field,
    nvars: int,
    big: Sequence[Sequence[Polynomial]],
    small: Sequence[Sequence[Polynomial]],
) -> bool:
    """``<small> <= <big>`` for homogeneous vectors (basis in degree 0).

    Raises ValueError when a nonzero vector is not homogeneous.
    """
    def degs(vs):
        out = []
        for v in vs:
            if all(c.is_zero() for c in v):
                continue
            d = vector_degree(v)
            if d is None:
                raise ValueError("graded containment needs homogeneous vectors")
            out.append((d, v))
        return out

    B = degs(big)
    S = degs(small)
    by_degree: dict[int, list] = {}
    for d, v in S:
        by_degree.setdefault(d, []).append(v)
    for D in sorted(by_degree):
        ech = Echelon(field)
        for d, g in B:
            if d > D:
                continue
            for m in _monomials(nvars, D - d):
                ech.add(_shifted_row(g, m))
        for v in by_degree[D]:
            if not ech.contains(_vec_row(v)):
                return False
    return True


def express(field: Field, gens: Sequence[Sequence[Polynomial]], v: Sequence[Polynomial]) -> list | None:
    """Scalars ``c`` with ``v = sum c_j gens_j``, or None if there are none."""
    keys = sorted({k for g in list(gens) + [v] for k in _vec_row(g)}, key=_key)
    n = len(gens)
    rows = []
    for k in keys:
        row = [field(_vec_row(g).get(k, 0)) for g in gens]
        row.append(field(_vec_row(v).get(k, 0)))
        rows.append(row)
    piv_cols = []
    r = 0
    for c in range(n):
        piv = next((i for i in range(r, len(rows)) if rows[i][c]), None)
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        inv = field.inv(rows[r][c])
        rows[r] = [field(a * inv) for a in rows[r]]
        for i in range(len(rows)):
            if i != r and rows[i][c]:
                f = rows[i][c]
                rows[i] = [field(a - f * b) for a, b in zip(rows[i], rows[r])]
        piv_cols.append(c)
        r += 1
    if any(row[n] for row in rows[r:]):
        return None
    sol = [field(0)] * n
    for i, c in enumerate(piv_cols):
        sol[c] = rows[i][n]
    return sol
