"""Polynomial matrices stored as lists of columns: minors and generic rank."""

from __future__ import annotations

import random
from itertools import combinations
from typing import Sequence

from .poly import Polynomial, PolyRing, exact_div

Matrix = Sequence[Sequence[Polynomial]]  # list of columns


class Minors:
    """Memoized Laplace expansion over (row subset, column subset)."""

    def __init__(self, ring: PolyRing, columns: Matrix, nrows: int):
        self.ring = ring
        self.cols = [tuple(c) for c in columns]
        self.nrows = nrows
        self._memo: dict = {}

    def det(self, rows: tuple[int, ...], cols: tuple[int, ...]) -> Polynomial:
        if not rows:
            return self.ring.one()
        key = (rows, cols)
        hit = self._memo.get(key)
        if hit is not None:
            return hit
        c0 = self.cols[cols[0]]
        rest = cols[1:]
        total = self.ring.zero()
        for k, r in enumerate(rows):
            a = c0[r]
            if a.is_zero():
                continue
            sub = self.det(rows[:k] + rows[k + 1:], rest)
            if sub.is_zero():
                continue
            term = a * sub
            total = total - term if k % 2 else total + term
        self._memo[key] = total
        return total

    def minors(self, k: int) -> list[Polynomial]:
        """All nonzero ``k x k`` minors, deduplicated up to scalars."""
        if k <= 0:
            return [self.ring.one()]
        ncols = len(self.cols)
        if k > min(self.nrows, ncols):
            return []
        live_rows = [r for r in range(self.nrows) if any(not c[r].is_zero() for c in self.cols)]
        live_cols = [j for j in range(ncols) if any(not a.is_zero() for a in self.cols[j])]
        seen = set()
        out = []
        for rows in combinations(live_rows, k):
            for cols in combinations(live_cols, k):
                d = self.det(rows, cols)
                if d.is_zero():
                    continue
                m = d.monic()
                if m not in seen:
                    seen.add(m)
                    out.append(m)
        return out


def determinant(ring: PolyRing, columns: Matrix) -> Polynomial:
    n = len(columns)
    if any(len(c) != n for c in columns):
        raise ValueError("determinant of a non-square matrix")
    return Minors(ring, columns, n).det(tuple(range(n)), tuple(range(n)))


def minors_generators(ring: PolyRing, columns: Matrix, nrows: int, k: int) -> list[Polynomial]:
    return Minors(ring, columns, nrows).minors(k)


def _numeric_rank(columns, nrows, field, point) -> int:
    """Rank of the matrix evaluated at ``point``, by Gaussian elimination."""
    p = field.p
    rows = [[columns[j][i].evaluate(point) for j in range(len(columns))] for i in range(nrows)]
    rank = 0
    ncols = len(columns)
    for c in range(ncols):
        piv = next((r for r in range(rank, nrows) if rows[r][c]), None)
        if piv is None:
            continue
        rows[rank], rows[piv] = rows[piv], rows[rank]
        inv = field.inv(rows[rank][c])
        for r in range(nrows):
            if r != rank and rows[r][c]:
                f = rows[r][c] * inv
                rows[r] = [(a - f * b) % p if p else a - f * b for a, b in zip(rows[r], rows[rank])]
        rank += 1
        if rank == nrows:
            break
    return rank


def bareiss_rank(ring: PolyRing, columns: Matrix, nrows: int) -> int:
    """Exact rank over the fraction field by fraction-free elimination."""
    m = [[columns[j][i] for j in range(len(columns))] for i in range(nrows)]
    ncols = len(columns)
    rank = 0
    prev = ring.one()
    used_cols = set()
    while rank < nrows:
        piv = None
        for r in range(rank, nrows):
            for c in range(ncols):
                if c not in used_cols and not m[r][c].is_zero():
                    piv = (r, c)
                    break
            if piv:
                break
        if piv is None:
            break
        r, c = piv
        m[rank], m[r] = m[r], m[rank]
        pv = m[rank][c]
        for i in range(rank + 1, nrows):
            for j in range(ncols):
                if j in used_cols or j == c:
                    continue
                m[i][j] = exact_div(pv * m[i][j] - m[i][c] * m[rank][j], prev)
            m[i][c] = ring.zero()
        used_cols.add(c)
        prev = pv
        rank += 1
    return rank


def generic_rank(ring: PolyRing, columns: Matrix, nrows: int, seed: int = 0) -> int:
    """Largest ``k`` with a nonzero ``k``-minor.

    A rank found at a random rational point is a certified lower bound; when
    it is not already the maximum possible the exact elimination decides.
    """
    columns = [c for c in columns if any(not a.is_zero() for a in c)]
    if not columns:
        return 0
    cap = min(nrows, len(columns))
    rng = random.Random(seed)
    point = {v: rng.randint(-97, 97) for v in ring.variables}
    lower = _numeric_rank(columns, nrows, ring.field, point)
    if lower == cap:
        return lower
    return bareiss_rank(ring, columns, nrows)
