"""Minimal graded free resolutions, projective dimension and graded depth.

Only homogeneous input is accepted: every column must be homogeneous once
the basis shifts of its free module are taken into account.  Depth uses the
Auslander-Buchsbaum formula ``depth M = nvars - pd M`` over the graded ring.
"""

from __future__ import annotations

import math
from collections import Counter
from dataclasses import dataclass, field
from typing import Sequence

from .groebner import NotGradedError, minimal_generators, syzygies, vector_degree
from .poly import Polynomial, PolyRing


@dataclass
class FreeResolution:
    """``... -> F_2 -d_2-> F_1 -d_1-> F_0`` resolving a graded module.

    ``maps[i]`` is ``d_{i+1}`` as a list of columns; ``shifts[i]`` are the
    degrees of the basis of ``F_i``.  For a submodule ``M`` of a free module
    ``augmentation`` holds its minimal generators (``F_0 -> M``).
    """

    ring: PolyRing
    shifts: list[list[int]]
    maps: list[list[tuple]]
    augmentation: list[tuple] | None = None
    ambient_rank: int | None = None

    @property
    def betti(self) -> list[int]:
        return [len(s) for s in self.shifts]

    @property
    def graded_betti(self) -> list[dict[int, int]]:
        return [dict(sorted(Counter(s).items())) for s in self.shifts]

    @property
    def length(self) -> int:
        nz = [i for i, s in enumerate(self.shifts) if s]
        return nz[-1] if nz else -1


def _compose(ring: PolyRing, a: Sequence[tuple], b: Sequence[tuple], rows: int) -> list[tuple]:
    """Columns of ``A * B``; ``A`` has ``rows`` rows, ``B`` has ``len(a)`` rows."""
    out = []
    for col in b:
        acc = [ring.zero()] * rows
        for j, c in enumerate(col):
            if c.is_zero():
                continue
            for i in range(rows):
                if not a[j][i].is_zero():
                    acc[i] = acc[i] + a[j][i] * c
        out.append(tuple(acc))
    return out


def check_complex(res: FreeResolution) -> bool:
    """``d_i * d_{i+1} = 0`` at every spot (and against the augmentation)."""
    chain = list(res.maps)
    if res.augmentation is not None:
        chain = [res.augmentation] + chain
        rows = [res.ambient_rank] + [len(s) for s in res.shifts]
    else:
        rows = [len(s) for s in res.shifts]
    for i in range(len(chain) - 1):
        for col in _compose(res.ring, chain[i], chain[i + 1], rows[i]):
            if any(not c.is_zero() for c in col):
                return False
    return True


def is_minimal(res: FreeResolution) -> bool:
    """Every differential entry lies in the ideal of the variables."""
    return all(c.constant_term() == 0 for m in res.maps for col in m for c in col)


def _require_graded(columns, shifts):
    for col in columns:
        if any(not c.is_zero() for c in col) and vector_degree(col, shifts) is None:
            raise NotGradedError("resolutions need homogeneous input")


def _resolve_from(ring, gens, shifts, rank, max_length):
    """Iterated minimal syzygies starting from minimal generators ``gens``."""
    gen_shifts = [vector_degree(g, shifts) for g in gens]
    all_shifts = [gen_shifts]
    maps = []
    current, cur_shifts = gens, gen_shifts
    limit = ring.nvars + 1 if max_length is None else max_length
    while current and len(maps) < limit:
        syz = [s for s in syzygies(current, ring) if any(not c.is_zero() for c in s)]
        if not syz:
            break
        keep = minimal_generators(ring, len(current), syz, cur_shifts)
        syz = [syz[i] for i in keep]
        syz_shifts = [vector_degree(s, cur_shifts) for s in syz]
        maps.append(syz)
        all_shifts.append(syz_shifts)
        current, cur_shifts = syz, syz_shifts
    return all_shifts, maps


def minimal_resolution(
    ring: PolyRing,
    rank: int,
    generators: Sequence[Sequence[Polynomial]],
    shifts: Sequence[int] | None = None,
    max_length: int | None = None,
) -> FreeResolution:
    """Minimal free resolution of the submodule of ``R^rank`` spanned by ``generators``."""
    generators = [tuple(g) for g in generators]
    _require_graded(generators, shifts)
    keep = minimal_generators(ring, rank, generators, shifts)
    gens = [generators[i] for i in keep]
    if not gens:
        return FreeResolution(ring, [[]], [], [], rank)
    all_shifts, maps = _resolve_from(ring, gens, shifts, rank, max_length)
    return FreeResolution(ring, all_shifts, maps, gens, rank)


def prune_presentation(ring: PolyRing, rank: int, columns: Sequence[Sequence[Polynomial]]):
    """Drop the free part killed by degree-0 columns of a graded presentation.

    Returns ``(rank', columns')`` with ``R^rank/<columns> = R^rank'/<columns'>``
    and no column of degree 0.
    """
    field = ring.field
    cols = [list(c) for c in columns if any(not a.is_zero() for a in c)]
    _require_graded(cols, None)
    while True:
        const = next((c for c in cols if all(a.is_constant() for a in c)), None)
        if const is None:
            break
        r = next(i for i, a in enumerate(const) if not a.is_zero())
        inv = field.inv(const[r].constant_term())
        # basis change e_r -> sum const_i e_i eliminates row r
        new_cols = []
        for c in cols:
            if c is const:
                continue
            f = c[r].scale(inv)
            nc = [c[i] - const[i].constant_term() * f if i != r else None for i in range(len(c))]
            nc = [a for i, a in enumerate(nc) if i != r]
            if any(not a.is_zero() for a in nc):
                new_cols.append(nc)
        cols = new_cols
        rank -= 1
    return rank, [tuple(c) for c in cols]


def cokernel_resolution(
    ring: PolyRing, rank: int, columns: Sequence[Sequence[Polynomial]], max_length: int | None = None
) -> FreeResolution:
    """Minimal free resolution of ``R^rank / <columns>`` (basis in degree 0)."""
    rank, cols = prune_presentation(ring, rank, columns)
    if rank == 0:
        return FreeResolution(ring, [[]], [])
    zero = [0] * rank
    if not cols:
        return FreeResolution(ring, [zero], [])
    keep = minimal_generators(ring, rank, cols, zero)
    gens = [cols[i] for i in keep]
    shifts, maps = _resolve_from(ring, gens, zero, rank, None if max_length is None else max_length - 1)
    return FreeResolution(ring, [zero] + shifts, [gens] + maps)


def projective_dimension(res: FreeResolution) -> float:
    """Length of the resolution; ``-inf`` for the zero module."""
    return res.length if res.length >= 0 else -math.inf


def depth_graded(res: FreeResolution) -> float:
    """``nvars - pd``; ``inf`` for the zero module."""
    pd = projective_dimension(res)
    return math.inf if pd == -math.inf else res.ring.nvars - pd
