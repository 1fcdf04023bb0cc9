"""Presentations, Fitting ideals, rank, minimal number of generators, and
the ideal-module tests for an embedded module ``E`` in ``G = R^e``.

Heights stand in for grades throughout: over a polynomial ring the two agree.
The local ring is the graded ring localized at the ideal of all variables.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import Sequence

from .groebner import (
    Ideal,
    NotGradedError,
    Submodule,
    dimension,
    height,
    minimal_generators,
    syzygies,
    vector_degree,
)
from .matrices import generic_rank, minors_generators
from .poly import Polynomial, PolyRing


@dataclass(frozen=True, eq=False)
class ModuleSpec:
    """``E`` generated by the columns of an ``e x n`` matrix inside ``R^e``."""

    ring: PolyRing
    ambient_rank: int
    columns: tuple[tuple[Polynomial, ...], ...]

    def __post_init__(self):
        if self.ambient_rank < 1:
            raise ValueError("ambient rank must be at least 1")
        cols = tuple(tuple(self.ring(c) if not isinstance(c, Polynomial) else c for c in col) for col in self.columns)
        if not cols:
            raise ValueError("a module needs at least one generator column")
        for col in cols:
            if len(col) != self.ambient_rank:
                raise ValueError(
                    f"generator column of length {len(col)} in ambient rank {self.ambient_rank}"
                )
            for c in col:
                if c.ring != self.ring:
                    raise ValueError("generator entries live in a different ring")
        object.__setattr__(self, "columns", cols)

    @classmethod
    def from_strings(cls, ring: PolyRing, columns: Sequence[Sequence[str]]) -> "ModuleSpec":
        cols = [tuple(ring(s) for s in col) for col in columns]
        if not cols:
            raise ValueError("a module needs at least one generator column")
        return cls(ring, len(cols[0]), tuple(cols))

    @classmethod
    def direct_sum(cls, ring: PolyRing, ideals: Sequence[Sequence]) -> "ModuleSpec":
        """``I_1 + ... + I_e`` (external direct sum) inside ``R^e``."""
        e = len(ideals)
        cols = []
        for i, gens in enumerate(ideals):
            for g in gens:
                g = ring(g)
                cols.append(tuple(g if k == i else ring.zero() for k in range(e)))
        return cls(ring, e, tuple(cols))

    @classmethod
    def free(cls, ring: PolyRing, e: int) -> "ModuleSpec":
        return cls(ring, e, tuple(tuple(ring.one() if i == j else ring.zero() for i in range(e)) for j in range(e)))

    @property
    def ngens(self) -> int:
        return len(self.columns)

    @property
    def nvars(self) -> int:
        return self.ring.nvars

    @cached_property
    def is_graded(self) -> bool:
        """Every nonzero column is homogeneous (ambient basis in degree 0)."""
        return all(
            vector_degree(c) is not None for c in self.columns if any(not a.is_zero() for a in c)
        )

    def require_graded(self) -> None:
        if not self.is_graded:
            raise NotGradedError("this operation needs a homogeneous generator matrix")

    def submodule(self) -> Submodule:
        return self._submodule

    @cached_property
    def _submodule(self) -> Submodule:
        return Submodule(self.ring, self.ambient_rank, self.columns)

    @cached_property
    def minimal_columns(self) -> tuple[tuple[Polynomial, ...], ...]:
        """A minimal generating subset (graded input); the nonzero columns otherwise."""
        if self.is_graded:
            keep = minimal_generators(self.ring, self.ambient_rank, self.columns)
            return tuple(self.columns[i] for i in keep)
        return tuple(c for c in self.columns if any(not a.is_zero() for a in c))

    def minimalized(self) -> "ModuleSpec":
        cols = self.minimal_columns or (tuple(self.ring.zero() for _ in range(self.ambient_rank)),)
        return ModuleSpec(self.ring, self.ambient_rank, cols)

    @cached_property
    def presentation(self) -> list[tuple[Polynomial, ...]]:
        """Columns of ``phi`` with ``R^m -phi-> R^n -> E -> 0``, ``n = len(minimal_columns)``."""
        gens = self.minimal_columns
        if not gens:
            return []
        syz = [s for s in syzygies(gens, self.ring) if any(not c.is_zero() for c in s)]
        if syz and self.is_graded:
            shifts = [vector_degree(g) for g in gens]
            keep = minimal_generators(self.ring, len(gens), syz, shifts)
            syz = [syz[i] for i in keep]
        return syz

    @cached_property
    def _fitting(self) -> dict:
        return {}

    def __repr__(self):
        return f"ModuleSpec(ambient_rank={self.ambient_rank}, ngens={self.ngens}, ring={self.ring})"


def fitting_ideal(E: ModuleSpec, i: int) -> Ideal:
    """``F_i(E) = I_{n-i}(phi)`` from a presentation of ``E``."""
    if i < 0:
        raise ValueError("Fitting index must be nonnegative")
    cache = E._fitting
    if i not in cache:
        n = len(E.minimal_columns)
        ring = E.ring
        if i >= n:
            cache[i] = Ideal(ring, [ring.one()])
        else:
            phi = E.presentation
            cache[i] = Ideal(ring, minors_generators(ring, phi, n, n - i))
    return cache[i]


def rank(E: ModuleSpec) -> int:
    """Generic rank of the generator matrix (largest nonvanishing minor size)."""
    return generic_rank(E.ring, E.columns, E.ambient_rank)


def mu_local(E: ModuleSpec) -> int:
    """Minimal number of generators over the graded local ring."""
    E.require_graded()
    return len(E.minimal_columns)


def mu_at_prime(E: ModuleSpec, p: Ideal) -> int:
    """``mu(E_p)``: least ``n`` with ``F_n(E)`` not inside the (asserted) prime ``p``."""
    if p.is_unit():
        raise ValueError("the prime ideal must be proper")
    n = rank(E)
    limit = len(E.minimal_columns)
    while n <= limit:
        if not p.contains_ideal(fitting_ideal(E, n)):
            return n
        n += 1
    raise RuntimeError("inconsistent Fitting chain")  # pragma: no cover


def quotient_fitting_ideal(E: ModuleSpec) -> Ideal:
    """``F_0(G/E) = I_e(psi)``, read off the generator matrix itself."""
    return Ideal(E.ring, minors_generators(E.ring, E.columns, E.ambient_rank, E.ambient_rank))


def grade_quotient(E: ModuleSpec) -> float:
    """Grade of ``G/E`` as ``ht I_e(psi)``; ``inf`` when ``E = G``."""
    return height(quotient_fitting_ideal(E))


def is_ideal_module(E: ModuleSpec) -> bool:
    """Embedded test ``grade G/E >= 2``."""
    return grade_quotient(E) >= 2


def is_free_on_punctured_spectrum(E: ModuleSpec) -> bool:
    """``F_e(E)`` primary to the ideal of the variables (or the unit ideal)."""
    F = fitting_ideal(E, rank(E))
    return F.is_unit() or dimension(F) == 0


def dim_quotient(E: ModuleSpec) -> int:
    """``dim G/E = dim R/F_0(G/E)``; -1 when ``E = G``."""
    return dimension(quotient_fitting_ideal(E))


def is_free(E: ModuleSpec) -> bool:
    """Free over the local ring, i.e. ``F_e(E) = R``."""
    return fitting_ideal(E, rank(E)).is_unit()


__all__ = [
    "ModuleSpec",
    "fitting_ideal",
    "rank",
    "mu_local",
    "mu_at_prime",
    "quotient_fitting_ideal",
    "grade_quotient",
    "is_ideal_module",
    "is_free_on_punctured_spectrum",
    "dim_quotient",
    "is_free",
]
