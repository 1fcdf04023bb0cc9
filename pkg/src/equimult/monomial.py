"""Combinatorial shortcuts for monomial ideals."""

from __future__ import annotations

from itertools import combinations

from .groebner import Ideal, dimension


def is_monomial(I: Ideal) -> bool:
    """True when the reduced Groebner basis consists of monomials."""
    return all(g.is_monomial() for g in I.groebner())


def _supports(I: Ideal) -> list[int]:
    if not is_monomial(I):
        raise ValueError("minimal primes are only computed for monomial ideals")
    return [sum(1 << i for i in g.support()) for g in I.groebner()]


def minimal_vertex_covers(masks: list[int], nvars: int) -> list[int]:
    """All inclusion-minimal variable sets meeting every support in ``masks``."""
    covers: list[int] = []
    for size in range(nvars + 1):
        for combo in combinations(range(nvars), size):
            s = sum(1 << i for i in combo)
            if any(c & s == c for c in covers):
                continue
            if all(m & s for m in masks):
                covers.append(s)
    return covers


def minimal_primes_monomial(I: Ideal) -> list[Ideal]:
    """Minimal primes of a monomial ideal, each generated by variables.

    The unit ideal has none; the zero ideal has the single prime ``(0)``.
    """
    masks = _supports(I)
    if any(m == 0 for m in masks):
        return []
    ring = I.ring
    covers = minimal_vertex_covers(masks, ring.nvars)
    covers.sort(key=lambda s: (bin(s).count("1"), [-(s >> i & 1) for i in range(ring.nvars)]))
    return [Ideal(ring, [ring.gens()[i] for i in range(ring.nvars) if s >> i & 1]) for s in covers]


def is_m_primary(I: Ideal) -> bool:
    """``dim R/I = 0`` (primary to the ideal of all variables)."""
    return dimension(I) == 0
