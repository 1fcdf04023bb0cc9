"""Buchberger's algorithm for ideals and submodules of free modules.

Internally an element of ``R^s`` is a dict ``{(position, exponents): coeff}``;
an ideal is the case ``s = 1``.  Pair handling follows Gebauer-Moeller
(the product criterion is used for ideals only), pairs are selected by
degree of the lcm and then by the term order, and every tie is broken by
creation order, so results are reproducible.
"""

from __future__ import annotations

import heapq
import math
from itertools import combinations
from operator import add, sub
from typing import Iterable, Sequence

from .poly import GREVLEX, Field, ModuleOrder, MonomialOrder, Polynomial, PolyRing

Vector = tuple  # tuple[Polynomial, ...]

TOP = ModuleOrder(GREVLEX, "top")
POT = ModuleOrder(GREVLEX, "pot")


class RankMismatchError(ValueError):
    pass


class NotGradedError(ValueError):
    """Raised by operations that need homogeneous input."""


# --------------------------------------------------------------------------
# raw layer


def _divides(a, b) -> bool:
    return a[0] == b[0] and all(x <= y for x, y in zip(a[1], b[1]))


def _axpy(f: dict, c, shift, g: dict, p: int) -> None:
    """f -= c * x^shift * g, in place."""
    for (pos, e), v in g.items():
        t = (pos, tuple(map(add, e, shift)))
        nv = f.get(t, 0) - c * v
        if p:
            nv %= p
        if nv:
            f[t] = nv
        else:
            del f[t]


def _make_monic(f: dict, key, field: Field) -> dict:
    lt = max(f, key=key)
    c = f[lt]
    if c == 1:
        return f
    inv = field.inv(c)
    p = field.p
    return {t: (v * inv % p if p else v * inv) for t, v in f.items()}


def _reduce(f: dict, basis: Sequence[dict], leads: Sequence, key, p: int) -> dict:
    """Full normal form of ``f`` modulo monic ``basis`` with lead terms ``leads``."""
    f = dict(f)
    rem = {}
    by_pos: dict = {}
    for g, lt in zip(basis, leads):
        by_pos.setdefault(lt[0], []).append((lt[1], g))
    while f:
        t = max(f, key=key)
        pos, e = t
        for le, g in by_pos.get(pos, ()):
            if all(x <= y for x, y in zip(le, e)):
                _axpy(f, f[t], tuple(map(sub, e, le)), g, p)
                break
        else:
            rem[t] = f.pop(t)
    return rem


def buchberger(gens: Iterable[dict], key, field: Field, rank1: bool) -> list[dict]:
    """Reduced Groebner basis (monic, sorted by decreasing lead term)."""
    gens = [dict(g) for g in gens if g]
    if not gens:
        return []
    p = field.p
    if all(len(g) == 1 for g in gens):
        return _monomial_basis(gens, key, field)

    G: list[dict] = []
    L: list = []
    active: list[int] = []
    live: set = set()
    heap: list = []
    seq = 0

    for g in gens:
        lt = max(g, key=key)
        heapq.heappush(heap, (sum(lt[1]), key(lt), seq, -1, g))
        seq += 1

    def lcm(a, b):
        return (a[0], tuple(map(max, a[1], b[1])))

    def update(k: int):
        nonlocal seq
        lk = L[k]
        cand = [(i, lcm(L[i], lk)) for i in active if L[i][0] == lk[0]]
        kept = []
        for idx, (i, l) in enumerate(cand):
            coprime = rank1 and not any(a and b for a, b in zip(L[i][1], lk[1]))
            if coprime:
                kept.append((i, l, True))
                continue
            if any(_divides(l2, l) for _, l2 in cand[idx + 1:]) or any(
                _divides(l2, l) for _, l2, _ in kept
            ):
                continue
            kept.append((i, l, False))
        for pair in list(live):
            i, j, l = pair
            if _divides(lk, l) and lcm(L[i], lk) != l and lcm(L[j], lk) != l:
                live.discard(pair)
        for i, l, coprime in kept:
            if not coprime:
                pair = (i, k, l)
                live.add(pair)
                heapq.heappush(heap, (sum(l[1]), key(l), seq, 0, pair))
                seq += 1
        active[:] = [i for i in active if not _divides(lk, L[i])]
        active.append(k)

    while heap:
        _, _, _, kind, item = heapq.heappop(heap)
        if kind < 0:
            h = item
        else:
            if item not in live:
                continue
            live.discard(item)
            i, j, l = item
            h = {}
            _axpy(h, -1, tuple(map(sub, l[1], L[i][1])), G[i], p)
            _axpy(h, 1, tuple(map(sub, l[1], L[j][1])), G[j], p)
        h = _reduce(h, G, L, key, p)
        if not h:
            continue
        h = _make_monic(h, key, field)
        lt = max(h, key=key)
        if rank1 and not any(lt[1]):
            return [{lt: field(1)}]
        G.append(h)
        L.append(lt)
        update(len(G) - 1)

    basis = [G[i] for i in active]
    leads = [L[i] for i in active]
    out = []
    for idx, g in enumerate(basis):
        others = basis[:idx] + basis[idx + 1:]
        olead = leads[:idx] + leads[idx + 1:]
        lt = leads[idx]
        tail = dict(g)
        c = tail.pop(lt)
        red = _reduce(tail, others, olead, key, p)
        red[lt] = c
        out.append(red)
    out.sort(key=lambda g: key(max(g, key=key)), reverse=True)
    return out


def _monomial_basis(gens, key, field) -> list[dict]:
    terms = sorted({next(iter(g)) for g in gens}, key=lambda t: (sum(t[1]), key(t)))
    kept = []
    for t in terms:
        if not any(_divides(s, t) for s in kept):
            kept.append(t)
    kept.sort(key=key, reverse=True)
    return [{t: field(1)} for t in kept]


# --------------------------------------------------------------------------
# conversions


def _poly_to_raw(f: Polynomial) -> dict:
    return {(0, e): c for e, c in f.terms.items()}


def _raw_to_poly(ring: PolyRing, g: dict) -> Polynomial:
    return Polynomial(ring, {e: c for (_, e), c in g.items()}, _clean=True)


def _vec_to_raw(v: Sequence[Polynomial]) -> dict:
    return {(i, e): c for i, f in enumerate(v) for e, c in f.terms.items()}


def _raw_to_vec(ring: PolyRing, rank: int, g: dict) -> Vector:
    comps = [dict() for _ in range(rank)]
    for (i, e), c in g.items():
        comps[i][e] = c
    return tuple(Polynomial(ring, t, _clean=True) for t in comps)


def _ideal_key(order: MonomialOrder):
    mk = order.key
    return lambda t: mk(t[1])


# --------------------------------------------------------------------------
# ideals


class Ideal:
    """Ideal given by generators, with reduced Groebner bases cached per order."""

    def __init__(self, ring: PolyRing, generators: Iterable = ()):
        self.ring = ring
        gens = []
        for g in generators:
            g = ring(g) if not isinstance(g, Polynomial) else g
            if g.ring != ring:
                raise ValueError(f"ring mismatch: {g.ring} vs {ring}")
            gens.append(g)
        self.generators: tuple[Polynomial, ...] = tuple(gens)
        self._gb: dict = {}

    def groebner(self, order: MonomialOrder = GREVLEX) -> tuple[Polynomial, ...]:
        if order not in self._gb:
            raw = buchberger(
                (_poly_to_raw(g) for g in self.generators), _ideal_key(order), self.ring.field, True
            )
            self._gb[order] = tuple(_raw_to_poly(self.ring, g) for g in raw)
        return self._gb[order]

    def normal_form(self, f: Polynomial, order: MonomialOrder = GREVLEX) -> Polynomial:
        if f.ring != self.ring:
            raise ValueError(f"ring mismatch: {f.ring} vs {self.ring}")
        key = _ideal_key(order)
        gb = [_poly_to_raw(g) for g in self.groebner(order)]
        leads = [max(g, key=key) for g in gb]
        return _raw_to_poly(self.ring, _reduce(_poly_to_raw(f), gb, leads, key, self.ring.field.p))

    def __contains__(self, f) -> bool:
        if not isinstance(f, Polynomial):
            f = self.ring(f)
        return self.normal_form(f).is_zero()

    def is_unit(self) -> bool:
        gb = self.groebner()
        return len(gb) == 1 and gb[0].is_constant() and not gb[0].is_zero()

    def is_zero(self) -> bool:
        return not self.groebner()

    def contains_ideal(self, other: "Ideal") -> bool:
        return all(g in self for g in other.generators)

    def __eq__(self, other):
        if not isinstance(other, Ideal):
            return NotImplemented
        return self.ring == other.ring and self.groebner() == other.groebner()

    def __hash__(self):
        return hash((self.ring, self.groebner()))

    def __add__(self, other: "Ideal") -> "Ideal":
        return Ideal(self.ring, self.generators + other.generators)

    def __mul__(self, other: "Ideal") -> "Ideal":
        return Ideal(self.ring, [f * g for f in self.generators for g in other.generators])

    def __repr__(self):
        return f"Ideal({[str(g) for g in self.generators]})"


def groebner(I: Ideal, order: MonomialOrder = GREVLEX) -> Ideal:
    """Ideal carrying its reduced Groebner basis (computed if needed)."""
    I.groebner(order)
    return I


def normal_form(f: Polynomial, I: Ideal, order: MonomialOrder = GREVLEX) -> Polynomial:
    return I.normal_form(f, order)


def membership(f: Polynomial, I: Ideal) -> bool:
    return I.normal_form(f).is_zero()


def elimination(I: Ideal, block: Iterable[str]) -> Ideal:
    """``I`` intersected with the subring free of the ``block`` variables."""
    idx = {I.ring.index(v) for v in block}
    order = MonomialOrder.elimination(I.ring.nvars, idx)
    kept = [g for g in I.groebner(order) if not (g.support() & idx)]
    out = Ideal(I.ring, kept)
    return out


def _lead_supports(I: Ideal) -> list[int]:
    masks = []
    for g in I.groebner():
        e, _ = g.leading_term()
        masks.append(sum(1 << i for i, a in enumerate(e) if a))
    return masks


def dimension(I: Ideal) -> int:
    """Krull dimension of ``R/I``; -1 for the unit ideal.

    Largest set of variables independent modulo the lead-term ideal.
    """
    if I.is_unit():
        return -1
    masks = _lead_supports(I)
    n = I.ring.nvars
    full = (1 << n) - 1
    for size in range(n, -1, -1):
        for combo in combinations(range(n), size):
            s = sum(1 << i for i in combo)
            outside = full & ~s
            if all(m & outside for m in masks):
                return size
    return 0  # pragma: no cover - the empty set is always independent


def height(I: Ideal) -> float:
    """``nvars - dim``; ``math.inf`` for the unit ideal."""
    d = dimension(I)
    return math.inf if d < 0 else I.ring.nvars - d


def _mdivides(a, b) -> bool:
    return all(x <= y for x, y in zip(a, b))


def hilbert_function(I: Ideal, top: int) -> list[int]:
    """``dim_k (R/I)_k`` for ``k = 0..top`` (standard monomials of the lead ideal)."""
    leads = [g.leading_term()[0] for g in I.groebner()]
    n = I.ring.nvars
    out = []
    layer = {tuple([0] * n)}
    for _ in range(top + 1):
        layer = {m for m in layer if not any(_mdivides(l, m) for l in leads)}
        out.append(len(layer))
        layer = {tuple(a + (i == j) for j, a in enumerate(m)) for m in layer for i in range(n)}
    return out


def top_degree(I: Ideal) -> int:
    """Largest ``k`` with ``(R/I)_k != 0`` for homogeneous zero-dimensional ``I``;
    -1 for the unit ideal."""
    if dimension(I) > 0:
        raise ValueError("the quotient is not finite dimensional")
    leads = [g.leading_term()[0] for g in I.groebner()]
    n = I.ring.nvars
    layer = {tuple([0] * n)}
    k = -1
    while True:
        layer = {m for m in layer if not any(_mdivides(l, m) for l in leads)}
        if not layer:
            return k
        k += 1
        layer = {tuple(a + (i == j) for j, a in enumerate(m)) for m in layer for i in range(n)}


def radical_membership(f: Polynomial, I: Ideal) -> bool:
    """``f`` in the radical of ``I``, via ``1 in I + (1 - z f)`` in ``R[z]``."""
    if f.is_zero():
        return True
    (z,) = I.ring.fresh_names("z", 1)
    big = I.ring.extend([z])
    fz = f.to_ring(big)
    gens = [g.to_ring(big) for g in I.generators] + [big.one() - big.var(z) * fz]
    return Ideal(big, gens).is_unit()


def same_radical(I: Ideal, J: Ideal) -> bool:
    return all(radical_membership(g, J) for g in I.groebner()) and all(
        radical_membership(g, I) for g in J.groebner()
    )


# --------------------------------------------------------------------------
# submodules


class Submodule:
    """Submodule of ``R^rank`` given by generator vectors."""

    def __init__(self, ring: PolyRing, rank: int, generators: Iterable[Sequence] = ()):
        self.ring = ring
        self.rank = rank
        gens = []
        for v in generators:
            v = tuple(ring(c) if not isinstance(c, Polynomial) else c for c in v)
            if len(v) != rank:
                raise RankMismatchError(f"vector of length {len(v)} in a free module of rank {rank}")
            gens.append(v)
        self.generators: tuple[Vector, ...] = tuple(gens)
        self._gb: dict = {}

    def _raw_gb(self, order: ModuleOrder) -> list[dict]:
        if order not in self._gb:
            self._gb[order] = buchberger(
                (_vec_to_raw(v) for v in self.generators), order.key, self.ring.field, self.rank == 1
            )
        return self._gb[order]

    def groebner(self, order: ModuleOrder = TOP) -> list[Vector]:
        return [_raw_to_vec(self.ring, self.rank, g) for g in self._raw_gb(order)]

    def normal_form(self, v: Sequence[Polynomial], order: ModuleOrder = TOP) -> Vector:
        if len(v) != self.rank:
            raise RankMismatchError(f"vector of length {len(v)} in a free module of rank {self.rank}")
        gb = self._raw_gb(order)
        leads = [max(g, key=order.key) for g in gb]
        r = _reduce(_vec_to_raw(v), gb, leads, order.key, self.ring.field.p)
        return _raw_to_vec(self.ring, self.rank, r)

    def __contains__(self, v) -> bool:
        return not any(self.normal_form(v))

    def contains_module(self, other: "Submodule") -> bool:
        if other.rank != self.rank:
            raise RankMismatchError("ambient ranks differ")
        return all(v in self for v in other.generators)

    def is_zero(self) -> bool:
        return not self._raw_gb(TOP)

    def __repr__(self):
        return f"Submodule(rank={self.rank}, ngens={len(self.generators)})"


def module_groebner(M: Submodule, order: ModuleOrder = TOP) -> Submodule:
    M._raw_gb(order)
    return M


def vector_membership(v: Sequence[Polynomial], M: Submodule) -> bool:
    return v in M


def submodule_equal(M: Submodule, N: Submodule) -> bool:
    if M.rank != N.rank:
        raise RankMismatchError("ambient ranks differ")
    return M.contains_module(N) and N.contains_module(M)


def syzygies(columns: Sequence[Sequence[Polynomial]], ring: PolyRing | None = None) -> list[Vector]:
    """Generators of the kernel of ``R^n -> R^s`` sending ``e_j`` to ``columns[j]``.

    GB of the graph ``(c_j, e_j)`` in ``R^(s+n)`` under an order that puts the
    first ``s`` positions above the rest; elements living in the last ``n``
    positions generate the kernel.
    """
    if not columns:
        raise ValueError("syzygies of an empty column list")
    if ring is None:
        ring = columns[0][0].ring
    s = len(columns[0])
    n = len(columns)
    one = {(0,) * ring.nvars: ring.field(1)}
    graph = []
    for j, col in enumerate(columns):
        if len(col) != s:
            raise RankMismatchError("columns of different lengths")
        raw = _vec_to_raw(col)
        for e, c in one.items():
            raw[(s + j, e)] = c
        graph.append(raw)
    order = ModuleOrder(GREVLEX, "top", eliminate_below=s)
    gb = buchberger(graph, order.key, ring.field, False)
    out = []
    for g in gb:
        if all(pos >= s for pos, _ in g):
            shifted = {(pos - s, e): c for (pos, e), c in g.items()}
            out.append(_raw_to_vec(ring, n, shifted))
    return out


def vector_degree(v: Sequence[Polynomial], shifts: Sequence[int] | None = None) -> int | None:
    """Degree of a homogeneous vector (component shifts added); ``None`` if not homogeneous
    or zero."""
    degs = set()
    for i, f in enumerate(v):
        for e in f.terms:
            degs.add(sum(e) + (shifts[i] if shifts else 0))
    if len(degs) != 1:
        return None
    return degs.pop()


def minimal_generators(
    ring: PolyRing, rank: int, vectors: Sequence[Sequence[Polynomial]], shifts: Sequence[int] | None = None
) -> list[int]:
    """Indices of a minimal generating subset of homogeneous ``vectors``.

    Generators are scanned by increasing degree and kept when they are not in
    the span of those already kept (graded Nakayama).
    """
    degs = []
    for v in vectors:
        if not any(v):
            degs.append(None)
            continue
        d = vector_degree(v, shifts)
        if d is None:
            raise NotGradedError("vector is not homogeneous")
        degs.append(d)
    order = sorted((i for i, d in enumerate(degs) if d is not None), key=lambda i: (degs[i], i))
    kept: list[int] = []
    current = Submodule(ring, rank, [])
    for i in order:
        if kept and vectors[i] in current:
            continue
        kept.append(i)
        # seed with the previous basis so the recomputation is incremental
        current = Submodule(ring, rank, current.groebner() + [tuple(vectors[i])])
    return sorted(kept)
