"""Sparse multivariate polynomials with exact coefficients.

A polynomial is a mapping ``exponent tuple -> coefficient`` with no zero
coefficients stored.  Coefficients live in :class:`Field`, either the
rationals (``fractions.Fraction``) or a prime field (``int`` in ``[0, p)``).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Mapping, Sequence, Union

Exponents = tuple[int, ...]
Scalar = Union[int, Fraction]


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    f = 3
    while f * f <= n:
        if n % f == 0:
            return False
        f += 2
    return True


@dataclass(frozen=True)
class Field:
    """Coefficient field: ``Field()`` is Q, ``Field(p)`` is GF(p)."""

    p: int = 0

    def __post_init__(self):
        if self.p and (not _is_prime(self.p) or self.p >= 2**31):
            raise ValueError(f"characteristic must be a prime below 2^31, got {self.p}")

    @property
    def is_rational(self) -> bool:
        return self.p == 0

    def __call__(self, value: Scalar) -> Scalar:
        if self.p == 0:
            return Fraction(value)
        if isinstance(value, Fraction):
            return value.numerator * pow(value.denominator, -1, self.p) % self.p
        return int(value) % self.p

    def inv(self, a: Scalar) -> Scalar:
        if not a:
            raise ZeroDivisionError("inverse of zero")
        if self.p == 0:
            return 1 / a
        return pow(a, -1, self.p)

    def to_json(self):
        return "Q" if self.p == 0 else {"Fp": self.p}

    def __str__(self):
        return "QQ" if self.p == 0 else f"GF({self.p})"


QQ = Field()


# --------------------------------------------------------------------------
# monomial orders


def grevlex_key(e: Exponents):
    return (sum(e), tuple(-a for a in reversed(e)))


def lex_key(e: Exponents):
    return e


@dataclass(frozen=True)
class MonomialOrder:
    """Monomial order on exponent tuples.

    ``kind`` is ``"grevlex"``, ``"lex"`` or ``"block"``.  A block order
    compares the variables flagged in ``block`` first (grevlex), then the
    remaining ones (grevlex); it eliminates the flagged variables.
    """

    kind: str = "grevlex"
    block: tuple[bool, ...] = ()

    def __post_init__(self):
        if self.kind not in ("grevlex", "lex", "block"):
            raise ValueError(f"unknown monomial order {self.kind!r}")

    @classmethod
    def elimination(cls, nvars: int, eliminate: Iterable[int]) -> "MonomialOrder":
        s = set(eliminate)
        return cls("block", tuple(i in s for i in range(nvars)))

    @classmethod
    def split(cls, nvars: int, k: int) -> "MonomialOrder":
        """Two-block order eliminating the first ``k`` variables."""
        return cls.elimination(nvars, range(k))

    def key(self, e: Exponents):
        return _order_key(self, e)


@lru_cache(maxsize=None)
def _block_parts(block: tuple[bool, ...]):
    return (
        tuple(i for i, b in enumerate(block) if b),
        tuple(i for i, b in enumerate(block) if not b),
    )


@lru_cache(maxsize=1 << 20)
def _order_key(order: MonomialOrder, e: Exponents):
    if order.kind == "grevlex":
        return grevlex_key(e)
    if order.kind == "lex":
        return e
    first, rest = _block_parts(order.block)
    return (grevlex_key(tuple(e[i] for i in first)), grevlex_key(tuple(e[i] for i in rest)))


GREVLEX = MonomialOrder()


@dataclass(frozen=True)
class ModuleOrder:
    """Order on module terms ``(position, exponents)``.

    ``"top"`` compares terms first and positions second; ``"pot"`` the
    reverse.  Lower positions are larger.  ``eliminate_below`` > 0 makes
    every term in a position below that index larger than any term in the
    remaining positions (used to read off syzygies).
    """

    monomial: MonomialOrder = GREVLEX
    kind: str = "top"
    eliminate_below: int = 0

    def key(self, term):
        return _module_key(self, term)


@lru_cache(maxsize=1 << 20)
def _module_key(order: ModuleOrder, term):
    pos, e = term
    mk = order.monomial.key(e)
    base = (mk, -pos) if order.kind == "top" else (-pos, mk)
    if order.eliminate_below:
        return (pos < order.eliminate_below,) + base
    return base


# --------------------------------------------------------------------------
# rings and polynomials


@dataclass(frozen=True)
class PolyRing:
    variables: tuple[str, ...]
    field: Field = QQ

    def __post_init__(self):
        object.__setattr__(self, "variables", tuple(self.variables))
        if not self.variables:
            raise ValueError("a polynomial ring needs at least one variable")
        if len(set(self.variables)) != len(self.variables):
            raise ValueError(f"duplicate variable names in {self.variables}")

    @property
    def nvars(self) -> int:
        return len(self.variables)

    def index(self, name: str) -> int:
        try:
            return self.variables.index(name)
        except ValueError:
            raise KeyError(f"unknown variable {name!r}") from None

    def gens(self) -> list["Polynomial"]:
        return [self.var(v) for v in self.variables]

    def var(self, name: str) -> "Polynomial":
        i = self.index(name)
        e = tuple(1 if j == i else 0 for j in range(self.nvars))
        return Polynomial(self, {e: self.field(1)})

    def zero(self) -> "Polynomial":
        return Polynomial(self, {})

    def one(self) -> "Polynomial":
        return self.const(1)

    def const(self, c: Scalar) -> "Polynomial":
        return Polynomial(self, {(0,) * self.nvars: self.field(c)})

    def monomial(self, e: Sequence[int], c: Scalar = 1) -> "Polynomial":
        return Polynomial(self, {tuple(e): self.field(c)})

    def __call__(self, value) -> "Polynomial":
        if isinstance(value, Polynomial):
            return value.to_ring(self)
        if isinstance(value, str):
            from .parse import parse_polynomial

            return parse_polynomial(value, self)
        return self.const(value)

    def extend(self, names: Sequence[str], front: bool = False) -> "PolyRing":
        names = tuple(names)
        return PolyRing(names + self.variables if front else self.variables + names, self.field)

    def fresh_names(self, stem: str, count: int) -> list[str]:
        """``count`` names ``stem1, stem2, ...`` not clashing with this ring."""
        while any(f"{stem}{i}" in self.variables for i in range(1, count + 1)):
            stem += "_"
        return [f"{stem}{i}" for i in range(1, count + 1)]

    def __str__(self):
        return f"{self.field}[{', '.join(self.variables)}]"


class Polynomial:
    """Immutable sparse polynomial."""

    __slots__ = ("ring", "terms", "_hash")

    def __init__(self, ring: PolyRing, terms: Mapping[Exponents, Scalar], _clean: bool = False):
        self.ring = ring
        if _clean:
            self.terms = dict(terms)
        else:
            f = ring.field
            self.terms = {}
            for e, c in terms.items():
                c = f(c)
                if c:
                    if len(e) != ring.nvars:
                        raise ValueError("exponent length does not match the ring")
                    self.terms[tuple(e)] = c
        self._hash = None

    # -- basic queries
    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def is_constant(self) -> bool:
        return not self.terms or (len(self.terms) == 1 and not any(next(iter(self.terms))))

    def constant_term(self) -> Scalar:
        return self.terms.get((0,) * self.ring.nvars, self.ring.field(0))

    def is_monomial(self) -> bool:
        return len(self.terms) == 1

    def degree(self) -> int:
        """Total degree; -1 for the zero polynomial."""
        return max((sum(e) for e in self.terms), default=-1)

    def is_homogeneous(self) -> bool:
        return len({sum(e) for e in self.terms}) <= 1

    def support(self) -> set[int]:
        return {i for e in self.terms for i, a in enumerate(e) if a}

    def variables(self) -> list[str]:
        return [self.ring.variables[i] for i in sorted(self.support())]

    def leading_term(self, order: MonomialOrder = GREVLEX) -> tuple[Exponents, Scalar]:
        e = max(self.terms, key=order.key)
        return e, self.terms[e]

    def sorted_terms(self, order: MonomialOrder = GREVLEX):
        return sorted(self.terms.items(), key=lambda t: order.key(t[0]), reverse=True)

    def monic(self, order: MonomialOrder = GREVLEX) -> "Polynomial":
        if not self.terms:
            return self
        _, c = self.leading_term(order)
        return self.scale(self.ring.field.inv(c))

    # -- arithmetic
    def _check(self, other) -> "Polynomial":
        if isinstance(other, Polynomial):
            if other.ring != self.ring:
                raise ValueError(f"ring mismatch: {self.ring} vs {other.ring}")
            return other
        if isinstance(other, (int, Fraction)):
            return self.ring.const(other)
        return NotImplemented

    def __add__(self, other):
        other = self._check(other)
        if other is NotImplemented:
            return other
        p = self.ring.field.p
        t = dict(self.terms)
        for e, c in other.terms.items():
            v = t.get(e, 0) + c
            if p:
                v %= p
            if v:
                t[e] = v
            else:
                t.pop(e, None)
        return Polynomial(self.ring, t, _clean=True)

    __radd__ = __add__

    def __neg__(self):
        p = self.ring.field.p
        return Polynomial(self.ring, {e: (-c % p if p else -c) for e, c in self.terms.items()}, _clean=True)

    def __sub__(self, other):
        other = self._check(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def scale(self, c: Scalar) -> "Polynomial":
        f = self.ring.field
        c = f(c)
        if not c:
            return self.ring.zero()
        p = f.p
        return Polynomial(self.ring, {e: (v * c % p if p else v * c) for e, v in self.terms.items()}, _clean=True)

    def __mul__(self, other):
        other = self._check(other)
        if other is NotImplemented:
            return other
        p = self.ring.field.p
        t: dict = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                v = t.get(e, 0) + c1 * c2
                if p:
                    v %= p
                t[e] = v
        return Polynomial(self.ring, {e: c for e, c in t.items() if c}, _clean=True)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if n < 0:
            raise ValueError("negative exponent")
        result = self.ring.one()
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = self.ring.const(other)
        if not isinstance(other, Polynomial):
            return NotImplemented
        return self.ring == other.ring and self.terms == other.terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.ring, frozenset(self.terms.items())))
        return self._hash

    # -- maps
    def substitute_zero(self, names: Iterable[str]) -> "Polynomial":
        """Image under the evaluation sending each named variable to 0."""
        idx = [self.ring.index(n) for n in names]
        return Polynomial(
            self.ring,
            {e: c for e, c in self.terms.items() if not any(e[i] for i in idx)},
            _clean=True,
        )

    def evaluate(self, point: Mapping[str, Scalar]) -> Scalar:
        """Evaluate at a full assignment of the variables."""
        vals = [self.ring.field(point[v]) for v in self.ring.variables]
        p = self.ring.field.p
        total = self.ring.field(0)
        for e, c in self.terms.items():
            v = c
            for x, a in zip(vals, e):
                if a:
                    v = v * x**a
            total += v
        return total % p if p else total

    def to_ring(self, target: PolyRing) -> "Polynomial":
        """Move into ``target``, matching variables by name."""
        if target == self.ring:
            return self
        if target.field != self.ring.field:
            raise ValueError("field mismatch")
        used = self.support()
        pos = {}
        for i in used:
            name = self.ring.variables[i]
            if name not in target.variables:
                raise ValueError(f"variable {name!r} does not exist in {target}")
            pos[i] = target.index(name)
        n = target.nvars
        out = {}
        for e, c in self.terms.items():
            ne = [0] * n
            for i in used:
                ne[pos[i]] = e[i]
            out[tuple(ne)] = c
        return Polynomial(target, out, _clean=True)

    # -- printing
    def __str__(self):
        return format_polynomial(self)

    def __repr__(self):
        return f"Polynomial({str(self)!r})"


def _format_coeff(c) -> str:
    if isinstance(c, Fraction) and c.denominator != 1:
        return f"{c.numerator}/{c.denominator}"
    return str(int(c))


def format_polynomial(f: Polynomial, order: MonomialOrder = GREVLEX) -> str:
    """Canonical string in the input grammar, terms in decreasing order."""
    if not f.terms:
        return "0"
    names = f.ring.variables
    p = f.ring.field.p
    parts = []
    for e, c in f.sorted_terms(order):
        if p and c > p // 2:
            c = c - p
        neg = c < 0
        a = -c if neg else c
        mono = "*".join(
            names[i] if k == 1 else f"{names[i]}^{k}" for i, k in enumerate(e) if k
        )
        if not mono:
            body = _format_coeff(a)
        elif a == 1:
            body = mono
        else:
            body = f"{_format_coeff(a)}*{mono}"
        parts.append(("-" if neg else "+", body))
    sign, body = parts[0]
    out = ("-" if sign == "-" else "") + body
    for sign, body in parts[1:]:
        out += f" {sign} {body}"
    return out


def add(f: Polynomial, g: Polynomial) -> Polynomial:
    return f + g


def mul(f: Polynomial, g: Polynomial) -> Polynomial:
    return f * g


def substitute_zero(f: Polynomial, names: Iterable[str]) -> Polynomial:
    return f.substitute_zero(names)


def exact_div(f: Polynomial, g: Polynomial) -> Polynomial:
    """Quotient ``f / g``; raises ``ArithmeticError`` if ``g`` does not divide ``f``."""
    if not g.terms:
        raise ZeroDivisionError("division by the zero polynomial")
    field = f.ring.field
    p = field.p
    ge, gc = g.leading_term()
    ginv = field.inv(gc)
    rem = dict(f.terms)
    quo = {}
    while rem:
        e = max(rem, key=grevlex_key)
        if any(a < b for a, b in zip(e, ge)):
            raise ArithmeticError("inexact polynomial division")
        m = tuple(a - b for a, b in zip(e, ge))
        c = rem[e] * ginv
        if p:
            c %= p
        quo[m] = c
        for e2, c2 in g.terms.items():
            t = tuple(a + b for a, b in zip(e2, m))
            v = rem.get(t, 0) - c * c2
            if p:
                v %= p
            if v:
                rem[t] = v
            else:
                rem.pop(t, None)
    return Polynomial(f.ring, quo, _clean=True)
