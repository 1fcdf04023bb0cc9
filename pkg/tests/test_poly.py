from __future__ import annotations

from fractions import Fraction

import pytest
import sympy
from hypothesis import given
from hypothesis import strategies as st

from equimult.parse import ParseError
from equimult.poly import GREVLEX, Field, MonomialOrder, PolyRing, exact_div

R = PolyRing(("x", "y", "z"))
R7 = PolyRing(("x", "y", "z"), Field(7))

exps = st.tuples(*[st.integers(0, 3)] * 3)
coeffs = st.fractions(min_value=-5, max_value=5, max_denominator=4)


@st.composite
def polys(draw, ring=R):
    terms = draw(st.dictionaries(exps, coeffs, max_size=5))
    return ring.zero() + sum((ring.monomial(e, c) for e, c in terms.items()), ring.zero())


@st.composite
def polys7(draw):
    terms = draw(st.dictionaries(exps, st.integers(0, 6), max_size=5))
    return sum((R7.monomial(e, c) for e, c in terms.items()), R7.zero())


def to_sympy(f):
    return sympy.sympify(str(f).replace("^", "**"))


@given(polys(), polys(), polys())
def test_ring_axioms(a, b, c):
    assert a + b == b + a
    assert a * b == b * a
    assert (a + b) + c == a + (b + c)
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c
    assert a - a == R.zero()
    assert a * R.one() == a


@given(polys7(), polys7())
def test_prime_field_axioms(a, b):
    assert a * b == b * a
    assert (a + b) * (a - b) == a * a - b * b
    assert a + a.scale(6) == R7.zero()  # 1 + 6 = 0 in GF(7)


@given(polys(), polys())
def test_product_agrees_with_sympy(a, b):
    assert sympy.expand(to_sympy(a * b) - to_sympy(a) * to_sympy(b)) == 0


@given(exps, exps, exps)
def test_grevlex_is_monomial_order(a, b, c):
    key = GREVLEX.key
    ab = tuple(x + y for x, y in zip(a, c))
    bb = tuple(x + y for x, y in zip(b, c))
    if key(a) < key(b):
        assert key(ab) < key(bb)
    assert key((0, 0, 0)) <= key(a)
    if a != b:
        assert key(a) != key(b)


@given(exps, exps, exps)
def test_block_order_is_monomial_order_and_eliminates(a, b, c):
    order = MonomialOrder.elimination(3, [0])
    key = order.key
    if key(a) < key(b):
        assert key(tuple(x + y for x, y in zip(a, c))) < key(tuple(x + y for x, y in zip(b, c)))
    if a[0] > b[0]:
        assert key(a) > key(b)


def test_grevlex_examples():
    key = GREVLEX.key
    # x*z < y^2 in grevlex with x > y > z
    assert key((1, 0, 1)) < key((0, 2, 0))
    assert key((2, 0, 0)) > key((1, 1, 0)) > key((0, 2, 0))


@given(polys(), polys())
def test_substitute_zero_is_homomorphism(a, b):
    names = ["x"]
    assert (a * b).substitute_zero(names) == a.substitute_zero(names) * b.substitute_zero(names)
    assert (a + b).substitute_zero(names) == a.substitute_zero(names) + b.substitute_zero(names)


@given(polys())
def test_parse_round_trip(f):
    assert R(str(f)) == f


@given(polys(), polys())
def test_exact_division(a, b):
    if b.is_zero():
        return
    assert exact_div(a * b, b) == a


def test_exact_division_rejects_remainder():
    with pytest.raises(ArithmeticError):
        exact_div(R("x + 1"), R("y"))


def test_parser_features():
    assert R("2*x^2 - 3/4*y*z + 1") == R.monomial((2, 0, 0), 2) - R.monomial((0, 1, 1), Fraction(3, 4)) + R.one()
    assert R("(x + y)^2") == R("x^2 + 2*x*y + y^2")
    assert R("-(x - y)") == R("y - x")
    assert str(R("y^2 + x*z")) == "y^2 + x*z"


@pytest.mark.parametrize("bad", ["x y", "x + ", "w", "x^", "(x", "2 3", "x/y"])
def test_parser_errors(bad):
    with pytest.raises(ParseError):
        R(bad)


def test_prime_field_validation():
    with pytest.raises(ValueError):
        Field(8)
    assert R7("8*x") == R7("x")


def test_degree_and_homogeneity():
    f = R("x^2*y + z^3")
    assert f.degree() == 3 and f.is_homogeneous()
    assert not R("x + 1").is_homogeneous()
    assert R.zero().is_zero()


def test_to_ring_moves_by_name():
    S = PolyRing(("z", "x"))
    assert R("x*z").to_ring(S) == S("z*x")
    with pytest.raises(ValueError):
        R("y").to_ring(S)
