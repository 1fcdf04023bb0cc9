from __future__ import annotations

from hypothesis import given
from hypothesis import strategies as st

from equimult.groebner import Ideal, dimension
from equimult.monomial import is_m_primary, is_monomial, minimal_primes_monomial
from equimult.poly import PolyRing

from oracles import all_subsets

R = PolyRing(("a", "b", "c", "d"))
exps = st.tuples(*[st.integers(0, 2)] * 4).filter(lambda e: sum(e) > 0)


def brute_minimal_primes(gen_exps, n):
    covers = [set(s) for s in all_subsets(n) if all(any(e[i] for i in s) for e in gen_exps)]
    return sorted(sorted(c) for c in covers if not any(o < c for o in covers))


@given(st.lists(exps, min_size=1, max_size=5))
def test_minimal_primes_match_vertex_covers(gen_exps):
    I = Ideal(R, [R.monomial(e) for e in gen_exps])
    got = sorted(sorted(R.variables.index(str(g)) for g in P.generators) for P in minimal_primes_monomial(I))
    assert got == brute_minimal_primes(gen_exps, 4)


@given(st.lists(exps, min_size=1, max_size=5))
def test_dimension_is_largest_prime_complement(gen_exps):
    I = Ideal(R, [R.monomial(e) for e in gen_exps])
    primes = minimal_primes_monomial(I)
    assert dimension(I) == 4 - min(len(P.generators) for P in primes)


def test_examples():
    I = Ideal(R, [R("a*b"), R("a*c")])
    assert [set(map(str, P.generators)) for P in minimal_primes_monomial(I)] == [{"a"}, {"b", "c"}]
    assert minimal_primes_monomial(Ideal(R, [R.one()])) == []
    assert is_monomial(Ideal(R, [R("a^2*b"), R("c")]))
    assert not is_monomial(Ideal(R, [R("a + b")]))
    assert is_m_primary(Ideal(R, [R("a^2"), R("b"), R("c^3"), R("d")]))
    assert not is_m_primary(Ideal(R, [R("a"), R("b")]))
