"""Noncommutative polynomials over a graded alphabet."""

from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from quadlie.ncpoly import Alphabet, AlphabetMismatch, NCPoly, super_commutator
from quadlie.scalars import srat

AB = Alphabet(2, 2)  # x0, x1 even; y0, y1 odd (ids 2, 3)


def gen(g):
    return NCPoly.generator(AB, g)


def test_free_product_words():
    p = gen(0) * gen(1)
    assert p.terms == {(0, 1): srat(1)}


def test_bilinearity():
    p = (gen(0) + gen(1)) * gen(0)
    assert p.terms == {(0, 0): srat(1), (1, 0): srat(1)}


def test_scalar_coefficients_multiply():
    p = gen(0).scale(srat(2, 3)) * gen(2).scale(srat(3))
    assert p.terms == {(0, 2): srat(2)}


def test_super_commutator_even_even():
    p = super_commutator((0,), (1,), AB)
    assert p.terms == {(0, 1): srat(1), (1, 0): srat(-1)}


def test_super_commutator_odd_odd():
    p = super_commutator((2,), (3,), AB)
    assert p.terms == {(2, 3): srat(1), (3, 2): srat(1)}


def test_super_commutator_odd_square():
    p = super_commutator((2,), (2,), AB)
    assert p.terms == {(2, 2): srat(2)}


def test_alphabet_mismatch_rejected():
    other = Alphabet(3, 0)
    with pytest.raises(AlphabetMismatch):
        gen(0) * NCPoly.generator(other, 0)


def test_no_zero_terms_kept():
    p = gen(0) - gen(0)
    assert p.is_zero()
    assert p.terms == {}


polys = st.lists(
    st.tuples(
        st.lists(st.integers(min_value=0, max_value=3), max_size=3),
        st.fractions(min_value=-4, max_value=4, max_denominator=4),
    ),
    max_size=4,
).map(
    lambda entries: NCPoly(
        AB,
        {
            tuple(w): srat(Fraction(c))
            for w, c in (
                (w, sum(cc for ww, cc in entries if tuple(ww) == tuple(w)))
                for w, _ in entries
            )
            if c
        },
    )
)


@given(polys, polys, polys)
@settings(max_examples=60, deadline=None)
def test_ring_axioms(a, b, c):
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c
    assert (a + b) * c == a * c + b * c
    assert a + b == b + a


@given(polys)
@settings(max_examples=40, deadline=None)
def test_degree_additive_and_units(p):
    one = NCPoly.one(AB)
    assert p * one == p
    assert one * p == p
    q = p * gen(0)
    for word in q.terms:
        assert word[-1] == 0
