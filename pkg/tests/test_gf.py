"""Finite field, polynomial, and rational-function arithmetic."""

from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from drinfan.gf import Poly, RatFunc, gf, is_prime_power, \
    polys_of_degree_at_most

FIELDS = [2, 3, 4, 5, 7, 8, 9]


@pytest.mark.parametrize("q", FIELDS)
def test_field_axioms_exhaustive(q):
    F = gf(q)
    els = list(F.elements())
    assert len(els) == q
    for a in els:
        assert F.add(a, 0) == a
        assert F.mul(a, 1) == a
        assert F.add(a, F.neg(a)) == 0
        if a != 0:
            assert F.mul(a, F.inv(a)) == 1
    # associativity / distributivity on all triples for small q
    if q <= 5:
        for a in els:
            for b in els:
                assert F.add(a, b) == F.add(b, a)
                assert F.mul(a, b) == F.mul(b, a)
                for c in els:
                    assert F.mul(a, F.add(b, c)) == \
                        F.add(F.mul(a, b), F.mul(a, c))


def test_not_prime_power():
    assert not is_prime_power(6)
    with pytest.raises(ValueError):
        gf(6)


@st.composite
def poly_pairs(draw):
    q = draw(st.sampled_from([2, 3, 4]))
    F = gf(q)
    mk = lambda: Poly.make(F, draw(st.lists(
        st.integers(0, q - 1), min_size=0, max_size=6)))
    return F, mk(), mk()


@given(poly_pairs())
@settings(max_examples=150, deadline=None)
def test_poly_divmod_roundtrip(data):
    F, a, b = data
    if b.is_zero():
        return
    quot, rem = a.divmod(b)
    assert quot * b + rem == a
    assert rem.is_zero() or rem.degree < b.degree


@given(poly_pairs())
@settings(max_examples=150, deadline=None)
def test_poly_ring_laws(data):
    F, a, b = data
    assert a + b == b + a
    assert a * b == b * a
    assert (a + b) * a == a * a + b * a
    assert a - a == Poly.zero(F)


def test_absolute_value():
    F = gf(3)
    assert Poly.zero(F).absolute_value() == 0
    assert Poly.one(F).absolute_value() == 1
    assert Poly.T(F).absolute_value() == 3
    assert (Poly.T(F) * Poly.T(F)).absolute_value() == 9


def test_polys_of_degree_at_most():
    F = gf(2)
    polys = list(polys_of_degree_at_most(F, 2))
    assert len(polys) == 8
    assert len({p.coeffs for p in polys}) == 8


@given(poly_pairs())
@settings(max_examples=100, deadline=None)
def test_ratfunc_field_laws(data):
    F, a, b = data
    ra, rb = RatFunc.of(a), RatFunc.of(b)
    assert ra + rb == rb + ra
    assert ra * rb == rb * ra
    if not rb.is_zero():
        assert (ra / rb) * rb == ra


def test_ratfunc_valuation():
    F = gf(2)
    T = Poly.T(F)
    f = RatFunc.make(T * T, T * T * T + Poly.one(F))
    assert f.valuation_at_poly(T) == 2
    assert f.absolute_value() == Fraction(1, 2)
