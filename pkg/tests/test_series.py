"""Truncated Laurent series and additive (twisted) polynomials."""

from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from drinfan.gf import gf
from drinfan.series import (AdditiveSeries, LaurentSeries, PrecisionError,
                            lower_hull, root_valuations)


@st.composite
def series_pair(draw):
    q = draw(st.sampled_from([2, 3, 5]))
    F = gf(q)

    def mk():
        coeffs = {}
        for _ in range(draw(st.integers(0, 5))):
            e = draw(st.integers(-6, 8))
            c = draw(st.integers(1, q - 1))
            coeffs[e] = c
        return LaurentSeries(F, coeffs, prec=draw(
            st.one_of(st.none(), st.integers(9, 20))))

    return F, mk(), mk()


@given(series_pair())
@settings(max_examples=150, deadline=None)
def test_ring_laws(data):
    F, a, b = data
    assert (a + b).truncate(5) == (b + a).truncate(5)
    assert (a * b).truncate(5) == (b * a).truncate(5)
    z = a - a
    assert z.is_zero_to_precision()


@given(series_pair())
@settings(max_examples=100, deadline=None)
def test_mul_matches_naive(data):
    F, a, b = data
    prod = a * b
    naive = LaurentSeries(F, a._mul_naive(b), prod.prec)
    assert prod == naive


def test_inverse_exact_and_truncated():
    F = gf(2)
    # 1 + t
    a = LaurentSeries(F, {0: 1, 1: 1}, prec=None)
    inv = a.inverse(12)
    assert (a * inv - LaurentSeries.one(F)).is_zero_to_precision()
    # exact monomial
    m = LaurentSeries(F, {-3: 1}, prec=None)
    assert m.inverse().coeffs == {3: 1}
    # negative-valuation input
    b = LaurentSeries(F, {-2: 1, 0: 1, 3: 1}, prec=None)
    binv = b.inverse(10)
    assert (b * binv - LaurentSeries.one(F)).is_zero_to_precision()


def test_precision_error_on_ambiguous_valuation():
    F = gf(2)
    s = LaurentSeries(F, {}, prec=3)
    with pytest.raises(PrecisionError):
        s.valuation()
    with pytest.raises(PrecisionError):
        s.coeff(5)


def test_frobenius_power():
    F = gf(3)
    s = LaurentSeries(F, {1: 2, 2: 1}, prec=None)
    f = s.frobenius_power(1)
    assert f.coeffs == {3: 2 ** 3 % 3, 6: 1}
    # additivity of Frobenius: (a+b)^q = a^q + b^q
    a = LaurentSeries(F, {0: 1, 1: 2}, prec=None)
    b = LaurentSeries(F, {1: 1, 4: 2}, prec=None)
    assert (a + b).frobenius_power(1) == \
        a.frobenius_power(1) + b.frobenius_power(1)


def test_additive_compose_skew_rule():
    F = gf(2)
    t = LaurentSeries.t_power(F, 1)
    # f = t z + z^2, g = z^2: f(g(z)) = t z^2 + z^4
    f = AdditiveSeries(F, {0: t, 1: LaurentSeries.one(F)})
    g = AdditiveSeries(F, {1: LaurentSeries.one(F)})
    h = f.compose(g)
    assert h.coeff(1) == t
    assert h.coeff(2) == LaurentSeries.one(F)
    # additive polynomials: composition is linear in the left argument
    f2 = AdditiveSeries(F, {0: LaurentSeries.one(F)})
    assert (f + f2).compose(g).coeff(1) == (t + LaurentSeries.one(F))


def test_compositional_inverse():
    F = gf(2)
    t = LaurentSeries.t_power(F, 1)
    f = AdditiveSeries(F, {0: LaurentSeries.one(F), 1: t})
    g = f.compositional_inverse(4)
    comp = f.compose(g).truncate_tau(4)
    assert comp.coeff(0) == LaurentSeries.one(F)
    for i in range(1, 5):
        assert comp.coeff(i).is_zero_to_precision()


def test_lower_hull_and_root_valuations():
    # z + t z^2 + t^3 z^4 over F_2: slopes from (1,0),(2,1),(4,3)
    F = gf(2)
    f = AdditiveSeries(F, {
        0: LaurentSeries.one(F),
        1: LaurentSeries.t_power(F, 1),
        2: LaurentSeries.t_power(F, 3),
    })
    vals = root_valuations(f.newton_points())
    # hull: (1,0)-(2,1) slope 1 -> val -1 (1 root); (2,1)-(4,3) slope 1 -> same
    total = sum(m for _, m in vals)
    assert total == 4 - 1
    hull = lower_hull([(1, Fraction(0)), (2, Fraction(1)), (4, Fraction(3))])
    assert hull == [(1, Fraction(0)), (4, Fraction(3))]
