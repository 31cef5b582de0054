"""The scalar kernel: oracle vs closed form, identities, inverses."""

import random
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from drinfan.epsilon import (delta, delta_oracle, epsilon, epsilon_closed,
                             epsilon_hat, epsilon_hat1, epsilon_hat1_inv,
                             epsilon_hat_inv, epsilon_hat_oracle,
                             epsilon_inv, epsilon_oracle)

fracs = st.fractions(min_value=Fraction(1, 8), max_value=Fraction(32),
                     max_denominator=8)


@st.composite
def kernel_args(draw, max_n=3):
    q = draw(st.sampled_from([2, 3]))
    r = draw(st.integers(1, 3))
    n = draw(st.integers(1, max_n))
    w = sorted(draw(fracs) for _ in range(n))
    x = draw(fracs)
    return q, r, tuple(w), x


def test_anchor_values():
    # one-weight value on the first band
    assert epsilon_oracle(2, 1, (Fraction(1),), Fraction(2)) == Fraction(3)
    assert epsilon(2, 1, (Fraction(1),), Fraction(2)) == Fraction(3)
    # two-weight normalization constant
    assert delta(2, 1, (Fraction(1), Fraction(2))) == Fraction(5, 7)
    assert delta_oracle(2, 1, (Fraction(1), Fraction(2))) == Fraction(5, 7)
    # negative arguments pass through
    assert epsilon(2, 1, (Fraction(1),), Fraction(-3)) == Fraction(-3)


@given(kernel_args())
@settings(max_examples=200, deadline=None)
def test_closed_equals_oracle(args):
    q, r, w, x = args
    assert epsilon_closed(q, r, w, x) == epsilon_oracle(q, r, w, x)


@given(kernel_args())
@settings(max_examples=150, deadline=None)
def test_hat_equals_oracle_hat(args):
    q, r, w, x = args
    assert epsilon_hat(q, r, w, x) == epsilon_hat_oracle(q, r, w, x)


@given(kernel_args())
@settings(max_examples=150, deadline=None)
def test_delta_equals_delta_oracle(args):
    q, r, w, _ = args
    assert delta(q, r, w) == delta_oracle(q, r, w)


@given(kernel_args())
@settings(max_examples=150, deadline=None)
def test_inverses(args):
    q, r, w, x = args
    y = epsilon_hat(q, r, w, x)
    assert epsilon_hat_inv(q, r, w, y) == x
    z = epsilon_closed(q, r, w, x)
    assert epsilon_inv(q, r, w, z) == x


def test_one_weight_band_structure():
    # piecewise-linear with slope q^h on band h
    q, r, s = 2, 1, Fraction(1)
    # band 0: x <= s: slope 1
    assert epsilon_hat1(q, r, s, Fraction(1, 2)) - \
        epsilon_hat1(q, r, s, Fraction(1, 4)) == Fraction(1, 4)
    # band 2: q^r s < x <= q^{2r} s: slope q^2
    d = epsilon_hat1(q, r, s, Fraction(4)) - epsilon_hat1(q, r, s, Fraction(3))
    assert d == 4


def test_hat1_inverse_roundtrip():
    rng = random.Random(0)
    for _ in range(100):
        q = rng.choice([2, 3])
        r = rng.randint(1, 3)
        s = Fraction(rng.randint(1, 16), rng.randint(1, 4))
        x = Fraction(rng.randint(1, 64), rng.randint(1, 4))
        y = epsilon_hat1(q, r, s, x)
        assert epsilon_hat1_inv(q, r, s, y) == x


def test_monotonicity():
    # epsilon is strictly increasing in x
    w = (Fraction(1), Fraction(2))
    vals = [epsilon(2, 1, w, Fraction(k, 4)) for k in range(1, 40)]
    assert all(a < b for a, b in zip(vals, vals[1:]))


def test_nonmonotone_weights_fall_back_to_oracle():
    w = (Fraction(3), Fraction(1))
    x = Fraction(5)
    assert epsilon(2, 1, w, x) == epsilon_oracle(2, 1, w, x)


def test_rejects_bad_args():
    with pytest.raises(ValueError):
        epsilon_oracle(1, 1, (Fraction(1),), Fraction(1))
    with pytest.raises(ValueError):
        epsilon_oracle(2, 0, (Fraction(1),), Fraction(1))
    with pytest.raises(ValueError):
        epsilon_oracle(2, 1, (Fraction(-1),), Fraction(1))
