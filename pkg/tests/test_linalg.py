"""Exact rational linear algebra and integer lattice maps."""

import random
from fractions import Fraction

from hypothesis import given, settings, strategies as st

from drinfan.linalg import (int_kernel_basis, mat_inv, mat_mul, mat_vec,
                            nullspace, primitive, rank,
                            smith_normal_form, solve)

small_int = st.integers(-6, 6)


@st.composite
def int_matrix(draw, max_n=4):
    n = draw(st.integers(1, max_n))
    m = draw(st.integers(1, max_n))
    return [[draw(small_int) for _ in range(m)] for _ in range(n)]


@given(int_matrix())
@settings(max_examples=100, deadline=None)
def test_solve_consistency(a):
    rng = random.Random(7)
    x = [Fraction(rng.randint(-5, 5)) for _ in range(len(a[0]))]
    b = mat_vec([[Fraction(v) for v in row] for row in a], x)
    sol = solve([list(map(Fraction, row)) for row in a], list(b))
    assert sol is not None
    assert list(mat_vec([[Fraction(v) for v in row] for row in a], sol)) \
        == list(b)


@given(int_matrix())
@settings(max_examples=100, deadline=None)
def test_nullspace_is_kernel(a):
    ns = nullspace([list(map(Fraction, row)) for row in a], ncols=len(a[0]))
    for v in ns:
        assert all(sum(Fraction(r[j]) * v[j] for j in range(len(v))) == 0
                   for r in a)
    assert len(ns) == len(a[0]) - rank([list(map(Fraction, r)) for r in a])


@given(int_matrix())
@settings(max_examples=80, deadline=None)
def test_smith_normal_form(a):
    U, S, V = smith_normal_form(a)
    assert mat_mul(mat_mul(U, a), V) == S
    # diagonal with divisibility
    diag = [S[i][i] for i in range(min(len(S), len(S[0])))]
    for i in range(len(S)):
        for j in range(len(S[0])):
            if i != j:
                assert S[i][j] == 0
    nz = [d for d in diag if d != 0]
    for x, y in zip(nz, nz[1:]):
        assert y % x == 0


@given(int_matrix())
@settings(max_examples=80, deadline=None)
def test_int_kernel(a):
    basis = int_kernel_basis(a, len(a[0]))
    for v in basis:
        assert all(sum(r[j] * v[j] for j in range(len(v))) == 0 for r in a)


def test_mat_inv():
    m = [[Fraction(2), Fraction(1)], [Fraction(1), Fraction(1)]]
    inv = mat_inv(m)
    assert mat_mul(m, inv) == [[Fraction(1), Fraction(0)],
                               [Fraction(0), Fraction(1)]]


def test_primitive():
    assert primitive((Fraction(2, 3), Fraction(4, 3))) == (1, 2)
    assert primitive((Fraction(0), Fraction(-2))) == (0, -1)
