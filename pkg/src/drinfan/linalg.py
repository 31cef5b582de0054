"""Exact linear algebra over the rationals and over the integers.

Rational matrices are lists of lists of fractions.Fraction.  The integer
part provides primitive vectors, Smith normal form with transformation
matrices, and saturated-lattice coordinate changes used by the cone engine.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd
from typing import Sequence

Vec = tuple[Fraction, ...]
Mat = list[list[Fraction]]

__all__ = [
    "frac_vec", "dot", "rref", "rank", "nullspace", "solve", "mat_inv",
    "mat_mul", "mat_vec", "primitive", "smith_normal_form",
    "quotient_lattice_maps", "int_kernel_basis",
]


def frac_vec(v: Sequence) -> Vec:
    return tuple(Fraction(x) for x in v)


def dot(a: Sequence, b: Sequence) -> Fraction:
    return sum((Fraction(x) * Fraction(y) for x, y in zip(a, b)), Fraction(0))


def rref(rows: Sequence[Sequence]) -> tuple[Mat, list[int]]:
    """Reduced row echelon form; returns (matrix, pivot column indices)."""
    m = [[Fraction(x) for x in row] for row in rows]
    if not m:
        return [], []
    nrows, ncols = len(m), len(m[0])
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, nrows) if m[i][c] != 0), None)
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        inv = 1 / m[r][c]
        m[r] = [x * inv for x in m[r]]
        for i in range(nrows):
            if i != r and m[i][c] != 0:
                f = m[i][c]
                m[i] = [x - f * y for x, y in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
        if r == nrows:
            break
    return m, pivots


def rank(rows: Sequence[Sequence]) -> int:
    return len(rref(rows)[1])


def nullspace(rows: Sequence[Sequence], ncols: int | None = None) -> list[Vec]:
    """Basis of {x : A x = 0} (column vectors as tuples)."""
    rows = [list(r) for r in rows]
    if not rows:
        if ncols is None:
            raise ValueError("ncols required for empty matrix")
        n = ncols
        out = []
        for i in range(n):
            e = [Fraction(0)] * n
            e[i] = Fraction(1)
            out.append(tuple(e))
        return out
    n = len(rows[0])
    red, pivots = rref(rows)
    free = [c for c in range(n) if c not in pivots]
    basis = []
    for fc in free:
        v = [Fraction(0)] * n
        v[fc] = Fraction(1)
        for r, pc in enumerate(pivots):
            v[pc] = -red[r][fc]
        basis.append(tuple(v))
    return basis


def solve(rows: Sequence[Sequence], rhs: Sequence) -> Vec | None:
    """One solution of A x = b, or None if inconsistent."""
    aug = [list(r) + [b] for r, b in zip(rows, rhs)]
    if not aug:
        return ()
    n = len(rows[0])
    red, pivots = rref(aug)
    if n in pivots:
        return None
    x = [Fraction(0)] * n
    for r, pc in enumerate(pivots):
        x[pc] = red[r][n]
    return tuple(x)


def mat_mul(a: Sequence[Sequence], b: Sequence[Sequence]) -> Mat:
    nb = len(b[0])
    return [[sum((Fraction(a[i][k]) * Fraction(b[k][j]) for k in range(len(b))),
                 Fraction(0)) for j in range(nb)] for i in range(len(a))]


def mat_vec(a: Sequence[Sequence], v: Sequence) -> Vec:
    return tuple(dot(row, v) for row in a)


def mat_inv(a: Sequence[Sequence]) -> Mat:
    n = len(a)
    aug = [[Fraction(x) for x in row] + [Fraction(1 if i == j else 0) for j in range(n)]
           for i, row in enumerate(a)]
    red, pivots = rref(aug)
    if pivots[:n] != list(range(n)):
        raise ValueError("matrix is singular")
    return [row[n:] for row in red[:n]]


def primitive(v: Sequence) -> tuple[int, ...]:
    """Scale a rational vector to a primitive integer vector (same direction)."""
    fv = [Fraction(x) for x in v]
    if all(x == 0 for x in fv):
        raise ValueError("cannot normalize the zero vector")
    den = 1
    for x in fv:
        den = den * x.denominator // gcd(den, x.denominator)
    ints = [int(x * den) for x in fv]
    g = 0
    for x in ints:
        g = gcd(g, abs(x))
    return tuple(x // g for x in ints)


def _identity_int(n: int) -> list[list[int]]:
    return [[1 if i == j else 0 for j in range(n)] for i in range(n)]


def smith_normal_form(a: Sequence[Sequence[int]]) -> tuple[list[list[int]], list[list[int]], list[list[int]]]:
    """Return (U, S, V) with U @ A @ V = S diagonal, U and V unimodular."""
    s = [list(map(int, row)) for row in a]
    m = len(s)
    n = len(s[0]) if m else 0
    U = _identity_int(m)
    V = _identity_int(n)

    def swap_rows(i, j):
        s[i], s[j] = s[j], s[i]
        U[i], U[j] = U[j], U[i]

    def swap_cols(i, j):
        for row in s:
            row[i], row[j] = row[j], row[i]
        for row in V:
            row[i], row[j] = row[j], row[i]

    def add_row(i, j, c):  # row i += c * row j
        s[i] = [x + c * y for x, y in zip(s[i], s[j])]
        U[i] = [x + c * y for x, y in zip(U[i], U[j])]

    def add_col(i, j, c):  # col i += c * col j
        for row in s:
            row[i] += c * row[j]
        for row in V:
            row[i] += c * row[j]

    def neg_row(i):
        s[i] = [-x for x in s[i]]
        U[i] = [-x for x in U[i]]

    t = 0
    while t < min(m, n):
        # find a nonzero pivot in the remaining block
        piv = None
        for i in range(t, m):
            for j in range(t, n):
                if s[i][j] != 0:
                    if piv is None or abs(s[i][j]) < abs(s[piv[0]][piv[1]]):
                        piv = (i, j)
        if piv is None:
            break
        swap_rows(t, piv[0])
        swap_cols(t, piv[1])
        while True:
            # clear column t
            done = True
            for i in range(t + 1, m):
                if s[i][t] != 0:
                    q = s[i][t] // s[t][t]
                    add_row(i, t, -q)
                    if s[i][t] != 0:
                        swap_rows(t, i)
                        done = False
            for j in range(t + 1, n):
                if s[t][j] != 0:
                    q = s[t][j] // s[t][t]
                    add_col(j, t, -q)
                    if s[t][j] != 0:
                        swap_cols(t, j)
                        done = False
            if done:
                break
        if s[t][t] < 0:
            neg_row(t)
        t += 1
    # enforce divisibility d_i | d_{i+1}
    changed = True
    while changed:
        changed = False
        for i in range(min(m, n) - 1):
            a_, b_ = s[i][i], s[i + 1][i + 1]
            if a_ and b_ and b_ % a_ != 0:
                add_col(i, i + 1, 1)
                # re-clear the 2x2 block
                while s[i + 1][i] != 0 or s[i][i + 1] != 0:
                    if s[i + 1][i] != 0:
                        q = s[i + 1][i] // s[i][i] if s[i][i] else 0
                        if s[i][i] == 0 or (q == 0 and abs(s[i + 1][i]) < abs(s[i][i])):
                            swap_rows(i, i + 1)
                            continue
                        add_row(i + 1, i, -q)
                    if s[i][i + 1] != 0:
                        q = s[i][i + 1] // s[i][i] if s[i][i] else 0
                        if s[i][i] == 0 or (q == 0 and abs(s[i][i + 1]) < abs(s[i][i])):
                            swap_cols(i, i + 1)
                            continue
                        add_col(i + 1, i, -q)
                if s[i][i] < 0:
                    neg_row(i)
                if s[i + 1][i + 1] < 0:
                    neg_row(i + 1)
                changed = True
    return U, s, V


def int_kernel_basis(a: Sequence[Sequence[int]], n: int) -> list[tuple[int, ...]]:
    """Basis of the saturated lattice {x in Z^n : A x = 0} (column kernel)."""
    rows = [list(map(int, r)) for r in a]
    if not rows:
        return [tuple(1 if i == j else 0 for j in range(n)) for i in range(n)]
    U, S, V = smith_normal_form(rows)
    r = sum(1 for i in range(min(len(rows), n)) if S[i][i] != 0)
    return [tuple(V[i][j] for i in range(n)) for j in range(r, n)]


def quotient_lattice_maps(lines: Sequence[Sequence[int]], n: int):
    """Coordinate maps for Z^n modulo the saturation of span(lines).

    Returns (k, project, lift, sat_basis): k is the rank of the quotient
    Z^(n-rank), project(x) maps an integer vector to its quotient
    coordinates, lift(c) maps quotient coordinates back to a representative
    in Z^n, and sat_basis is a Z-basis of the saturation of span(lines).
    """
    if not lines:
        def project0(x):
            return tuple(int(v) for v in x)

        def lift0(c):
            return tuple(int(v) for v in c)

        return n, project0, lift0, []
    U, S, V = smith_normal_form([list(map(int, row)) for row in lines])
    r = sum(1 for i in range(min(len(lines), n)) if S[i][i] != 0)
    # rows of W = V^{-1} form a Z-basis of Z^n whose first r rows span the
    # saturation of span(lines); quotient coords of x are the last n-r
    # entries of x @ V.
    Vmat = V

    def project(x):
        return tuple(sum(int(x[i]) * Vmat[i][j] for i in range(n)) for j in range(r, n))

    Winv_rows = mat_inv(Vmat)  # W = V^{-1}; rows of W are the adapted basis
    W_int = [[int(e) for e in row] for row in Winv_rows]

    def lift(c):
        return tuple(sum(int(c[j]) * W_int[r + j][i] for j in range(len(c)))
                     for i in range(n))

    sat_basis = [tuple(W_int[i][j] for j in range(n)) for i in range(r)]
    return n - r, project, lift, sat_basis
