"""Weighted maximum norms on A^n (A = F_q[T]) and successive-minima bases.

A WeightedNorm with positive rational weights s = (s_1, ..., s_n) measures
mu(sum x_i e_i) = max_i s_i |x_i| with |x| = q^deg(x), |0| = 0.  The module
computes successive-minima bases of full A-lattices by exhaustive search
inside an exact degree bound (greedy over the lattice minus the A-span of
the vectors chosen so far, lexicographic tie-breaking), the norm profile,
and the predicate for a change of basis to preserve the successive-minima
property (degree bound on entries plus invertible tie blocks over F_q).
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .gf import GF, Poly, RatFunc, polys_of_degree_at_most

__all__ = ["WeightedNorm", "successive_minima", "norm_profile",
           "is_norm_preserving_change", "apply_change", "normalized_profile"]

Vector = tuple[Poly, ...]


@dataclass(frozen=True)
class WeightedNorm:
    field: GF
    weights: tuple[Fraction, ...]

    def __post_init__(self):
        ws = tuple(Fraction(w) for w in self.weights)
        if any(w <= 0 for w in ws):
            raise ValueError("weights must be positive")
        object.__setattr__(self, "weights", ws)

    @property
    def n(self) -> int:
        return len(self.weights)

    def norm(self, x: Sequence[Poly]) -> Fraction:
        return max((w * p.absolute_value() for w, p in zip(self.weights, x)),
                   default=Fraction(0))


def _poly_matrix_det(m: list[list[Poly]], field: GF) -> Poly:
    n = len(m)
    if n == 0:
        return Poly.one(field)
    total = Poly.zero(field)
    for perm in itertools.permutations(range(n)):
        sign = 1
        seen = list(perm)
        # compute permutation sign
        visited = [False] * n
        for i in range(n):
            if not visited[i]:
                j = i
                clen = 0
                while not visited[j]:
                    visited[j] = True
                    j = seen[j]
                    clen += 1
                if clen % 2 == 0:
                    sign = -sign
        term = Poly.one(field)
        for i in range(n):
            term = term * m[i][perm[i]]
        if sign < 0:
            term = -term
        total = total + term
    return total


def _ratfunc_solve(m: list[list[Poly]], rhs: list[Poly], field: GF
                   ) -> list[RatFunc] | None:
    """Solve M c = rhs over F_q(T); None if singular/inconsistent."""
    n = len(m)
    a = [[RatFunc.of(m[i][j]) for j in range(n)] + [RatFunc.of(rhs[i])]
         for i in range(n)]
    row = 0
    piv_cols = []
    for col in range(n):
        piv = next((i for i in range(row, n) if not a[i][col].is_zero()), None)
        if piv is None:
            continue
        a[row], a[piv] = a[piv], a[row]
        inv = a[row][col]
        a[row] = [x / inv for x in a[row]]
        for i in range(n):
            if i != row and not a[i][col].is_zero():
                f = a[i][col]
                a[i] = [x - f * y for x, y in zip(a[i], a[row])]
        piv_cols.append(col)
        row += 1
    sol = [RatFunc.zero(field)] * n
    for r, c in enumerate(piv_cols):
        sol[c] = a[r][n]
    # verify (handles singular / inconsistent systems)
    for i in range(n):
        acc = RatFunc.zero(field)
        for j in range(n):
            acc = acc + RatFunc.of(m[i][j]) * sol[j]
        if not (acc - RatFunc.of(rhs[i])).is_zero():
            return None
    return sol


def _in_A_span(vectors: list[Vector], x: Vector, field: GF) -> bool:
    """Is x in the A-span of the given vectors?"""
    if not vectors:
        return all(p.is_zero() for p in x)
    n = len(x)
    k = len(vectors)
    # solve sum_j c_j vectors[j] = x over F_q(T); pad to square with zeros
    m = [[vectors[j][i] if j < k else Poly.zero(field) for j in range(n)]
         for i in range(n)]
    sol = _ratfunc_solve(m, list(x), field)
    if sol is None:
        return False
    if any(not sol[j].is_zero() for j in range(k, n)):
        return False
    return all(sol[j].den.degree == 0 for j in range(k))


def _tie_break_key(coeffs: tuple[int, ...]) -> tuple:
    return coeffs


def successive_minima(norm: WeightedNorm, generators: Sequence[Vector],
                      search_cap: int = 200_000
                      ) -> tuple[list[Vector], list[Fraction]]:
    """Greedy successive-minima basis of the A-lattice spanned by generators.

    Each chosen vector has minimal norm among lattice vectors outside the
    A-span of the previously chosen ones; ties are broken by the
    lexicographic order of the coefficient tuple.  Exhaustive search within
    an exact degree bound derived from the generator norms.
    """
    field = norm.field
    q = field.q
    n = norm.n
    gens = [tuple(g) for g in generators]
    if len(gens) != n:
        raise ValueError("need n generators for a full lattice")
    det = _poly_matrix_det([[g[i] for g in gens] for i in range(n)], field)
    if det.is_zero():
        raise ValueError("generators are not a lattice basis")
    # any successive-minima vector has norm <= max generator norm
    bound = max(norm.norm(g) for g in gens)
    min_w = min(norm.weights)
    deg_x = 0
    while Fraction(q) ** (deg_x + 1) * min_w <= bound:
        deg_x += 1
    # coefficient degree bound via Cramer: a = adj(G) x / det
    adj_deg = 0
    for i in range(n):
        for j in range(n):
            minor = [[gens[jj][ii] for jj in range(n) if jj != j]
                     for ii in range(n) if ii != i]
            md = _poly_matrix_det(minor, field) if minor else Poly.one(field)
            if not md.is_zero():
                adj_deg = max(adj_deg, md.degree)
    deg_a = adj_deg + deg_x  # det has degree >= 0, dividing only lowers this
    count = (q ** (deg_a + 1)) ** n
    if count > search_cap:
        raise ValueError(f"search space {count} exceeds cap {search_cap}")
    coeff_space = list(polys_of_degree_at_most(field, deg_a))
    candidates = []
    for coeffs in itertools.product(coeff_space, repeat=n):
        if all(c.is_zero() for c in coeffs):
            continue
        v = tuple(
            sum((gens[j][i] * coeffs[j] for j in range(1, n)),
                gens[0][i] * coeffs[0])
            for i in range(n))
        key = tuple(itertools.chain.from_iterable(c.coeffs for c in coeffs))
        candidates.append((norm.norm(v), key, v))
    candidates.sort(key=lambda t: (t[0], t[1]))
    basis: list[Vector] = []
    values: list[Fraction] = []
    for value, _, v in candidates:
        if len(basis) == n:
            break
        if _in_A_span(basis, v, field):
            continue
        basis.append(v)
        values.append(value)
    if len(basis) != n:
        raise RuntimeError("failed to extract a full successive-minima basis")
    return basis, values


def norm_profile(norm: WeightedNorm, generators: Sequence[Vector]
                 ) -> list[Fraction]:
    return successive_minima(norm, generators)[1]


def normalized_profile(values: Sequence[Fraction]) -> tuple[Fraction, ...]:
    """Profile up to a global positive scaling (first value scaled to 1)."""
    vals = [Fraction(v) for v in values]
    if not vals or vals[0] <= 0:
        raise ValueError("profile values must be positive")
    return tuple(v / vals[0] for v in vals)


def apply_change(basis: Sequence[Vector], matrix: Sequence[Sequence[Poly]]
                 ) -> list[Vector]:
    """New basis lambda'_i = sum_j matrix[i][j] * basis[j]."""
    n = len(basis)
    out = []
    for i in range(n):
        v = tuple(
            sum((basis[j][c] * matrix[i][j] for j in range(1, n)),
                basis[0][c] * matrix[i][0])
            for c in range(len(basis[0])))
        out.append(v)
    return out


def is_norm_preserving_change(values: Sequence[Fraction],
                              matrix: Sequence[Sequence[Poly]]) -> bool:
    """Does the change of basis preserve the successive-minima property?

    values are the norms mu(lambda_j) of the old basis (weakly increasing).
    Conditions: every nonzero entry satisfies |a_ij| mu(lambda_j) <=
    mu(lambda_i) (which forces a_ij = 0 whenever mu(lambda_j) > mu(lambda_i)),
    and for each group of equal norm values the block of constant terms is
    invertible over F_q.
    """
    vals = [Fraction(v) for v in values]
    n = len(vals)
    field = matrix[0][0].field
    for i in range(n):
        for j in range(n):
            a = matrix[i][j]
            if a.is_zero():
                continue
            if a.absolute_value() * vals[j] > vals[i]:
                return False
    # tie blocks
    groups: dict[Fraction, list[int]] = {}
    for i, v in enumerate(vals):
        groups.setdefault(v, []).append(i)
    for idxs in groups.values():
        block = [[matrix[i][j].coeff(0) for j in idxs] for i in idxs]
        if _gf_matrix_singular(block, field):
            return False
    return True


def _gf_matrix_singular(m: list[list[int]], field: GF) -> bool:
    a = [row[:] for row in m]
    n = len(a)
    for col in range(n):
        piv = next((i for i in range(col, n) if a[i][col] != 0), None)
        if piv is None:
            return True
        a[col], a[piv] = a[piv], a[col]
        inv = field.inv(a[col][col])
        a[col] = [field.mul(inv, x) for x in a[col]]
        for i in range(n):
            if i != col and a[i][col] != 0:
                f = a[i][col]
                a[i] = [field.sub(x, field.mul(f, y))
                        for x, y in zip(a[i], a[col])]
    return False
