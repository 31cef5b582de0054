"""Exact rational polyhedral cones and fans.

Cones are represented both by generators (extreme rays plus a lineality
basis) and by a halfspace description (inequalities plus equations); the
two are converted with an incremental double description method over exact
rationals.  Canonical forms use primitive integer vectors, so cone equality
and hashing are exact.

Also provided: face lattices, fans with validation (face closure, pairwise
intersection condition, support coverage by the wall condition), common
refinements, Hilbert bases of dual monoids, and regularity testing with
refinement by determinant-descent stellar subdivisions.
"""

from __future__ import annotations

import itertools
from fractions import Fraction
from typing import Iterable, Sequence

from .linalg import (dot, frac_vec, int_kernel_basis, mat_inv, nullspace,
                     primitive, quotient_lattice_maps, rank, rref)

__all__ = ["Cone", "Fan", "dual_monoid_hilbert_basis"]

_HILBERT_DIM_CAP = 6
_REFINE_DIM_CAP = 4
_BOX_CAP = 10_000_000


def _neg(v):
    return tuple(-x for x in v)


def _dd_convert(ineqs: Sequence[Sequence[Fraction]],
                eqs: Sequence[Sequence[Fraction]],
                n: int) -> tuple[list[tuple[Fraction, ...]], list[tuple[Fraction, ...]]]:
    """Double description: halfspace description -> (rays, lineality basis)."""
    lines: list[tuple[Fraction, ...]] = [
        tuple(Fraction(1 if i == j else 0) for j in range(n)) for i in range(n)]
    rays: list[tuple[Fraction, ...]] = []
    constraints: list[tuple[Fraction, ...]] = []
    for e in eqs:
        constraints.append(frac_vec(e))
        constraints.append(_neg(frac_vec(e)))
    for a in ineqs:
        constraints.append(frac_vec(a))

    processed: list[tuple[Fraction, ...]] = []
    for a in constraints:
        hit = [l for l in lines if dot(a, l) != 0]
        if hit:
            l0 = hit[0]
            if dot(a, l0) < 0:
                l0 = _neg(l0)
            v0 = dot(a, l0)
            lines = [tuple(x - dot(a, l) / v0 * y for x, y in zip(l, l0))
                     for l in lines if l is not hit[0]]
            lines = [l for l in lines if any(x != 0 for x in l)]
            rays = [tuple(x - dot(a, r) / v0 * y for x, y in zip(r, l0))
                    for r in rays]
            rays.append(l0)
            processed.append(a)
            continue
        vals = [dot(a, r) for r in rays]
        if all(v >= 0 for v in vals):
            processed.append(a)
            continue
        # tight sets w.r.t. already processed constraints
        tight = [frozenset(i for i, c in enumerate(processed) if dot(c, r) == 0)
                 for r in rays]
        keep = [r for r, v in zip(rays, vals) if v >= 0]
        new_rays: list[tuple[Fraction, ...]] = []
        for (ip, p) in [(i, r) for i, (r, v) in enumerate(zip(rays, vals)) if v > 0]:
            for (im, m) in [(i, r) for i, (r, v) in enumerate(zip(rays, vals)) if v < 0]:
                T = tight[ip] & tight[im]
                adjacent = True
                for io, o in enumerate(rays):
                    if io != ip and io != im and tight[io] >= T:
                        adjacent = False
                        break
                if adjacent:
                    vp, vm = vals[ip], vals[im]
                    comb = tuple(vp * x - vm * y for x, y in zip(m, p))
                    if any(x != 0 for x in comb):
                        new_rays.append(comb)
            # note: when there are no rays with v < 0 this loop body is skipped
        rays = keep + new_rays
        processed.append(a)
        # deduplicate collinear rays
        seen = {}
        for r in rays:
            seen[primitive(r)] = r
        rays = [frac_vec(k) for k in seen]
    return rays, lines


def _canonical_lines(lines: Sequence[Sequence[Fraction]]) -> tuple[tuple[int, ...], ...]:
    if not lines:
        return ()
    red, pivots = rref(lines)
    rows = [primitive(row) for row in red[:len(pivots)]]
    return tuple(sorted(rows))


def _reduce_mod_lines(ray: Sequence[Fraction],
                      lines: Sequence[Sequence[int]]) -> tuple[int, ...]:
    v = list(frac_vec(ray))
    if lines:
        red, pivots = rref(lines)
        for row, pc in zip(red, pivots):
            if v[pc] != 0:
                f = v[pc] / row[pc]
                v = [x - f * y for x, y in zip(v, row)]
    if all(x == 0 for x in v):
        raise ValueError("ray lies in the lineality space")
    return primitive(v)


class Cone:
    """Rational polyhedral cone with exact dual representations."""

    def __init__(self, n: int, rays=None, lines=None, ineqs=None, eqs=None):
        if (rays is None) == (ineqs is None):
            raise ValueError("construct from exactly one of rays / ineqs")
        self.n = n
        self._gen_rays = [frac_vec(r) for r in rays] if rays is not None else None
        self._gen_lines = [frac_vec(l) for l in (lines or [])] if rays is not None else None
        self._in_ineqs = [frac_vec(a) for a in ineqs] if ineqs is not None else None
        self._in_eqs = [frac_vec(e) for e in (eqs or [])] if ineqs is not None else None
        self._V: tuple[tuple[tuple[int, ...], ...], tuple[tuple[int, ...], ...]] | None = None
        self._H: tuple[tuple[tuple[int, ...], ...], tuple[tuple[int, ...], ...]] | None = None
        self._faces_cache: list["Cone"] | None = None

    # -- constructors -------------------------------------------------------

    @staticmethod
    def from_rays(rays: Iterable[Sequence], n: int | None = None,
                  lines: Iterable[Sequence] = ()) -> "Cone":
        rays = [tuple(r) for r in rays]
        lines = [tuple(l) for l in lines]
        if n is None:
            if not rays and not lines:
                raise ValueError("ambient dimension required for trivial cone")
            n = len((rays + lines)[0])
        return Cone(n, rays=rays, lines=lines)

    @staticmethod
    def from_ineqs(ineqs: Iterable[Sequence], n: int | None = None,
                   eqs: Iterable[Sequence] = ()) -> "Cone":
        ineqs = [tuple(a) for a in ineqs]
        eqs = [tuple(e) for e in eqs]
        if n is None:
            if not ineqs and not eqs:
                raise ValueError("ambient dimension required for full space")
            n = len((ineqs + eqs)[0])
        return Cone(n, ineqs=ineqs, eqs=eqs)

    @staticmethod
    def full_space(n: int) -> "Cone":
        return Cone(n, ineqs=[])

    # -- representation -----------------------------------------------------

    def _canonicalize_v(self, raw_rays, raw_lines):
        clines = _canonical_lines(raw_lines)
        crays = sorted({_reduce_mod_lines(r, clines) for r in raw_rays
                        if any(x != 0 for x in r)})
        return tuple(crays), clines

    def _compute(self) -> None:
        if self._V is not None and self._H is not None:
            return
        if self._in_ineqs is not None:
            rays, lines = _dd_convert(self._in_ineqs, self._in_eqs, self.n)
            self._V = self._canonicalize_v(rays, lines)
            drays, dlines = _dd_convert([frac_vec(r) for r in self._V[0]],
                                        [frac_vec(l) for l in self._V[1]], self.n)
            self._H = self._canonicalize_v(drays, dlines)
        else:
            # generators given: H-rep = V-rep of the dual cone
            drays, dlines = _dd_convert(self._gen_rays, self._gen_lines, self.n)
            self._H = self._canonicalize_v(drays, dlines)
            rays, lines = _dd_convert([frac_vec(a) for a in self._H[0]],
                                      [frac_vec(e) for e in self._H[1]], self.n)
            self._V = self._canonicalize_v(rays, lines)

    def rays(self) -> tuple[tuple[int, ...], ...]:
        self._compute()
        return self._V[0]

    def lines(self) -> tuple[tuple[int, ...], ...]:
        self._compute()
        return self._V[1]

    def ineqs(self) -> tuple[tuple[int, ...], ...]:
        self._compute()
        return self._H[0]

    def eqs(self) -> tuple[tuple[int, ...], ...]:
        self._compute()
        return self._H[1]

    def key(self):
        self._compute()
        return (self._V[0], self._V[1])

    def __eq__(self, other: object) -> bool:
        return isinstance(other, Cone) and self.n == other.n and self.key() == other.key()

    def __hash__(self) -> int:
        return hash((self.n, self.key()))

    def __repr__(self) -> str:
        return f"Cone(rays={list(self.rays())}, lines={list(self.lines())})"

    # -- queries --------------------------------------------------------------

    def dim(self) -> int:
        gens = list(self.rays()) + list(self.lines())
        return rank(gens) if gens else 0

    def is_pointed(self) -> bool:
        return not self.lines()

    def is_trivial(self) -> bool:
        return not self.rays() and not self.lines()

    def contains(self, x: Sequence) -> bool:
        x = frac_vec(x)
        return (all(dot(e, x) == 0 for e in self.eqs())
                and all(dot(a, x) >= 0 for a in self.ineqs()))

    def contains_cone(self, other: "Cone") -> bool:
        return (all(self.contains(r) for r in other.rays())
                and all(self.contains(l) and self.contains(_neg(l))
                        for l in other.lines()))

    def relative_interior_point(self) -> tuple[Fraction, ...]:
        rays = self.rays()
        if not rays:
            return tuple(Fraction(0) for _ in range(self.n))
        return tuple(sum(Fraction(r[i]) for r in rays) for i in range(self.n))

    def dual(self) -> "Cone":
        return Cone.from_ineqs([frac_vec(r) for r in self.rays()], n=self.n,
                               eqs=[frac_vec(l) for l in self.lines()])

    def intersect(self, other: "Cone") -> "Cone":
        return Cone.from_ineqs(list(self.ineqs()) + list(other.ineqs()), n=self.n,
                               eqs=list(self.eqs()) + list(other.eqs()))

    # -- faces ------------------------------------------------------------------

    def facets(self) -> list["Cone"]:
        out = {}
        for a in self.ineqs():
            f = Cone.from_ineqs(self.ineqs(), n=self.n,
                                eqs=list(self.eqs()) + [a])
            out[f.key()] = f
        return list(out.values())

    def faces(self) -> list["Cone"]:
        """All faces including self and the minimal face."""
        if self._faces_cache is not None:
            return self._faces_cache
        seen: dict = {self.key(): self}
        frontier = [self]
        while frontier:
            nxt = []
            for c in frontier:
                if c.dim() == len(c.lines()):  # minimal face reached
                    continue
                for f in c.facets():
                    if f.key() not in seen:
                        seen[f.key()] = f
                        nxt.append(f)
            frontier = nxt
        self._faces_cache = list(seen.values())
        return self._faces_cache

    def is_face_of(self, other: "Cone") -> bool:
        if not other.contains_cone(self):
            return False
        tight = [a for a in other.ineqs()
                 if all(dot(a, r) == 0 for r in self.rays())
                 and all(dot(a, l) == 0 for l in self.lines())]
        face = Cone.from_ineqs(other.ineqs(), n=other.n,
                               eqs=list(other.eqs()) + tight)
        return face == self

    # -- lattice properties -------------------------------------------------------

    def is_simplicial(self) -> bool:
        return self.is_pointed() and len(self.rays()) == self.dim()

    def smooth_index(self) -> int | None:
        """gcd of maximal minors of the ray matrix for a simplicial cone.

        1 means the cone is regular (unimodular); None if not simplicial.
        """
        if not self.is_simplicial():
            return None
        rays = [list(r) for r in self.rays()]
        m = len(rays)
        if m == 0:
            return 1
        from math import gcd
        g = 0
        for cols in itertools.combinations(range(self.n), m):
            sub = [[row[c] for c in cols] for row in rays]
            g = gcd(g, abs(_int_det(sub)))
        return g

    def is_regular(self) -> bool:
        idx = self.smooth_index()
        return idx == 1


def _int_det(m: list[list[int]]) -> int:
    """Integer determinant by fraction-free elimination (Bareiss)."""
    a = [row[:] for row in m]
    n = len(a)
    if n == 0:
        return 1
    sign = 1
    prev = 1
    for k in range(n - 1):
        if a[k][k] == 0:
            piv = next((i for i in range(k + 1, n) if a[i][k] != 0), None)
            if piv is None:
                return 0
            a[k], a[piv] = a[piv], a[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
            a[i][k] = 0
        prev = a[k][k]
    return sign * a[n - 1][n - 1]


class Fan:
    """A finite collection of cones closed under faces."""

    def __init__(self, cones: Iterable[Cone] = ()):
        self.cones: dict = {}
        for c in cones:
            self.add(c)

    def add(self, cone: Cone) -> None:
        if cone.key() not in self.cones:
            for f in cone.faces():
                self.cones.setdefault(f.key(), f)

    def __len__(self) -> int:
        return len(self.cones)

    def __iter__(self):
        return iter(self.cones.values())

    def __contains__(self, cone: Cone) -> bool:
        return cone.key() in self.cones

    def maximal_cones(self) -> list[Cone]:
        out = []
        all_cones = list(self.cones.values())
        for c in all_cones:
            if not any(o is not c and o.contains_cone(c) and o.key() != c.key()
                       for o in all_cones):
                out.append(c)
        return out

    def cones_of_dim(self, d: int) -> list[Cone]:
        return [c for c in self.cones.values() if c.dim() == d]

    def validate(self, support: Cone | None = None) -> list[str]:
        """Return a list of violations (empty means the fan is valid)."""
        problems: list[str] = []
        cones = list(self.cones.values())
        for c in cones:
            for f in c.facets():
                if f.key() not in self.cones:
                    problems.append(f"missing face of {c!r}")
        for c1, c2 in itertools.combinations(cones, 2):
            i = c1.intersect(c2)
            if not (i.is_face_of(c1) and i.is_face_of(c2)):
                problems.append(f"intersection of {c1!r} and {c2!r} is not a common face")
        if support is not None:
            problems.extend(self._check_support(support))
        return problems

    def _check_support(self, support: Cone) -> list[str]:
        problems: list[str] = []
        sdim = support.dim()
        maximal = self.maximal_cones()
        for c in maximal:
            if not support.contains_cone(c):
                problems.append(f"cone {c!r} not contained in the support")
            if c.dim() != sdim:
                problems.append(f"maximal cone {c!r} has dim {c.dim()} != {sdim}")
        if problems:
            return problems
        # wall condition: each facet of a maximal cone is either on the
        # boundary of the support or shared with exactly one other maximal cone
        adjacency = {i: set() for i in range(len(maximal))}
        for i, c in enumerate(maximal):
            for f in c.facets():
                on_boundary = any(
                    all(dot(a, r) == 0 for r in f.rays())
                    and all(dot(a, l) == 0 for l in f.lines())
                    for a in support.ineqs())
                sharers = [j for j, o in enumerate(maximal) if j != i
                           and any(f == g for g in o.facets())]
                if on_boundary:
                    continue
                if len(sharers) != 1:
                    problems.append(
                        f"interior wall {f!r} shared by {len(sharers)} other cones")
                else:
                    adjacency[i].add(sharers[0])
                    adjacency[sharers[0]].add(i)
        if maximal and not problems:
            seen = {0}
            stack = [0]
            while stack:
                u = stack.pop()
                for v in adjacency[u]:
                    if v not in seen:
                        seen.add(v)
                        stack.append(v)
            if len(seen) != len(maximal):
                problems.append("dual graph of maximal cones is disconnected")
        return problems

    def join(self, other: "Fan") -> "Fan":
        """Common refinement: all pairwise intersections."""
        out = Fan()
        for c1 in self.cones.values():
            for c2 in other.cones.values():
                out.add(c1.intersect(c2))
        return out

    def is_subdivision_of(self, coarse: "Fan", support: Cone) -> bool:
        if self.validate(support) or coarse.validate(support):
            return False
        coarse_max = coarse.maximal_cones()
        for c in self.maximal_cones():
            if not any(o.contains_cone(c) for o in coarse_max):
                return False
        return True

    def stellar_subdivide(self, w: Sequence[int]) -> "Fan":
        w = tuple(int(x) for x in w)
        out = Fan()
        for c in self.maximal_cones():
            if c.contains(w):
                for f in c.facets():
                    if not f.contains(w):
                        out.add(Cone.from_rays(list(f.rays()) + [w], n=c.n,
                                               lines=f.lines()))
            else:
                out.add(c)
        return out

    def is_regular(self) -> bool:
        return all(c.is_regular() for c in self.maximal_cones()
                   if c.is_pointed())

    def regular_refinement(self) -> "Fan":
        """Refine until every cone is regular (dim <= 4 supported)."""
        fan = self
        for c in fan.maximal_cones():
            if c.dim() > _REFINE_DIM_CAP:
                raise ValueError(
                    f"regular refinement supported up to dim {_REFINE_DIM_CAP}")
            if not c.is_pointed():
                raise ValueError("regular refinement requires pointed cones")
        for _ in range(10000):
            bad = next((c for c in fan.maximal_cones() if not c.is_simplicial()),
                       None)
            if bad is not None:
                fan = fan.stellar_subdivide(bad.rays()[0])
                continue
            bad = next((c for c in fan.maximal_cones() if not c.is_regular()),
                       None)
            if bad is None:
                return fan
            w = _descent_point(bad)
            fan = fan.stellar_subdivide(w)
        raise RuntimeError("regular refinement did not terminate")


def _descent_point(cone: Cone) -> tuple[int, ...]:
    """A nonzero lattice point in the half-open parallelepiped of a
    non-regular simplicial cone (guarantees determinant descent)."""
    rays = [list(r) for r in cone.rays()]
    m = len(rays)
    pts = _parallelepiped_points(rays, cone.n, half_open=True)
    candidates = [p for p in pts if any(x != 0 for x in p)]
    if not candidates:
        raise AssertionError("non-regular cone without interior lattice point")
    # prefer points with small coefficient sum for fast descent
    def keyf(p):
        return (sum(abs(x) for x in p), p)
    return primitive(min(candidates, key=keyf))


def _parallelepiped_points(rays: list[list[int]], n: int,
                           half_open: bool = False) -> list[tuple[int, ...]]:
    """Integer points x = sum t_i r_i with t_i in [0,1] (or [0,1))."""
    m = len(rays)
    # coordinates within the span of the rays
    if rank(rays) != m:
        raise ValueError("rays must be linearly independent")
    verts = []
    for mask in range(1 << m):
        verts.append([sum(rays[i][j] for i in range(m) if mask >> i & 1)
                      for j in range(n)])
    lo = [min(v[j] for v in verts) for j in range(n)]
    hi = [max(v[j] for v in verts) for j in range(n)]
    total = 1
    for a, b in zip(lo, hi):
        total *= (b - a + 1)
        if total > _BOX_CAP:
            raise ValueError("parallelepiped bounding box too large")
    # solve t from x by least squares on the exact span: use pseudo-solve via
    # picking m independent coordinates of the ray matrix
    rows = [[Fraction(rays[i][j]) for i in range(m)] for j in range(n)]
    # choose m independent rows of the n x m matrix
    red, pivots = rref([list(col) for col in zip(*rows)])  # rref of m x n
    idx = pivots  # independent coordinate positions
    sub = [[rows[j][i] for i in range(m)] for j in idx]
    sub_inv = mat_inv(sub)
    out = []
    upper = Fraction(1)
    for x in itertools.product(*[range(a, b + 1) for a, b in zip(lo, hi)]):
        t = [sum(sub_inv[i][j] * x[idx[j]] for j in range(m)) for i in range(m)]
        if any(ti < 0 or ti > upper for ti in t):
            continue
        if half_open and any(ti == upper for ti in t):
            continue
        # verify x really lies in the span
        if all(sum(Fraction(rays[i][j]) * t[i] for i in range(m)) == x[j]
               for j in range(n)):
            out.append(tuple(x))
    return out


def _span_coordinate_maps(rays: list[tuple[int, ...]], n: int):
    """Coordinates on span(rays) cap Z^n.  Returns (m, to_span, from_span)."""
    if not rays:
        return 0, (lambda x: ()), (lambda c: tuple(0 for _ in range(n)))
    perp = nullspace([list(r) for r in rays], ncols=n)
    if not perp:
        ident = lambda x: tuple(int(v) for v in x)
        return n, ident, ident
    a_rows = [primitive(p) for p in perp]
    basis = int_kernel_basis(a_rows, n)  # saturated basis of the span lattice
    m = len(basis)
    bmat = [[Fraction(basis[i][j]) for i in range(m)] for j in range(n)]
    red, pivots = rref([list(col) for col in zip(*bmat)])
    idx = pivots
    sub = [[bmat[j][i] for i in range(m)] for j in idx]
    sub_inv = mat_inv(sub)

    def to_span(x):
        c = [sum(sub_inv[i][j] * Fraction(x[idx[j]]) for j in range(m))
             for i in range(m)]
        if any(ci.denominator != 1 for ci in c):
            raise ValueError("point not in the span lattice")
        # verify
        if any(sum(Fraction(basis[i][j]) * c[i] for i in range(m)) != x[j]
               for j in range(n)):
            raise ValueError("point not in the span")
        return tuple(int(ci) for ci in c)

    def from_span(c):
        return tuple(sum(int(c[i]) * basis[i][j] for i in range(m))
                     for j in range(n))

    return m, to_span, from_span


def _triangulate(cone: Cone) -> list[list[tuple[int, ...]]]:
    """Triangulate a pointed cone into simplicial ray subsets."""
    rays = list(cone.rays())
    if len(rays) == cone.dim():
        return [rays]
    r0 = rays[0]
    out = []
    for f in cone.facets():
        if not f.contains(r0):
            for simplex in _triangulate(f):
                out.append(simplex + [r0])
    return out


def _monoid_member(x: tuple[int, ...], gens: list[tuple[int, ...]],
                   cone: Cone, memo: dict) -> bool:
    if all(v == 0 for v in x):
        return True
    if x in memo:
        return memo[x]
    memo[x] = False  # guards against cycles (none expected: functional drops)
    for g in gens:
        y = tuple(a - b for a, b in zip(x, g))
        if cone.contains(y) and _monoid_member(y, gens, cone, memo):
            memo[x] = True
            break
    return memo[x]


def dual_monoid_hilbert_basis(cone: Cone) -> dict:
    """Hilbert basis of {y in Z^n : y . x >= 0 for all x in cone}.

    Returns a dict with 'generators' (minimal generating set of the pointed
    part, lifted to Z^n), 'lineality' (basis vectors g with both g and -g in
    the monoid), and 'all' (generators plus the +/- lineality pairs).
    """
    n = cone.n
    if n > _HILBERT_DIM_CAP:
        raise ValueError(f"Hilbert basis supported up to ambient dim {_HILBERT_DIM_CAP}")
    dual = cone.dual()
    dlines = [list(l) for l in dual.lines()]
    k, project, lift, sat_basis = quotient_lattice_maps(dlines, n)
    prays = [project(r) for r in dual.rays()]
    if not prays:
        return {"generators": [], "lineality": [tuple(b) for b in sat_basis],
                "all": [tuple(b) for b in sat_basis]
                        + [_neg(b) for b in sat_basis]}
    pcone = Cone.from_rays(prays, n=k)
    assert pcone.is_pointed()
    m, to_span, from_span = _span_coordinate_maps(list(pcone.rays()), k)
    srays = [to_span(r) for r in pcone.rays()]
    scone = Cone.from_rays(srays, n=m)
    candidates: set[tuple[int, ...]] = set()
    for simplex in _triangulate(scone):
        for p in _parallelepiped_points([list(r) for r in simplex], m):
            if any(v != 0 for v in p):
                candidates.add(p)
    # strictly positive functional on the pointed cone
    ell = tuple(sum(Fraction(a[i]) for a in scone.ineqs()) for i in range(m))
    ordered = sorted(candidates, key=lambda x: (dot(ell, x), x))
    basis: list[tuple[int, ...]] = []
    memo: dict = {}
    for x in ordered:
        if not _monoid_member(x, basis, scone, memo):
            basis.append(x)
            memo.clear()
    # removal certification
    for g in basis:
        others = [h for h in basis if h != g]
        assert not _monoid_member(g, others, scone, {}), \
            "Hilbert basis element generated by the others"
    gens = [lift(from_span(b)) for b in basis]
    lin = [tuple(b) for b in sat_basis]
    return {"generators": gens, "lineality": lin,
            "all": gens + lin + [_neg(b) for b in lin]}
