"""Rank-raising Tate quotients of Drinfeld modules over F_q((t)).

A DrinfeldModule is given by the additive polynomial phi(T) (a twisted
polynomial in tau = Frobenius with Laurent-series coefficients over
F_q((t))); the structure map sends T to t.  Starting from the standard
module psi(T) = t z + z^{q^r}, the module provides:

* the exponential of the A-lattice generated by lambda = t^{-m} inside the
  period space (A acts through psi), built as a monic subspace polynomial
  by the one-dimension-at-a-time recursion e' = tau e - e(lambda)^{q-1} e
  over the finitely many lattice elements of valuation above the working
  precision cutoff, then normalized to linear coefficient 1,
* the quotient module phi with phi(T) e = e psi(T), solved triangularly;
  the tail of the relation is checked to vanish to working precision,
* iterated quotients (each step raises the rank by one),
* Newton-polygon valuations of torsion points phi[N], and the predicted
  valuation multiset coming from the lattice combinatorics (the weighted
  counting function epsilon on the lattice profile, plus the torsion of
  the original module carried through the exponential),
* the weight-cone class point of a quotient module and of its torsion.

Everything is exact arithmetic on truncated Laurent series; a
PrecisionError from the series layer means the requested precision was
insufficient, never a silently wrong answer.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .epsilon import epsilon, epsilon_inv
from .gf import GF, Poly, gf, polys_of_degree_at_most
from .points import ClassPoint
from .series import AdditiveSeries, LaurentSeries, PrecisionError, \
    root_valuations

__all__ = ["DrinfeldModule", "standard_module", "tate_step", "iterate_tate",
           "TateStep", "torsion_valuations", "predicted_torsion_valuations",
           "class_point_of_steps", "lattice_profile_of_steps",
           "admissibility_margin"]


@dataclass(frozen=True)
class DrinfeldModule:
    """A Drinfeld module over F_q((t)) with structure map T -> t."""

    field: GF
    phi_T: AdditiveSeries

    @property
    def q(self) -> int:
        return self.field.q

    @property
    def rank(self) -> int:
        return self.phi_T.tau_degree()

    def reduction_rank(self) -> int:
        """Largest i with unit tau^i-coefficient (rank of the reduction)."""
        best = 0
        for i in range(self.rank + 1):
            c = self.phi_T.coeff(i)
            if not c.is_zero_to_precision() and c.valuation() == 0:
                best = i
        return best

    def phi_of(self, a: Poly) -> AdditiveSeries:
        """The additive polynomial phi(a) for a in F_q[T]."""
        out = AdditiveSeries.zero(self.field)
        power = AdditiveSeries.identity(self.field)  # phi(T)^0
        for i, c in enumerate(a.coeffs):
            if c:
                out = out + power.scale(LaurentSeries.t_power(self.field, 0, c))
            if i < len(a.coeffs) - 1:
                power = self.phi_T.compose(power)
        return out


def standard_module(q: int, r: int) -> DrinfeldModule:
    """psi(T) = t z + z^{q^r} (rank r, good reduction rank r ... its
    reduction has rank r; the t-coefficient realizes the structure map)."""
    field = gf(q)
    return DrinfeldModule(field, AdditiveSeries(field, {
        0: LaurentSeries.t_power(field, 1),
        r: LaurentSeries.one(field),
    }))


def admissibility_margin(module: DrinfeldModule, m: int) -> Fraction:
    """Margin of the convergence condition for the lattice t^{-m} A:
    m (q^r - 1)(q - 1) - q * v(top coefficient); must be >= 0."""
    q = module.q
    r = module.rank
    f = module.phi_T.coeff(r)
    v = f.valuation()
    if v is None:
        raise ValueError("top coefficient vanishes to working precision")
    return Fraction(m * (q ** r - 1) * (q - 1) - q * v)


@dataclass(frozen=True)
class TateStep:
    """Diagnostics of one quotient step."""

    module: DrinfeldModule          # the new module (rank + 1)
    exponential: AdditiveSeries     # monic-normalized lattice exponential
    m: int                          # lattice generator valuation: -v(lambda)
    lattice_valuations: tuple[int, ...]  # -v over the enumerated lattice pts
    top_valuation: int              # v of the new top coefficient


def _lattice_basis(module: DrinfeldModule, m: int, precision: int
                   ) -> list[LaurentSeries]:
    """F_q-basis phi(T^j)(t^{-m}) of the lattice points with -v <= precision.

    An arbitrary lattice point phi(a)(t^{-m}) has the valuation of the
    leading basis vector involved, so this span is exactly the set of
    lattice points above the cutoff.
    """
    lam = LaurentSeries.t_power(module.field, -m)
    pts = []
    prev = None
    while True:
        val = lam.valuation()
        if val is None or -val > precision:
            break
        if prev is not None and val >= prev:
            raise ArithmeticError("lattice valuations failed to decrease")
        prev = val
        pts.append(lam)
        lam = module.phi_T.apply(lam)
    return pts


def _subspace_polynomial(field: GF, points: Sequence[LaurentSeries]
                         ) -> AdditiveSeries:
    """Monic additive polynomial vanishing on the F_q-span of the points
    (which must be F_q-independent)."""
    q = field.q
    e = AdditiveSeries.identity(field)
    for lam in points:
        img = e.apply(lam)
        if img.is_zero_to_precision():
            raise ArithmeticError("basis point already in the span")
        a = img.pow_int(q - 1)
        e = e.frobenius_twist() - e.scale(a)
    return e


def tate_step(module: DrinfeldModule, m: int, precision: int) -> TateStep:
    """Quotient of `module` by the A-lattice generated by t^{-m}.

    Raises ValueError if the lattice is not admissible (the exponential
    would not converge) and PrecisionError if the requested working
    precision cannot certify the quotient relation.
    """
    if m < 1:
        raise ValueError("lattice generator exponent m must be >= 1")
    if admissibility_margin(module, m) < 0:
        raise ValueError("inadmissible lattice: exponential does not converge")
    field = module.field
    q = field.q
    r = module.rank
    pts = _lattice_basis(module, m, precision)
    e_monic = _subspace_polynomial(field, pts)
    lam_vals = tuple(sorted(-v.valuation() for v in pts))
    # normalize to linear coefficient one
    c0 = e_monic.coeff(0)
    v_c0 = c0.valuation()
    if v_c0 is None:
        raise PrecisionError("linear coefficient lost to working precision")
    c0_inv = c0.inverse(precision + 1 - v_c0)
    coeffs: dict[int, LaurentSeries] = {}
    for i in range(e_monic.tau_degree() + 1):
        ci = e_monic.coeff(i)
        if ci.is_zero_to_precision():
            continue
        coeffs[i] = (ci * c0_inv).truncate(precision + 1)
    coeffs[0] = LaurentSeries.one(field, precision + 1)
    e = AdditiveSeries(field, coeffs)
    # triangular solve of phi(T) e = e psi(T)
    rhs = e.compose(module.phi_T)
    n_tau = e.tau_degree()
    phi_coeffs: dict[int, LaurentSeries] = {}
    for k in range(r + 2):
        acc = rhs.coeff(k)
        for i in range(k):
            if i in phi_coeffs:
                acc = acc - phi_coeffs[i] * e.coeff(k - i).frobenius_power(i)
        # e_0 = 1 exactly, so the k-th unknown equals the residual
        if not acc.is_zero_to_precision():
            phi_coeffs[k] = acc
    # tail must vanish to working precision
    for k in range(r + 2, r + 2 + n_tau):
        acc = rhs.coeff(k)
        for i in range(min(k, r + 1) + 1):
            if i in phi_coeffs:
                acc = acc - phi_coeffs[i] * e.coeff(k - i).frobenius_power(i)
        if not acc.is_zero_to_precision():
            raise PrecisionError(
                f"quotient relation residual at tau^{k} does not vanish")
    new_module = DrinfeldModule(field, AdditiveSeries(field, phi_coeffs))
    # structure-map sanity: the linear coefficient must be t
    lin = phi_coeffs[0] - LaurentSeries.t_power(field, 1)
    if not lin.is_zero_to_precision():
        raise PrecisionError("linear coefficient of the quotient is not t")
    top = phi_coeffs[r + 1].valuation()
    if top is None:
        raise PrecisionError("top coefficient of the quotient lost")
    return TateStep(module=new_module, exponential=e, m=m,
                    lattice_valuations=lam_vals, top_valuation=top)


def iterate_tate(q: int, r: int, ms: Sequence[int], precision: int
                 ) -> tuple[DrinfeldModule, list[TateStep]]:
    """Iterated quotients of the standard rank-r module by t^{-m_i} A."""
    module = standard_module(q, r)
    steps = []
    for m in ms:
        step = tate_step(module, m, precision)
        steps.append(step)
        module = step.module
    return module, steps


def torsion_valuations(module: DrinfeldModule, N: Poly
                       ) -> list[tuple[Fraction, int]]:
    """(valuation, multiplicity) of the roots of phi(N), by Newton polygon."""
    pts = module.phi_of(N).newton_points()
    return sorted(root_valuations(pts))


def lattice_profile_of_steps(q: int, r: int, ms: Sequence[int]
                             ) -> tuple[Fraction, ...]:
    """Power coordinates p_i = s_i^r of the lattice profile: p_1 = m_1 and
    p_j is the preimage of m_j under the counting function for the profile
    built so far (each step's generator valuation is measured after the
    previous exponentials)."""
    ps: list[Fraction] = []
    for m in ms:
        ps.append(epsilon_inv(q, r, ps, Fraction(m)))
    return tuple(ps)


def class_point_of_steps(q: int, r: int, ms: Sequence[int]) -> ClassPoint:
    """The weight-cone class point of the iterated quotient: d = r + n,
    coordinates (0, ..., 0, s_1, ..., s_n) with s_i^r the lattice profile."""
    ps = lattice_profile_of_steps(q, r, ms)
    values = tuple([Fraction(0)] * (r - 1) + list(ps))
    return ClassPoint(r + len(ms), values, r)


def predicted_torsion_valuations(q: int, r: int, ms: Sequence[int],
                                 N: Poly) -> list[tuple[Fraction, int]]:
    """Predicted multiset of -v over the N-torsion of the iterated quotient.

    Two parts: the image under the exponential of the N-torsion of the
    standard rank-r module (valuations preserved: torsion valuations are
    positive, lattice valuations negative), and one point per nonzero
    a in (A/N)^n at -v = epsilon(|N|^{-r} * max_i |a_i|^r p_i) on the
    lattice profile p.
    """
    field = gf(q)
    ps = lattice_profile_of_steps(q, r, ms)
    n = len(ps)
    k = N.degree
    if k < 1:
        raise ValueError("N must be nonconstant")
    counts: dict[Fraction, int] = {}
    base = standard_module(q, r)
    # torsion of the base module passes through the exponential with its
    # valuation unchanged (base torsion is integral, lattice points are not)
    for val, mult in torsion_valuations(base, N):
        counts[Fraction(val)] = counts.get(Fraction(val), 0) + mult
    reps = list(polys_of_degree_at_most(field, k - 1))
    import itertools
    for tup in itertools.product(reps, repeat=n):
        if all(a.is_zero() for a in tup):
            continue
        arg = max(Fraction(a.absolute_value()) ** r * p
                  for a, p in zip(tup, ps))
        val = -epsilon(q, r, ps, Fraction(q) ** (-k * r) * arg)
        counts[val] = counts.get(val, 0) + q ** (r * k)
    return sorted(counts.items())
