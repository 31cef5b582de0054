"""Truncated Laurent series over F_q and twisted additive series.

A LaurentSeries stores a sparse map exponent -> coefficient together with an
absolute precision: coefficients at exponents below ``prec`` are exact, and
nothing is claimed beyond.  ``prec is None`` means the series is exact (a
Laurent polynomial).  Operations propagate precision pessimistically and
raise PrecisionError instead of silently truncating when a requested
coefficient or valuation is not determined.

An AdditiveSeries is a twisted polynomial sum_i c_i * tau^i where tau is the
q-power map z -> z^q; composition follows the skew rule
(a * b)_k = sum_{i+j=k} a_i * b_j^{q^i}.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Sequence

from .gf import GF, Poly

__all__ = ["PrecisionError", "LaurentSeries", "AdditiveSeries",
           "lower_hull", "root_valuations"]


class PrecisionError(ArithmeticError):
    """Raised when a result is not determined at the available precision."""


def _min_prec(a: int | None, b: int | None) -> int | None:
    if a is None:
        return b
    if b is None:
        return a
    return min(a, b)


class LaurentSeries:
    """Sparse Laurent series over a small finite field with precision."""

    __slots__ = ("field", "coeffs", "prec")

    def __init__(self, field: GF, coeffs: dict[int, int], prec: int | None):
        if prec is not None:
            coeffs = {e: c for e, c in coeffs.items() if c and e < prec}
        else:
            coeffs = {e: c for e, c in coeffs.items() if c}
        self.field = field
        self.coeffs = coeffs
        self.prec = prec

    # -- constructors ------------------------------------------------------

    @staticmethod
    def zero(field: GF, prec: int | None = None) -> "LaurentSeries":
        return LaurentSeries(field, {}, prec)

    @staticmethod
    def one(field: GF, prec: int | None = None) -> "LaurentSeries":
        return LaurentSeries(field, {0: 1}, prec)

    @staticmethod
    def t_power(field: GF, e: int, c: int = 1,
                prec: int | None = None) -> "LaurentSeries":
        return LaurentSeries(field, {e: c}, prec)

    @staticmethod
    def from_poly(p: Poly, prec: int | None = None) -> "LaurentSeries":
        """Interpret a polynomial in T as a polynomial in t (T |-> t)."""
        return LaurentSeries(p.field, {i: c for i, c in enumerate(p.coeffs) if c},
                             prec)

    # -- structure ---------------------------------------------------------

    def is_zero_to_precision(self) -> bool:
        return not self.coeffs

    def low_exponent(self) -> int | None:
        """Smallest exponent that could carry a nonzero coefficient."""
        if self.coeffs:
            return min(self.coeffs)
        return self.prec  # None (exact zero) or the precision bound

    def valuation(self) -> int | None:
        """t-adic valuation; None for the exact zero series."""
        if self.coeffs:
            return min(self.coeffs)
        if self.prec is None:
            return None
        raise PrecisionError(
            f"series vanishes to precision {self.prec}; valuation unknown")

    def coeff(self, e: int) -> int:
        if self.prec is not None and e >= self.prec:
            raise PrecisionError(f"coefficient at t^{e} beyond precision {self.prec}")
        return self.coeffs.get(e, 0)

    def truncate(self, prec: int | None) -> "LaurentSeries":
        new_prec = _min_prec(self.prec, prec)
        return LaurentSeries(self.field, self.coeffs, new_prec)

    def require_precision(self, prec: int) -> "LaurentSeries":
        if self.prec is not None and self.prec < prec:
            raise PrecisionError(
                f"series precision {self.prec} below required {prec}")
        return self

    # -- arithmetic ---------------------------------------------------------

    def __add__(self, other: "LaurentSeries") -> "LaurentSeries":
        F = self.field
        out = dict(self.coeffs)
        for e, c in other.coeffs.items():
            s = F.add(out.get(e, 0), c)
            if s:
                out[e] = s
            else:
                out.pop(e, None)
        return LaurentSeries(F, out, _min_prec(self.prec, other.prec))

    def __neg__(self) -> "LaurentSeries":
        F = self.field
        return LaurentSeries(F, {e: F.neg(c) for e, c in self.coeffs.items()},
                             self.prec)

    def __sub__(self, other: "LaurentSeries") -> "LaurentSeries":
        return self + (-other)

    def scale(self, c: int) -> "LaurentSeries":
        F = self.field
        if c == 0:
            return LaurentSeries.zero(F, self.prec)
        return LaurentSeries(F, {e: F.mul(c, x) for e, x in self.coeffs.items()},
                             self.prec)

    def _mul_prec(self, other: "LaurentSeries") -> int | None:
        pa, pb = self.prec, other.prec
        la, lb = self.low_exponent(), other.low_exponent()
        cands = []
        if pa is not None:
            cands.append(None if lb is None else pa + lb)
        if pb is not None:
            cands.append(None if la is None else pb + la)
        cands = [c for c in cands if c is not None]
        if (pa is not None and lb is None) or (pb is not None and la is None):
            # an inexact factor times an exact zero is exactly zero
            pass
        return min(cands) if cands else None

    def __mul__(self, other: "LaurentSeries") -> "LaurentSeries":
        F = self.field
        prec = self._mul_prec(other)
        if not self.coeffs or not other.coeffs:
            return LaurentSeries.zero(F, prec)
        if F.e != 1:
            # the int encoding of extension-field elements does not convolve
            return LaurentSeries(F, self._mul_naive(other), prec)
        # Kronecker substitution: pack coefficients into one big integer.
        ea = sorted(self.coeffs)
        eb = sorted(other.coeffs)
        base_a, base_b = ea[0], eb[0]
        na = ea[-1] - base_a + 1
        nb = eb[-1] - base_b + 1
        K = 64  # bits per slot; coefficient sums stay far below 2^64
        A = 0
        for e, c in self.coeffs.items():
            A |= c << ((e - base_a) * K)
        B = 0
        for e, c in other.coeffs.items():
            B |= c << ((e - base_b) * K)
        P = A * B
        mask = (1 << K) - 1
        out: dict[int, int] = {}
        p = F.p
        for i in range(na + nb - 1):
            c = ((P >> (i * K)) & mask) % p
            if c:
                out[i + base_a + base_b] = c
        return LaurentSeries(F, out, prec)

    def _mul_naive(self, other: "LaurentSeries") -> dict[int, int]:
        F = self.field
        out: dict[int, int] = {}
        for e1, c1 in self.coeffs.items():
            for e2, c2 in other.coeffs.items():
                e = e1 + e2
                s = F.add(out.get(e, 0), F.mul(c1, c2))
                if s:
                    out[e] = s
                else:
                    out.pop(e, None)
        return out

    def frobenius_power(self, k: int) -> "LaurentSeries":
        """Raise to the q^k-th power (exact in characteristic p)."""
        F = self.field
        qk = F.q ** k
        out = {e * qk: F.pow(c, qk) for e, c in self.coeffs.items()}
        prec = None if self.prec is None else self.prec * qk
        return LaurentSeries(F, out, prec)

    def pow_int(self, n: int) -> "LaurentSeries":
        if n < 0:
            raise ValueError("use inverse() for negative powers")
        result = LaurentSeries.one(self.field)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def inverse(self, prec: int | None = None) -> "LaurentSeries":
        """Multiplicative inverse, to requested absolute precision.

        The series must have a determined nonzero lowest coefficient.  For an
        inexact input the achievable precision is p - 2v (error delta/a^2);
        requesting more raises PrecisionError.
        """
        if not self.coeffs:
            raise ZeroDivisionError("inverse of (numerically) zero series")
        F = self.field
        v = min(self.coeffs)
        best = None if self.prec is None else self.prec - 2 * v
        if len(self.coeffs) == 1 and self.prec is None:
            # exact monomial: exact inverse
            inv = LaurentSeries(F, {-v: F.inv(self.coeffs[v])}, None)
            return inv if prec is None else inv.truncate(prec)
        if prec is None:
            if best is None:
                raise ValueError("requested exact inverse of a series; pass prec")
            prec = best
        if best is not None and prec > best:
            raise PrecisionError(
                f"inverse precision {prec} unreachable (best {best})")
        c0 = self.coeffs[v]
        # u = self / (c0 t^v) is 1 + (positive valuation); invert by Newton on
        # exact representatives (the iteration self-corrects, so the generic
        # pessimistic precision propagation does not apply inside the loop).
        u = LaurentSeries(F, {e - v: F.div(c, c0) for e, c in self.coeffs.items()},
                          None)
        need = prec + v  # precision of u^{-1} needed
        x = LaurentSeries.one(F)
        known = 1
        two = 2 % F.p
        while known < need:
            known = min(2 * known, need)
            step = x.scale(two) - (u * x) * x
            x = LaurentSeries(F, {e: c for e, c in step.coeffs.items()
                                  if e < known}, None)
        return LaurentSeries(F, {e - v: F.div(c, c0)
                                 for e, c in x.coeffs.items()},
                             prec)

    # -- misc ----------------------------------------------------------------

    def __eq__(self, other: object) -> bool:
        return (isinstance(other, LaurentSeries) and self.field == other.field
                and self.coeffs == other.coeffs and self.prec == other.prec)

    def __hash__(self) -> int:
        return hash((self.field, tuple(sorted(self.coeffs.items())), self.prec))

    def __repr__(self) -> str:
        terms = [f"{c}*t^{e}" for e, c in sorted(self.coeffs.items())]
        body = " + ".join(terms) if terms else "0"
        tail = "" if self.prec is None else f" + O(t^{self.prec})"
        return f"LaurentSeries({body}{tail})"


class AdditiveSeries:
    """Twisted polynomial sum_i c_i tau^i over Laurent series coefficients."""

    __slots__ = ("field", "coeffs")

    def __init__(self, field: GF, coeffs: dict[int, LaurentSeries]):
        self.field = field
        self.coeffs = {i: c for i, c in coeffs.items()
                       if not (c.prec is None and c.is_zero_to_precision())}

    @staticmethod
    def identity(field: GF) -> "AdditiveSeries":
        return AdditiveSeries(field, {0: LaurentSeries.one(field)})

    @staticmethod
    def zero(field: GF) -> "AdditiveSeries":
        return AdditiveSeries(field, {})

    def tau_degree(self) -> int:
        """Largest tau index with a (numerically) nonzero coefficient."""
        nz = [i for i, c in self.coeffs.items() if not c.is_zero_to_precision()]
        return max(nz) if nz else -1

    def coeff(self, i: int) -> LaurentSeries:
        return self.coeffs.get(i, LaurentSeries.zero(self.field))

    def z_degree(self) -> int:
        """Degree in z, i.e. q^(tau degree)."""
        return self.field.q ** self.tau_degree()

    def __add__(self, other: "AdditiveSeries") -> "AdditiveSeries":
        out = dict(self.coeffs)
        for i, c in other.coeffs.items():
            out[i] = out[i] + c if i in out else c
        return AdditiveSeries(self.field, out)

    def __neg__(self) -> "AdditiveSeries":
        return AdditiveSeries(self.field, {i: -c for i, c in self.coeffs.items()})

    def __sub__(self, other: "AdditiveSeries") -> "AdditiveSeries":
        return self + (-other)

    def scale(self, s: LaurentSeries) -> "AdditiveSeries":
        return AdditiveSeries(self.field, {i: s * c for i, c in self.coeffs.items()})

    def compose(self, other: "AdditiveSeries") -> "AdditiveSeries":
        """self after other: (a . b)_k = sum_{i+j=k} a_i b_j^{q^i}."""
        out: dict[int, LaurentSeries] = {}
        for i, a in self.coeffs.items():
            for j, b in other.coeffs.items():
                k = i + j
                term = a * b.frobenius_power(i)
                out[k] = out[k] + term if k in out else term
        return AdditiveSeries(self.field, out)

    def frobenius_twist(self) -> "AdditiveSeries":
        """Compose with tau on the left: tau . f."""
        return AdditiveSeries(self.field,
                              {i + 1: c.frobenius_power(1)
                               for i, c in self.coeffs.items()})

    def apply(self, s: LaurentSeries) -> LaurentSeries:
        """Evaluate the additive polynomial at a Laurent series argument."""
        out = LaurentSeries.zero(self.field)
        for i, c in self.coeffs.items():
            out = out + c * s.frobenius_power(i)
        return out

    def compositional_inverse(self, tau_bound: int) -> "AdditiveSeries":
        """g with self . g = identity modulo tau^(tau_bound+1).

        Requires the tau^0 coefficient to be invertible (unit lowest term).
        """
        f0 = self.coeff(0)
        if f0.is_zero_to_precision():
            raise ZeroDivisionError("tau^0 coefficient is zero; not invertible")
        prec_goal = f0.prec
        f0_inv = f0.inverse(None if prec_goal is None else prec_goal - 2 * min(f0.coeffs))
        g: dict[int, LaurentSeries] = {0: f0_inv}
        q = self.field.q
        for k in range(1, tau_bound + 1):
            acc = LaurentSeries.zero(self.field)
            for i in range(1, k + 1):
                fi = self.coeff(i)
                if fi.is_zero_to_precision() and fi.prec is None:
                    continue
                gj = g.get(k - i)
                if gj is None:
                    continue
                acc = acc + fi * gj.frobenius_power(i)
            g[k] = (-acc) * f0_inv
        return AdditiveSeries(self.field, g)

    def truncate_tau(self, tau_bound: int) -> "AdditiveSeries":
        return AdditiveSeries(self.field, {i: c for i, c in self.coeffs.items()
                                           if i <= tau_bound})

    def newton_points(self) -> list[tuple[int, int | None, int | None]]:
        """(z-exponent, valuation or None, precision bound) per tau index.

        valuation None means the coefficient vanishes to its precision; the
        third entry is the precision bound (None for exact coefficients).
        """
        q = self.field.q
        pts = []
        for i in sorted(self.coeffs):
            c = self.coeffs[i]
            if c.is_zero_to_precision():
                if c.prec is not None:
                    pts.append((q ** i, None, c.prec))
            else:
                pts.append((q ** i, min(c.coeffs), c.prec))
        return pts

    def __repr__(self) -> str:
        parts = [f"({c!r})*tau^{i}" for i, c in sorted(self.coeffs.items())]
        return "AdditiveSeries(" + (" + ".join(parts) if parts else "0") + ")"


def lower_hull(points: Sequence[tuple[int, Fraction]]) -> list[tuple[int, Fraction]]:
    """Vertices of the lower convex hull of points with distinct x-coords."""
    pts = sorted((int(x), Fraction(y)) for x, y in points)
    hull: list[tuple[int, Fraction]] = []
    for p in pts:
        while len(hull) >= 2:
            (x1, y1), (x2, y2) = hull[-2], hull[-1]
            # pop if hull[-1] lies on or above segment hull[-2] -> p
            if (y2 - y1) * (p[0] - x1) >= (p[1] - y1) * (x2 - x1):
                hull.pop()
            else:
                break
        hull.append(p)
    return hull


def root_valuations(points: Iterable[tuple[int, int | None, int | None]]
                    ) -> list[tuple[Fraction, int]]:
    """Nonzero-root valuations with multiplicities from Newton polygon data.

    ``points`` are (z-exponent, valuation-or-None, precision) triples as
    produced by AdditiveSeries.newton_points.  Coefficients that vanish to
    their precision are skipped; if one of them could dip below the hull the
    data is inconclusive and PrecisionError is raised.
    """
    known = [(x, Fraction(v)) for x, v, _ in points if v is not None]
    if len(known) < 2:
        return []
    hull = lower_hull(known)

    def hull_height(x: int) -> Fraction | None:
        for (x1, y1), (x2, y2) in zip(hull, hull[1:]):
            if x1 <= x <= x2:
                return y1 + (y2 - y1) * Fraction(x - x1, x2 - x1)
        return None

    for x, v, prec in points:
        if v is None:
            h = hull_height(x)
            if h is not None and prec is not None and Fraction(prec) <= h:
                raise PrecisionError(
                    f"coefficient at z^{x} vanishes to precision {prec}, "
                    f"which does not clear the hull height {h}")
    out: list[tuple[Fraction, int]] = []
    for (x1, y1), (x2, y2) in zip(hull, hull[1:]):
        slope = (y2 - y1) / (x2 - x1)
        out.append((-slope, x2 - x1))
    return out
