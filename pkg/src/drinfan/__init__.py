"""drinfan: exact arithmetic for weighted norms, rational cone fans, and
Tate-style quotients of twisted polynomial modules.

All numerical content is exact: finite-field elements, polynomials and
truncated Laurent series over F_q, and rational numbers (fractions.Fraction).
No floating point is used anywhere in the mathematical core.
"""

__version__ = "0.1.0"
