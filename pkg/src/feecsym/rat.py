"""Exact rational scalars.

gmpy2's mpq is used when available (much faster); fractions.Fraction is the
fallback.  Both normalize to reduced form with positive denominator.
"""

try:
    from gmpy2 import mpq as Q
except ImportError:  # pragma: no cover
    from fractions import Fraction as Q

QZERO = Q(0)
QONE = Q(1)


def qstr(x) -> str:
    """Render a rational as "p/q", or just "p" when the denominator is one."""
    if x.denominator == 1:
        return str(x.numerator)
    return f"{x.numerator}/{x.denominator}"


def qparse(s: str):
    num, _, den = s.partition("/")
    return Q(int(num), int(den)) if den else Q(int(num))
