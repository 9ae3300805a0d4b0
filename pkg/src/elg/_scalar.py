"""Exact rational scalars.

Everything in this package is computed over Q.  gmpy2.mpq is used when
available (it is a drop-in, much faster replacement for fractions.Fraction);
otherwise we fall back to the stdlib.
"""

from __future__ import annotations

try:
    from gmpy2 import mpq as Rat
except ImportError:  # pragma: no cover
    from fractions import Fraction as Rat

ZERO = Rat(0)
ONE = Rat(1)


def rat(x) -> Rat:
    """Coerce ints, 'p/q' strings or rationals to Rat."""
    if isinstance(x, str):
        if "/" in x:
            p, q = x.split("/")
            return Rat(int(p), int(q))
        return Rat(int(x))
    return Rat(x)


def rat_str(x) -> str:
    """Serialize a rational as 'p/q' (or 'p' when the denominator is 1)."""
    x = Rat(x)
    if x.denominator == 1:
        return str(x.numerator)
    return f"{x.numerator}/{x.denominator}"
