"""Exact rational scalars and their text representations.

All cost and potential arithmetic in this package is exact; the scalar
type is fractions.Fraction.  This module owns the "p/q" wire format
used by instance files and reports, plus a decimal rendering that is
only ever used for display, never for computation.
"""

from __future__ import annotations

import decimal
import re
from fractions import Fraction

import gmpy2

from .errors import ParseError

Rational = Fraction

_RATIONAL_RE = re.compile(r"^(-?\d+)\s*(?:/\s*(\d+))?$")


def parse_rational(token) -> Fraction:
    """Parse an integer or "p/q" token into a Fraction.

    Accepts int (taken verbatim) and str.  Floats are rejected: they do
    not round-trip exactly and instance files must stay bit-exact.
    """
    if isinstance(token, bool):
        raise ParseError(f"not a rational token: {token!r}")
    if isinstance(token, int):
        return Fraction(token)
    if not isinstance(token, str):
        raise ParseError(f"not a rational token: {token!r}")
    m = _RATIONAL_RE.match(token.strip())
    if m is None:
        raise ParseError(f"malformed rational {token!r}")
    num = int(m.group(1))
    den = m.group(2)
    if den is None:
        return Fraction(num)
    if int(den) == 0:
        raise ParseError(f"zero denominator in {token!r}")
    return Fraction(num, int(den))


def _int_str(n) -> str:
    # CPython int-to-decimal is quadratic; GMP is not, and it matters
    # at the multi-megabit numerators harmonic values reach
    if n.bit_length() > 4096:
        return gmpy2.mpz(n).digits(10)
    return str(int(n))


def format_rational(value) -> str:
    """Inverse of parse_rational: "p" for integers, else "p/q"."""
    value = Fraction(value)
    if value.denominator == 1:
        return _int_str(value.numerator)
    return f"{_int_str(value.numerator)}/{_int_str(value.denominator)}"


def decimal_str(value, digits: int = 12) -> str:
    """Render a number to `digits` significant decimal digits."""
    if isinstance(value, float):
        return f"{value:.{digits}g}"
    frac = Fraction(value)
    ctx = decimal.Context(prec=digits)
    quot = ctx.divide(
        decimal.Decimal(int(frac.numerator)),
        decimal.Decimal(int(frac.denominator)),
    )
    return str(quot)
