"""Harmonic numbers: exact at integers, high precision on the reals.

H_k for integer k is the exact rational 1 + 1/2 + ... + 1/k.  The real
extension is H(k) = psi(k + 1) + gamma, which agrees with the integral
form  H(k) = int_0^1 (1 - x^k) / (1 - x) dx  and is strictly increasing
on k >= 0.

Small integer values are cached incrementally.  Large values are
computed by binary splitting over gmpy2 integers; the resulting mpq is
wrapped in a Fraction through the Rational constructor path, which
adopts the already reduced numerator and denominator without running
another gcd.  That keeps H_n at n = 10^6 around a couple of seconds.
"""

from __future__ import annotations

import math
from fractions import Fraction

import gmpy2
import mpmath

from .errors import DomainError

_INCREMENTAL_LIMIT = 4096
_cumulative = [gmpy2.mpq(0)]
_large_cache = {}

# working precision for real-valued evaluation; final results are
# rounded to float, so 30 digits leaves a wide margin under 1e-12
_WORK_DPS = 30


def _hsum(lo, hi):
    # unreduced binary splitting of sum_{i=lo..hi} 1/i
    if lo == hi:
        return gmpy2.mpz(1), gmpy2.mpz(lo)
    mid = (lo + hi) // 2
    p1, q1 = _hsum(lo, mid)
    p2, q2 = _hsum(mid + 1, hi)
    return p1 * q2 + p2 * q1, q1 * q2


def _as_fraction(q):
    num, den = q.numerator, q.denominator
    if den.bit_length() <= 512:
        # small enough that plain ints are cheap and friendlier downstream
        return Fraction(int(num), int(den))
    return Fraction(q)


def _check_integer(k):
    if isinstance(k, bool) or not isinstance(k, int):
        raise DomainError(f"integer index required, got {k!r}")
    if k < 0:
        raise DomainError(f"harmonic numbers need k >= 0, got {k}")


def _harmonic_mpq(k):
    """H_k as a cached gmpy2.mpq.

    Kept separate from the Fraction front end so that callers chaining
    further arithmetic on huge values can stay on GMP rationals, whose
    gcd is far faster than the CPython one at millions of bits.
    """
    _check_integer(k)
    if k < _INCREMENTAL_LIMIT:
        while len(_cumulative) <= k:
            m = len(_cumulative)
            _cumulative.append(_cumulative[-1] + gmpy2.mpq(1, m))
        return _cumulative[k]
    hit = _large_cache.get(k)
    if hit is None:
        hit = gmpy2.mpq(*_hsum(1, k))
        _large_cache[k] = hit
    return hit


def harmonic_int(k: int) -> Fraction:
    """Exact k-th harmonic number; H_0 = 0."""
    return _as_fraction(_harmonic_mpq(k))


def harmonic_prefix(n: int):
    """[H_0, H_1, ..., H_n] as Fractions, computed incrementally."""
    _check_integer(n)
    out = [Fraction(0)]
    acc = gmpy2.mpq(0)
    for m in range(1, n + 1):
        acc += gmpy2.mpq(1, m)
        out.append(_as_fraction(acc))
    return out


def _to_mpf(k):
    if isinstance(k, int):
        return mpmath.mpf(k)
    num = getattr(k, "numerator", None)
    if num is not None:
        # Fraction or mpq: divide at working precision
        return mpmath.mpf(int(num)) / mpmath.mpf(int(k.denominator))
    return mpmath.mpf(k)


def harmonic_mpf(k, dps: int = _WORK_DPS):
    """H(k) as an mpmath float carrying `dps` digits.

    Accepts int, float, or Fraction arguments; exact rational arguments
    are converted at working precision, so even million-digit exact
    inputs land within one ulp of the true argument.
    """
    if isinstance(k, float) and not math.isfinite(k):
        raise DomainError(f"argument must be finite, got {k}")
    if k < 0:
        raise DomainError(f"harmonic numbers need k >= 0, got {k}")
    with mpmath.workdps(dps):
        return mpmath.digamma(_to_mpf(k) + 1) + mpmath.euler


def harmonic_real(k) -> float:
    """H(k) for real k >= 0, absolute error well below 1e-12."""
    return float(harmonic_mpf(k))
