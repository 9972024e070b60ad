"""Exact rational scalars and directed-rounding root enclosures.

Every quantity in this package is a ``fractions.Fraction``.  The only
irrational values that ever arise are roots (Euclidean norms, side budgets
``eps**(k/n)``), and those are always returned as certified rational
enclosures: ``root_lower`` never exceeds the true root, ``root_upper``
never falls below it.  No floats participate in any verdict.

Enclosures are reported on the grid ``1/prec`` with ``prec`` defaulting to
``DEFAULT_PRECISION`` (10**12).  When the requested root is itself rational
the exact value is returned regardless of ``prec``.
"""

from __future__ import annotations

from fractions import Fraction
from math import isqrt

Scalar = Fraction

DEFAULT_PRECISION = 10**12


def format_scalar(x: Fraction) -> str:
    """Canonical "num/den" form, denominator always present."""
    x = Fraction(x)
    return f"{x.numerator}/{x.denominator}"


def parse_scalar(text: str) -> Fraction:
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError) as exc:
        raise ValueError(f"not a rational scalar: {text!r}") from exc


def int_nth_root(a: int, r: int) -> tuple[int, bool]:
    """Floor of the r-th root of a >= 0 and whether it is exact."""
    if a < 0:
        raise ValueError("root of negative integer")
    if r < 1:
        raise ValueError("root index must be >= 1")
    if r == 1 or a in (0, 1):
        return a, True
    if r == 2:
        s = isqrt(a)
        return s, s * s == a
    # integer Newton iteration, started above the root
    x = 1 << -(-a.bit_length() // r)
    while True:
        y = ((r - 1) * x + a // x ** (r - 1)) // r
        if y >= x:
            break
        x = y
    return x, x**r == a


def _exact_root(x: Fraction, r: int) -> Fraction | None:
    rp, ok_p = int_nth_root(x.numerator, r)
    if not ok_p:
        return None
    rq, ok_q = int_nth_root(x.denominator, r)
    if not ok_q:
        return None
    return Fraction(rp, rq)


def root_lower(x: Fraction, r: int, prec: int = DEFAULT_PRECISION) -> Fraction:
    """Rational lower bound of x**(1/r); exact when the root is rational."""
    if x < 0:
        raise ValueError("root of negative scalar")
    if prec < 1:
        raise ValueError("prec must be >= 1")
    exact = _exact_root(x, r)
    if exact is not None:
        return exact
    a, _ = int_nth_root(x.numerator * prec**r // x.denominator, r)
    return Fraction(a, prec)


def root_upper(x: Fraction, r: int, prec: int = DEFAULT_PRECISION) -> Fraction:
    """Rational upper bound of x**(1/r); exact when the root is rational."""
    if x < 0:
        raise ValueError("root of negative scalar")
    if prec < 1:
        raise ValueError("prec must be >= 1")
    exact = _exact_root(x, r)
    if exact is not None:
        return exact
    a, _ = int_nth_root(x.numerator * prec**r // x.denominator, r)
    # a = floor(true * prec) and the root is irrational here, so a + 1 is strict
    return Fraction(a + 1, prec)


def sqrt_lower(x: Fraction, prec: int = DEFAULT_PRECISION) -> Fraction:
    return root_lower(x, 2, prec)


def sqrt_upper(x: Fraction, prec: int = DEFAULT_PRECISION) -> Fraction:
    return root_upper(x, 2, prec)


def pow_lower(x: Fraction, num: int, den: int, prec: int = DEFAULT_PRECISION) -> Fraction:
    """Certified lower bound of x**(num/den) for x > 0."""
    if x <= 0:
        raise ValueError("base must be positive")
    if num < 0:
        return pow_lower(1 / x, -num, den, prec)
    if num % den == 0:
        return x ** (num // den)
    return root_lower(x**num, den, prec)


def pow_upper(x: Fraction, num: int, den: int, prec: int = DEFAULT_PRECISION) -> Fraction:
    """Certified upper bound of x**(num/den) for x > 0."""
    if x <= 0:
        raise ValueError("base must be positive")
    if num < 0:
        return pow_upper(1 / x, -num, den, prec)
    if num % den == 0:
        return x ** (num // den)
    return root_upper(x**num, den, prec)
