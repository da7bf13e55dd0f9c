"""Exact arithmetic over Q: p-adic valuations and archimedean comparisons.

Rationals are :class:`fractions.Fraction` values, which are kept in lowest
terms with a positive denominator on construction.  Valuations live in
``Z u {oo}``; the point at infinity is the singleton :data:`INF`.
"""
from __future__ import annotations

import re
from fractions import Fraction
from functools import total_ordering
from typing import Union

from .errors import InvalidPlaceError

Rat = Fraction


@total_ordering
class _Infinity:
    """The top element of ``Z u {oo}``; absorbing under addition."""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self) -> str:
        return "INF"

    def __str__(self) -> str:
        return "oo"

    def __eq__(self, other) -> bool:
        return other is self

    def __hash__(self) -> int:
        return hash("placeq-infinity")

    def __lt__(self, other) -> bool:
        return False

    def __gt__(self, other) -> bool:
        return other is not self

    def __add__(self, other):
        return self

    __radd__ = __add__


INF = _Infinity()
ValInt = Union[int, _Infinity]


def is_inf(a) -> bool:
    return a is INF


def val_add(a: ValInt, b: ValInt) -> ValInt:
    if a is INF or b is INF:
        return INF
    return a + b


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    f = 3
    while f * f <= n:
        if n % f == 0:
            return False
        f += 2
    return True


def check_prime(p: int) -> int:
    if not isinstance(p, int) or isinstance(p, bool) or not is_prime(p):
        raise InvalidPlaceError(f"{p!r} is not a prime")
    return p


def _int_val(n: int, p: int) -> int:
    k = 0
    while n % p == 0:
        n //= p
        k += 1
    return k


def vp(a, p: int) -> ValInt:
    """Exponent of ``p`` in ``a``; ``INF`` for zero.

    >>> vp(Fraction(8, 9), 3)
    -2
    """
    check_prime(p)
    a = Fraction(a)
    if a == 0:
        return INF
    return _int_val(abs(a.numerator), p) - _int_val(a.denominator, p)


def abs_le_inf(a, b) -> bool:
    """``|a| <= |b|`` for the real absolute value, by cross multiplication."""
    a, b = Fraction(a), Fraction(b)
    return abs(a.numerator) * b.denominator <= abs(b.numerator) * a.denominator


# Thin named wrappers; Fraction already gives exact canonical results.
def add(a, b) -> Rat:
    return Fraction(a) + Fraction(b)


def negate(a) -> Rat:
    return -Fraction(a)


def multiply(a, b) -> Rat:
    return Fraction(a) * Fraction(b)


def divide(a, b) -> Rat:
    b = Fraction(b)
    if b == 0:
        raise ZeroDivisionError("division by zero in Q")
    return Fraction(a) / b


_RAT_RE = re.compile(r"^\s*(-?\d+)(?:\s*/\s*(\d+))?\s*$")


def parse_rat(text: str) -> Rat:
    """Parse ``"n"`` or ``"n/d"`` (optional leading ``-``)."""
    m = _RAT_RE.match(text)
    if not m:
        raise ValueError(f"not a rational: {text!r}")
    den = int(m.group(2)) if m.group(2) else 1
    if den == 0:
        raise ZeroDivisionError("zero denominator")
    return Fraction(int(m.group(1)), den)


def format_rat(a) -> str:
    a = Fraction(a)
    if a.denominator == 1:
        return str(a.numerator)
    return f"{a.numerator}/{a.denominator}"


def format_val(a: ValInt) -> str:
    return "oo" if a is INF else str(a)


def small_rationals(bound: int):
    """Rationals ``a/b`` in lowest terms with ``1 <= b <= bound`` and
    ``|a| <= bound``, by denominator, then by ``|a|`` (positive first)."""
    from math import gcd
    for b in range(1, bound + 1):
        for m in range(0, bound + 1):
            for a in ((0,) if m == 0 else (m, -m)):
                if gcd(a, b) == 1:
                    yield Fraction(a, b)


def next_prime_not_in(primes) -> int:
    q = 2
    while q in primes or not is_prime(q):
        q += 1
    return q
