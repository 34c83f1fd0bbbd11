"""Outward-rounded interval arithmetic on fixed-point dyadic endpoints.

An interval stores integers ``lo`` and ``hi`` together with a number of
fractional bits ``prec``; it denotes ``[lo / 2**prec, hi / 2**prec]``.  Every
operation rounds the lower endpoint down and the upper endpoint up, so the
result always encloses the exact value.
"""
from __future__ import annotations

import os
from dataclasses import dataclass
from fractions import Fraction
from math import isqrt
from typing import Callable, Optional, TypeVar

DEFAULT_PRECISION = 64
MAX_PRECISION = 1 << 14

T = TypeVar("T")


def default_precision() -> int:
    env = os.environ.get("PREP_ATLAS_PRECISION")
    if env:
        try:
            value = int(env)
        except ValueError:
            return DEFAULT_PRECISION
        if value >= 8:
            return value
    return DEFAULT_PRECISION


def _floor_shift(v: int, s: int) -> int:
    return v >> s if s >= 0 else v << -s


def _ceil_shift(v: int, s: int) -> int:
    return -((-v) >> s) if s >= 0 else v << -s


def _ceil_isqrt(n: int) -> int:
    r = isqrt(n)
    return r if r * r == n else r + 1


@dataclass(frozen=True)
class DyadicInterval:
    lo: int
    hi: int
    prec: int = DEFAULT_PRECISION

    def __post_init__(self):
        if self.lo > self.hi:
            raise ValueError(f"empty interval [{self.lo}, {self.hi}] / 2^{self.prec}")

    # constructors -----------------------------------------------------------
    @classmethod
    def exact(cls, q, prec: int = DEFAULT_PRECISION) -> "DyadicInterval":
        q = Fraction(q)
        num, den = q.numerator << prec, q.denominator
        lo = num // den
        hi = -((-num) // den)
        return cls(lo, hi, prec)

    @classmethod
    def hull(cls, a, b, prec: int = DEFAULT_PRECISION) -> "DyadicInterval":
        a, b = Fraction(a), Fraction(b)
        if a > b:
            a, b = b, a
        return cls(cls.exact(a, prec).lo, cls.exact(b, prec).hi, prec)

    @classmethod
    def coerce(cls, value, prec: int) -> "DyadicInterval":
        if isinstance(value, DyadicInterval):
            return value.with_prec(prec)
        return cls.exact(value, prec)

    def with_prec(self, prec: int) -> "DyadicInterval":
        if prec == self.prec:
            return self
        s = self.prec - prec
        return DyadicInterval(_floor_shift(self.lo, s), _ceil_shift(self.hi, s), prec)

    # views ----------------------------------------------------------------
    @property
    def lower(self) -> Fraction:
        return Fraction(self.lo, 1 << self.prec)

    @property
    def upper(self) -> Fraction:
        return Fraction(self.hi, 1 << self.prec)

    @property
    def width(self) -> Fraction:
        return Fraction(self.hi - self.lo, 1 << self.prec)

    @property
    def mid(self) -> Fraction:
        return Fraction(self.lo + self.hi, 1 << (self.prec + 1))

    def __float__(self):
        return float(self.mid)

    def float_bounds(self) -> tuple[float, float]:
        import math

        lo, hi = float(self.lower), float(self.upper)
        return math.nextafter(lo, -math.inf), math.nextafter(hi, math.inf)

    def __repr__(self):
        return f"DyadicInterval[{float(self.lower)!r}, {float(self.upper)!r}]@{self.prec}"

    def decimal(self, digits: int = 20) -> str:
        """Midpoint as a decimal string together with the enclosure radius."""
        from decimal import Decimal, localcontext

        with localcontext() as ctx:
            ctx.prec = digits + 5
            m = self.mid
            r = self.width / 2
            mid = Decimal(m.numerator) / Decimal(m.denominator)
            rad = Decimal(r.numerator) / Decimal(r.denominator)
        return f"{mid:.{digits}g} +/- {rad:.3g}"

    # predicates -----------------------------------------------------------
    def contains(self, q) -> bool:
        if isinstance(q, DyadicInterval):
            p = max(self.prec, q.prec)
            a, b = self.with_prec(p), q.with_prec(p)
            return a.lo <= b.lo and b.hi <= a.hi
        q = Fraction(q)
        return self.lower <= q <= self.upper

    def contains_zero(self) -> bool:
        return self.lo <= 0 <= self.hi

    def is_positive(self) -> bool:
        return self.lo > 0

    def is_negative(self) -> bool:
        return self.hi < 0

    def sign(self) -> Optional[int]:
        """Certified sign, or None when the enclosure straddles zero."""
        if self.lo > 0:
            return 1
        if self.hi < 0:
            return -1
        if self.lo == 0 == self.hi:
            return 0
        return None

    def certainly_lt(self, other) -> bool:
        a, b = self._align(other)
        return a.hi < b.lo

    def certainly_gt(self, other) -> bool:
        a, b = self._align(other)
        return a.lo > b.hi

    def compare(self, other) -> Optional[int]:
        if self.certainly_lt(other):
            return -1
        if self.certainly_gt(other):
            return 1
        return None

    # arithmetic -------------------------------------------------------------
    def _align(self, other) -> tuple["DyadicInterval", "DyadicInterval"]:
        if not isinstance(other, DyadicInterval):
            other = DyadicInterval.exact(other, self.prec)
        p = max(self.prec, other.prec)
        return self.with_prec(p), other.with_prec(p)

    def __add__(self, other):
        a, b = self._align(other)
        return DyadicInterval(a.lo + b.lo, a.hi + b.hi, a.prec)

    __radd__ = __add__

    def __neg__(self):
        return DyadicInterval(-self.hi, -self.lo, self.prec)

    def __sub__(self, other):
        a, b = self._align(other)
        return DyadicInterval(a.lo - b.hi, a.hi - b.lo, a.prec)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, int):
            if other >= 0:
                return DyadicInterval(self.lo * other, self.hi * other, self.prec)
            return DyadicInterval(self.hi * other, self.lo * other, self.prec)
        a, b = self._align(other)
        p = a.prec
        prods = (a.lo * b.lo, a.lo * b.hi, a.hi * b.lo, a.hi * b.hi)
        return DyadicInterval(_floor_shift(min(prods), p), _ceil_shift(max(prods), p), p)

    __rmul__ = __mul__

    def square(self) -> "DyadicInterval":
        p = self.prec
        lo, hi = self.lo, self.hi
        if lo >= 0:
            return DyadicInterval(_floor_shift(lo * lo, p), _ceil_shift(hi * hi, p), p)
        if hi <= 0:
            return DyadicInterval(_floor_shift(hi * hi, p), _ceil_shift(lo * lo, p), p)
        return DyadicInterval(0, _ceil_shift(max(lo * lo, hi * hi), p), p)

    def __pow__(self, k: int):
        if k < 0:
            return self.reciprocal() ** (-k)
        if k == 0:
            return DyadicInterval.exact(1, self.prec)
        if k % 2 == 0:
            return self.square() ** (k // 2) if k > 2 else self.square()
        result = self
        for _ in range(k - 1):
            result = result * self
        return result

    def reciprocal(self) -> "DyadicInterval":
        if self.contains_zero():
            raise ZeroDivisionError("interval contains zero")
        p = self.prec
        one = 1 << (2 * p)
        lo = one // self.hi
        hi = -((-one) // self.lo)
        return DyadicInterval(lo, hi, p)

    def __truediv__(self, other):
        a, b = self._align(other)
        return a * b.reciprocal()

    def __rtruediv__(self, other):
        return DyadicInterval.exact(other, self.prec) / self

    def half(self) -> "DyadicInterval":
        return DyadicInterval(self.lo >> 1, -((-self.hi) >> 1), self.prec)

    def sqrt(self) -> "DyadicInterval":
        if self.hi < 0:
            raise ValueError("square root of a negative interval")
        p = self.prec
        lo = max(self.lo, 0)
        return DyadicInterval(isqrt(lo << p), _ceil_isqrt(self.hi << p), p)

    def __abs__(self):
        if self.lo >= 0:
            return self
        if self.hi <= 0:
            return -self
        return DyadicInterval(0, max(-self.lo, self.hi), self.prec)

    def magnitude(self) -> Fraction:
        """Upper bound of |x| over the interval."""
        return Fraction(max(abs(self.lo), abs(self.hi)), 1 << self.prec)

    def join(self, other: "DyadicInterval") -> "DyadicInterval":
        a, b = self._align(other)
        return DyadicInterval(min(a.lo, b.lo), max(a.hi, b.hi), a.prec)

    def intersect(self, other: "DyadicInterval") -> Optional["DyadicInterval"]:
        a, b = self._align(other)
        lo, hi = max(a.lo, b.lo), min(a.hi, b.hi)
        return DyadicInterval(lo, hi, a.prec) if lo <= hi else None

    def root(self, k: int) -> "DyadicInterval":
        """Enclosure of the real k-th root of a nonnegative interval."""
        if k == 1:
            return self
        if self.hi < 0:
            raise ValueError("root of a negative interval")
        p = self.prec
        lo = _iroot(max(self.lo, 0) << (p * (k - 1)), k)
        hi_n = self.hi << (p * (k - 1))
        hi = _iroot(hi_n, k)
        if hi ** k < hi_n:
            hi += 1
        return DyadicInterval(lo, hi, p)


def _iroot(n: int, k: int) -> int:
    """floor(n ** (1/k)) for n >= 0."""
    if n < 2:
        return n
    x = 1 << (-(-n.bit_length() // k))
    while True:
        y = ((k - 1) * x + n // x ** (k - 1)) // k
        if y >= x:
            break
        x = y
    while x ** k > n:
        x -= 1
    while (x + 1) ** k <= n:
        x += 1
    return x


def with_doubling(decide: Callable[[int], Optional[T]], start: Optional[int] = None,
                  limit: int = MAX_PRECISION) -> Optional[T]:
    """Call ``decide(prec)`` with doubling precision until it returns non-None."""
    prec = start or default_precision()
    while prec <= limit:
        result = decide(prec)
        if result is not None:
            return result
        prec *= 2
    return None
