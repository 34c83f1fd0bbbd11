"""Real algebraic numbers given by a square-free polynomial and an isolating interval."""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterator, Optional, Union

from .dyadic import DyadicInterval, default_precision
from .poly import Poly, poly_gcd, squarefree_part
from .sturm import IndeterminateCount, cauchy_bound, count_roots_rational, sturm_sequence, variations_at


@dataclass(frozen=True)
class RealAlgebraic:
    """The unique root of ``minpoly`` inside the open interval (lo, hi).

    ``minpoly`` is square-free, primitive, with positive leading coefficient,
    and takes nonzero values of opposite sign at ``lo`` and ``hi``.
    """

    minpoly: Poly
    lo: Fraction
    hi: Fraction

    @classmethod
    def from_poly(cls, p: Poly, lo, hi) -> "RealAlgebraic":
        """Root of p in the open interval (lo, hi); raises unless it is unique."""
        sf = squarefree_part(p)
        lo, hi = Fraction(lo), Fraction(hi)
        if not lo < hi:
            raise ValueError("isolating interval must satisfy lo < hi")
        if sf.sign_at(lo) == 0 or sf.sign_at(hi) == 0:
            raise ValueError("isolating interval endpoints must not be roots")
        if count_roots_rational(sf, lo, hi) != 1:
            raise ValueError(f"{sf} does not have exactly one root in ({lo}, {hi})")
        return cls(sf, lo, hi)

    @classmethod
    def quadratic(cls, a, b, n) -> Union["RealAlgebraic", Fraction]:
        """The real number a + b*sqrt(n) for rationals a, b and n >= 0."""
        a, b, n = Fraction(a), Fraction(b), Fraction(n)
        if n < 0:
            raise ValueError("negative radicand")
        r = _rational_sqrt(n)
        if r is not None or b == 0:
            return a + b * (r or 0)
        # (X - a)^2 - b^2 n
        p = Poly([a * a - b * b * n, -2 * a, 1]).primitive()
        s = DyadicInterval.exact(n, 64).sqrt() * DyadicInterval.exact(b, 64) + DyadicInterval.exact(a, 64)
        lo, hi = s.lower - Fraction(1, 1 << 40), s.upper + Fraction(1, 1 << 40)
        return cls.from_poly(p, lo, hi)

    # numeric views ------------------------------------------------------------
    def __float__(self):
        lo, hi = refine(self, Fraction(1, 1 << 60))
        return float((lo + hi) / 2)

    def enclosure(self, prec: Optional[int] = None) -> DyadicInterval:
        prec = prec or default_precision()
        lo, hi = refine(self, Fraction(1, 1 << prec))
        return DyadicInterval.hull(lo, hi, prec)

    def decimal(self, digits: int = 15) -> str:
        bits = int(digits * 3.33) + 8
        return self.enclosure(bits).decimal(digits)

    def __repr__(self):
        return f"RealAlgebraic({self.minpoly}, ~{float(self):.12g})"

    def __str__(self):
        return f"root of {self.minpoly} near {float(self):.12g}"

    # exact queries ------------------------------------------------------------
    def is_root_of(self, p: Poly) -> bool:
        if p.is_zero():
            return True
        g = poly_gcd(self.minpoly, p)
        if g.degree <= 0:
            return False
        return count_roots_rational(g, self.lo, self.hi) == 1

    def sign_of(self, p: Poly) -> int:
        """Exact sign of p at this number."""
        if self.is_root_of(p):
            return 0
        lo, hi = self.lo, self.hi
        sf = squarefree_part(p)
        while count_roots_rational(sf, lo, hi) > 0:
            lo, hi = _bisect(self.minpoly, lo, hi)
        return p.sign_at(lo) or p.sign_at(hi)

    def rational_value(self) -> Optional[Fraction]:
        """The value as a Fraction when it is rational."""
        for q in _rational_roots(self.minpoly):
            if self.lo < q < self.hi:
                return q
        return None

    # rational transforms ------------------------------------------------------
    def __neg__(self) -> "RealAlgebraic":
        p = self.minpoly.scale_var(-1)
        return RealAlgebraic(p.primitive(), -self.hi, -self.lo)

    def add_rational(self, q) -> "RealAlgebraic":
        q = Fraction(q)
        return RealAlgebraic(self.minpoly.shift(-q).primitive(), self.lo + q, self.hi + q)

    def mul_rational(self, q) -> Union["RealAlgebraic", Fraction]:
        q = Fraction(q)
        if q == 0:
            return Fraction(0)
        p = self.minpoly.scale_var(1 / q).primitive()
        lo, hi = sorted((self.lo * q, self.hi * q))
        return RealAlgebraic(p, lo, hi)

    # ordering -----------------------------------------------------------------
    def __lt__(self, other):
        return alg_compare(self, other) < 0

    def __le__(self, other):
        return alg_compare(self, other) <= 0

    def __gt__(self, other):
        return alg_compare(self, other) > 0

    def __ge__(self, other):
        return alg_compare(self, other) >= 0


Number = Union[int, Fraction, RealAlgebraic]


def _rational_sqrt(q: Fraction) -> Optional[Fraction]:
    n, d = q.numerator, q.denominator
    rn, rd = math.isqrt(n), math.isqrt(d)
    if rn * rn == n and rd * rd == d:
        return Fraction(rn, rd)
    return None


def _divisors(n: int) -> Iterator[int]:
    n = abs(n)
    i = 1
    while i * i <= n:
        if n % i == 0:
            yield i
            if i * i != n:
                yield n // i
        i += 1


def _rational_roots(p: Poly) -> list[Fraction]:
    p = p.primitive()
    cs = p.coeffs
    if not cs:
        return []
    roots = []
    k = 0
    while k < len(cs) and cs[k] == 0:
        k += 1
    if k:
        roots.append(Fraction(0))
        p = Poly(cs[k:])
    if p.degree < 1:
        return roots
    a0, ad = p.coeffs[0], p.coeffs[-1]
    if abs(a0) > 10 ** 12 or abs(ad) > 10 ** 12:
        # isolating-interval bisection handles these without factoring
        return roots
    for num in _divisors(a0):
        for den in _divisors(ad):
            for s in (1, -1):
                q = Fraction(s * num, den)
                if q not in roots and p.sign_at(q) == 0:
                    roots.append(q)
    return roots


def _bisect(p: Poly, lo: Fraction, hi: Fraction) -> tuple[Fraction, Fraction]:
    """One bisection step for the sign-changing root of p in (lo, hi)."""
    s_lo = p.sign_at(lo)
    w = hi - lo
    for t in (Fraction(1, 2), Fraction(3, 7), Fraction(4, 7), Fraction(2, 5), Fraction(3, 5)):
        m = lo + w * t
        s = p.sign_at(m)
        if s == 0:
            continue
        return (lo, m) if s != s_lo else (m, hi)
    # a root at every trial point means the root itself is one of them
    for t in (Fraction(1, 2), Fraction(3, 7), Fraction(4, 7)):
        m = lo + w * t
        eps = w / 1024
        return m - eps, m + eps
    raise AssertionError("unreachable")


def refine(x: Number, eps) -> tuple[Fraction, Fraction]:
    """Isolating interval of width < eps (degenerate for rationals)."""
    eps = Fraction(eps)
    if eps <= 0:
        raise ValueError("eps must be positive")
    if not isinstance(x, RealAlgebraic):
        q = Fraction(x)
        return q, q
    lo, hi = x.lo, x.hi
    p = x.minpoly
    while hi - lo >= eps:
        nlo, nhi = _bisect(p, lo, hi)
        if nhi - nlo >= hi - lo:
            break
        lo, hi = nlo, nhi
    return lo, hi


def refined(x: RealAlgebraic, eps) -> RealAlgebraic:
    lo, hi = refine(x, eps)
    return RealAlgebraic(x.minpoly, lo, hi)


def isolate_real_roots(p: Poly) -> list[RealAlgebraic]:
    """One RealAlgebraic per distinct real root of p, in increasing order."""
    if p.is_zero():
        raise IndeterminateCount("indeterminate root count")
    seq = sturm_sequence(p)
    sf = seq[0]
    if sf.degree <= 0:
        return []
    b = Fraction(math.ceil(cauchy_bound(sf)))
    a = -b
    out: list[RealAlgebraic] = []
    stack = [(a, b, variations_at(seq, a), variations_at(seq, b))]
    while stack:
        lo, hi, vlo, vhi = stack.pop()
        n = vlo - vhi
        if n == 0:
            continue
        if n == 1:
            out.append(RealAlgebraic(sf, lo, hi))
            continue
        w = hi - lo
        for t in (Fraction(1, 2), Fraction(3, 7), Fraction(4, 7), Fraction(5, 11), Fraction(6, 11)):
            m = lo + w * t
            if sf.sign_at(m) != 0:
                break
        vm = variations_at(seq, m)
        stack.append((m, hi, vm, vhi))
        stack.append((lo, m, vlo, vm))
    out.sort(key=lambda r: r.lo)
    return out


def _interval(x: Number) -> tuple[Fraction, Fraction]:
    if isinstance(x, RealAlgebraic):
        return x.lo, x.hi
    q = Fraction(x)
    return q, q


def alg_compare(x: Number, y: Number) -> int:
    """Exact comparison: -1, 0 or 1."""
    xa, ya = isinstance(x, RealAlgebraic), isinstance(y, RealAlgebraic)
    if not xa and not ya:
        x, y = Fraction(x), Fraction(y)
        return (x > y) - (x < y)
    if not xa:
        return -alg_compare(y, x)
    if not ya:
        q = Fraction(y)
        if x.minpoly.sign_at(q) == 0 and x.lo < q < x.hi:
            return 0
        lo, hi = x.lo, x.hi
        while lo <= q <= hi:
            lo, hi = _bisect(x.minpoly, lo, hi)
        return 1 if lo > q else -1
    # both algebraic: equality is a common-root question
    g = poly_gcd(x.minpoly, y.minpoly)
    common = g.degree > 0 and x.is_root_of(g) and y.is_root_of(g)
    xl, xh, yl, yh = x.lo, x.hi, y.lo, y.hi
    while True:
        if xh <= yl:
            return -1
        if yh <= xl:
            return 1
        if common:
            lo, hi = min(xl, yl), max(xh, yh)
            if g.sign_at(lo) != 0 and g.sign_at(hi) != 0 and count_roots_rational(g, lo, hi) == 1:
                return 0
        if xh - xl >= yh - yl:
            xl, xh = _bisect(x.minpoly, xl, xh)
        else:
            yl, yh = _bisect(y.minpoly, yl, yh)


def _endpoint_split(p: Poly, e: Number, left: bool) -> tuple[Optional[Fraction], int]:
    """Rational proxy for an endpoint plus 1 if p vanishes at it.

    For a left endpoint the proxy r satisfies: roots of p in [e, b] are
    (p(e) == 0) + roots in (r, b]; symmetric for a right endpoint.
    """
    if not isinstance(e, RealAlgebraic):
        q = Fraction(e)
        return q, 0
    sf = squarefree_part(p)
    zero = e.is_root_of(sf)
    lo, hi = e.lo, e.hi
    target = 1 if zero else 0
    while True:
        inside = count_roots_rational(sf, lo, hi)
        if inside == target and sf.sign_at(lo) != 0 and sf.sign_at(hi) != 0:
            break
        lo, hi = _bisect(e.minpoly, lo, hi)
    return (hi if left else lo), int(zero)


def sturm_count(p: Poly, a: Optional[Number], b: Optional[Number]) -> int:
    """Distinct real roots of p in the closed interval [a, b].

    ``None`` endpoints mean -infinity / +infinity.  Roots sitting exactly on
    an endpoint are counted as inside.
    """
    if p.is_zero():
        raise IndeterminateCount("indeterminate root count")
    if a is not None and b is not None:
        c = alg_compare(a, b)
        if c > 0:
            raise ValueError("sturm_count requires a <= b")
        if c == 0:
            return 0 if not _vanishes_at(p, a) else 1
    sf = squarefree_part(p)
    if sf.degree <= 0:
        return 0
    if a is not None and not isinstance(a, RealAlgebraic) and not isinstance(b, RealAlgebraic):
        return count_roots_rational(sf, Fraction(a), None if b is None else Fraction(b))
    if a is None and not isinstance(b, RealAlgebraic):
        return count_roots_rational(sf, None, None if b is None else Fraction(b))
    extra = 0
    ra: Optional[Fraction] = None
    rb: Optional[Fraction] = None
    if a is not None:
        ra, za = _endpoint_split(sf, a, left=True)
        if isinstance(a, RealAlgebraic):
            extra += za
        elif sf.sign_at(ra) == 0:
            extra += 1
    if b is not None:
        rb, zb = _endpoint_split(sf, b, left=False)
        if isinstance(b, RealAlgebraic):
            extra += zb
            # roots in (ra, rb) with rb a non-root proxy
    n = count_roots_rational(sf, ra, rb, closed=False)
    return n + extra


def _vanishes_at(p: Poly, x: Number) -> bool:
    if isinstance(x, RealAlgebraic):
        return x.is_root_of(p)
    return p.sign_at(Fraction(x)) == 0


def as_number(x) -> Number:
    if isinstance(x, RealAlgebraic):
        q = x.rational_value() if x.minpoly.degree == 1 else None
        return q if q is not None else x
    return Fraction(x)
