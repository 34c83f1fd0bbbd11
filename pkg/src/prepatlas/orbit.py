"""Orbits of f_c(x) = x^2 + c and the parameter polynomials built from them.

Two decision procedures live here.  ``decide_rational`` handles a rational
starting point with a rational parameter; ``decide_algebraic`` handles an
integer starting point with a parameter that is a root of a monic integer
polynomial, iterating exactly in the quotient ring.  Both stop either on an
exact repeat of the orbit or on a certified escape, and both carry an
explicit finite bound on the number of steps that can precede one of those
two events.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Optional, Sequence, Union

from .arith import (
    DyadicInterval,
    IntervalSet,
    Number,
    Poly,
    RealAlgebraic,
    alg_compare,
    count_real_roots,
    is_squarefree,
    isolate_real_roots,
)
from .arith.dyadic import with_doubling

DEFAULT_PSI_CAP = 14


class DegreeOverflow(ValueError):
    pass


class InvalidParameterPolynomial(ValueError):
    pass


# escape radius and real slice -------------------------------------------------

def escape_radius(alpha) -> Number:
    """|alpha|^2 + 1 + sqrt(|alpha|^2 + 1), exact."""
    s = Fraction(alpha) ** 2 + 1
    return RealAlgebraic.quadratic(s, 1, s)


@lru_cache(maxsize=1024)
def _radius_enclosure(alpha: Fraction):
    r = escape_radius(alpha)
    return r, (r.enclosure(64) if isinstance(r, RealAlgebraic) else DyadicInterval.exact(r, 64))


def escape_radius_upper(alpha) -> Fraction:
    return _radius_enclosure(Fraction(alpha))[1].upper


def real_slice(alpha) -> IntervalSet:
    """Closed interval known to contain every real parameter with bounded orbit."""
    a = Fraction(alpha)
    r = escape_radius(a)
    left = -r
    right = Fraction(1, 4) if abs(a) <= Fraction(1, 2) else abs(a) - a * a
    return IntervalSet.of([(left, right)])


# parameter polynomials --------------------------------------------------------

@lru_cache(maxsize=128)
def _psi_cached(alpha: Fraction, n: int) -> Poly:
    if n == 0:
        return Poly([alpha])
    if n == 1:
        return Poly([alpha * alpha, 1])
    prev = _psi_cached(alpha, n - 1)
    return prev.square() + Poly([0, 1])


def psi(alpha, n: int, cap: int = DEFAULT_PSI_CAP) -> Poly:
    """f_X^n(alpha) as a polynomial in the parameter X (monic, degree 2^(n-1))."""
    if n < 0:
        raise ValueError("n must be nonnegative")
    if n > cap:
        raise DegreeOverflow(f"degree overflow: n={n} exceeds cap {cap}")
    if n == 0:
        return Poly([Fraction(alpha)])
    # f_c(alpha) only depends on alpha^2
    return _psi_cached(abs(Fraction(alpha)), n)


def prep_poly(alpha, m: int, n: int, cap: int = DEFAULT_PSI_CAP) -> Poly:
    """F_{m,n}(X) = f_X^n(alpha) - f_X^m(alpha)."""
    if not 0 <= m < n:
        raise ValueError("need 0 <= m < n")
    return psi(alpha, n, cap) - psi(alpha, m, cap)


# verdicts -----------------------------------------------------------------------

@dataclass(frozen=True)
class Preperiodic:
    m: int
    n: int

    def as_dict(self):
        return {"verdict": "preperiodic", "m": self.m, "n": self.n}


@dataclass(frozen=True)
class Escaped:
    step: int
    witness: str

    def as_dict(self):
        return {"verdict": "escaped", "step": self.step, "witness": self.witness}


@dataclass(frozen=True)
class BudgetExhausted:
    steps: int

    def as_dict(self):
        return {"verdict": "budget_exhausted", "steps": self.steps}


Verdict = Union[Preperiodic, Escaped, BudgetExhausted]


@dataclass(frozen=True)
class OrbitRecord:
    alpha: Fraction
    parameter: object
    values: tuple
    verdict: Verdict


# rational parameters ----------------------------------------------------------

def _square_root_part(n: int) -> int:
    """Largest d with d*d dividing n, by trial division."""
    d, p = 1, 2
    while p * p <= n:
        e = 0
        while n % p == 0:
            n //= p
            e += 1
        d *= p ** (e // 2)
        p += 1 if p == 2 else 2
    return d


def rational_step_bound(alpha, c) -> int:
    """Steps after which a non-escaping rational orbit must already have repeated.

    Non-escaping values have |x| <= R and den(x)^2 | den(c), so they lie in a
    finite grid of size at most 2*R*D + 1 with D^2 | den(c).
    """
    c = Fraction(c)
    d = _square_root_part(c.denominator)
    return 2 * math.ceil(escape_radius_upper(alpha)) * d + 2


def decide_rational(alpha, c, budget: Optional[int] = None) -> OrbitRecord:
    """Decide whether alpha is preperiodic for f_c with rational alpha and c."""
    alpha, c = Fraction(alpha), Fraction(c)
    bound = rational_step_bound(alpha, c)
    steps = bound if budget is None else budget
    if steps < 1:
        raise ValueError("budget must be at least 1")
    r, r_enc = _radius_enclosure(alpha)
    seen: dict[Fraction, int] = {}
    values = []
    x = alpha
    for k in range(steps + 1):
        if x in seen:
            return OrbitRecord(alpha, c, tuple(values), Preperiodic(seen[x], k))
        seen[x] = k
        values.append(x)
        ax = abs(x)
        if ax > r_enc.upper or (ax >= r_enc.lower and alg_compare(ax, r) > 0):
            return OrbitRecord(alpha, c, tuple(values), Escaped(k, "archimedean"))
        if (c.denominator % (x.denominator * x.denominator)) != 0:
            return OrbitRecord(alpha, c, tuple(values), Escaped(k, "non-archimedean"))
        x = x * x + c
    if budget is not None and budget >= bound:
        raise AssertionError("orbit neither repeated nor escaped within the certified bound")
    return OrbitRecord(alpha, c, tuple(values), BudgetExhausted(steps))


# algebraic parameters ----------------------------------------------------------

@dataclass(frozen=True)
class AlgebraicModElement:
    """Element of Q[X]/(p) for a fixed monic p, as coordinates of length deg p."""

    coords: tuple
    modulus: Poly = field(compare=False, hash=False, repr=False)

    @classmethod
    def from_poly(cls, q: Poly, modulus: Poly) -> "AlgebraicModElement":
        r = q % modulus if q.degree >= modulus.degree else q
        d = modulus.degree
        return cls(tuple(r[i] for i in range(d)), modulus)

    @classmethod
    def constant(cls, a, modulus: Poly) -> "AlgebraicModElement":
        return cls.from_poly(Poly([a]), modulus)

    @classmethod
    def generator(cls, modulus: Poly) -> "AlgebraicModElement":
        return cls.from_poly(Poly([0, 1]), modulus)

    def poly(self) -> Poly:
        return Poly(self.coords)

    def __add__(self, other: "AlgebraicModElement") -> "AlgebraicModElement":
        return AlgebraicModElement(tuple(a + b for a, b in zip(self.coords, other.coords)), self.modulus)

    def __sub__(self, other: "AlgebraicModElement") -> "AlgebraicModElement":
        return AlgebraicModElement(tuple(a - b for a, b in zip(self.coords, other.coords)), self.modulus)

    def __mul__(self, other: "AlgebraicModElement") -> "AlgebraicModElement":
        return AlgebraicModElement.from_poly(self.poly() * other.poly(), self.modulus)

    def square(self) -> "AlgebraicModElement":
        return self * self

    def is_zero(self) -> bool:
        return not any(self.coords)

    def evaluate(self, at: DyadicInterval) -> DyadicInterval:
        acc = DyadicInterval.exact(0, at.prec)
        for c in reversed(self.coords):
            acc = acc * at + DyadicInterval.exact(c, at.prec)
        return acc


def _factor_integer_poly(p: Poly) -> list[Poly]:
    """Irreducible factors over Q of a square-free integer polynomial."""
    import sympy

    x = sympy.Symbol("x")
    expr = sum(int(c) * x ** i for i, c in enumerate(p.coeffs))
    _, factors = sympy.factor_list(expr, x)
    out = []
    for f, _mult in factors:
        cs = sympy.Poly(f, x).all_coeffs()[::-1]
        out.append(Poly([int(c) for c in cs]).primitive())
    out.sort(key=lambda q: (q.degree, q.coeffs))
    return out


def algebraic_step_bound(alpha, d: int) -> int:
    """Steps after which a non-escaping orbit in a degree-d field must have repeated.

    Non-escaping orbit values are algebraic integers of degree <= d whose real
    conjugates are bounded by R, so their characteristic polynomials have
    k-th coefficient at most C(d, k) R^k in absolute value.
    """
    r = math.ceil(escape_radius_upper(alpha))
    count = 1
    for k in range(1, d + 1):
        count *= 2 * math.comb(d, k) * r ** k + 1
    return d * count + 1


def _escapes(value: AlgebraicModElement, root: RealAlgebraic, r: Number) -> Optional[bool]:
    def decide(prec: int):
        at = root.enclosure(prec)
        v = abs(value.evaluate(at))
        bound = r.enclosure(prec) if isinstance(r, RealAlgebraic) else DyadicInterval.exact(r, prec)
        v, bound = v._align(bound)
        if v.lo > bound.hi:
            return True
        if v.hi <= bound.lo:
            return False
        return None

    return with_doubling(decide, start=128, limit=2048)


def _decide_factor(alpha: Fraction, q: Poly, roots: Sequence[RealAlgebraic]) -> Verdict:
    r = escape_radius(alpha)
    bound = algebraic_step_bound(alpha, q.degree)
    x = AlgebraicModElement.constant(alpha, q)
    c = AlgebraicModElement.generator(q)
    seen: dict[tuple, int] = {}
    k = 0
    while k <= bound:
        if x.coords in seen:
            return Preperiodic(seen[x.coords], k)
        seen[x.coords] = k
        for i, root in enumerate(roots):
            if _escapes(x, root, r):
                return Escaped(k, f"embedding {i} (c ~ {float(root):.12g})")
        x = x.square() + c
        k += 1
    raise RuntimeError("internal error: iteration cap exceeded without a verdict")


def decide_algebraic(alpha, minpoly: Poly) -> list[tuple[RealAlgebraic, Verdict]]:
    """Per-root verdicts for every real root of a monic, square-free, totally real p."""
    alpha = Fraction(alpha)
    if alpha.denominator != 1:
        raise InvalidParameterPolynomial("decide_algebraic requires an integer starting point")
    p = minpoly
    if not (p.is_integral() and p.is_monic()) or not is_squarefree(p):
        raise InvalidParameterPolynomial("not an algebraic integer / not separable")
    if count_real_roots(p) != p.degree:
        raise InvalidParameterPolynomial("parameter polynomial is not totally real")
    out: list[tuple[RealAlgebraic, Verdict]] = []
    for q in _factor_integer_poly(p):
        roots = isolate_real_roots(q)
        verdict = _decide_factor(alpha, q, roots)
        out.extend((root, verdict) for root in roots)
    out.sort(key=lambda item: float(item[0]))
    return out


# the explicit totally real parameter ------------------------------------------

@dataclass(frozen=True)
class ThetaResult:
    theta: Number
    minpoly: Poly
    identity_holds: bool


def theta(alpha) -> ThetaResult:
    """theta = -alpha^2 - 1 - sqrt(alpha^2 + 1) with its quadratic polynomial.

    The identity f_theta^2(alpha) = f_theta^3(alpha) is checked exactly in
    Q[X]/(G), which covers theta and its conjugate at once.
    """
    a = Fraction(alpha)
    s = a * a + 1
    t = RealAlgebraic.quadratic(-s, -1, s)
    g = Poly([a ** 4 + a * a, 2 * s, 1])
    return ThetaResult(t, g, theta_identity(a, g))


def theta_identity(alpha, g: Poly) -> bool:
    c = AlgebraicModElement.generator(g)
    x1 = AlgebraicModElement.constant(Fraction(alpha) ** 2, g) + c
    x2 = x1.square() + c
    x3 = x2.square() + c
    return (x3 - x2).is_zero()
