"""Nested interval systems C_n for starting points |alpha| >= 2.

With u(c) = (1 + sqrt(1 - 4c))/2 the larger fixed point of f_c,

    C_n = {c : -u(c) <= f_c^n(alpha) <= u(c)}.

On an interval of C_n the value f_c^n(alpha) sweeps [-u, u], so
C_{n+1} keeps the two ends where |f_c^n(alpha)| >= v(c), the positive
preimage of -u(c).  Equivalently h(c) = f_c^{n+1}(alpha) + u(c) >= 0.  New
endpoints are the two zeros of h inside each interval; they are located by
certified subdivision (interval evaluation of h and h') and then bisected
to the requested width.  Every new endpoint is therefore carried as a
rational bracket with a proven unique crossing, not as an exact algebraic
number.
"""
from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Union

from .arith import (
    DyadicInterval,
    IntervalSet,
    Number,
    Poly,
    RealAlgebraic,
    count_roots_rational,
    poly_gcd,
    refine,
    squarefree_part,
)
from .arith.algebraic import _bisect
from .orbit import escape_radius, prep_poly, psi, theta

DEFAULT_DEPTH_CAP = 12
DEFAULT_EPS = Fraction(1, 10 ** 12)


class CantorError(ValueError):
    pass


# boundary functions ---------------------------------------------------------

def fixed_point_u(c: Union[Fraction, int, DyadicInterval], prec: int = 128) -> DyadicInterval:
    """Enclosure of the larger fixed point (1 + sqrt(1 - 4c))/2 of f_c."""
    if isinstance(c, DyadicInterval):
        if c.upper > Fraction(1, 4):
            raise CantorError("complex fixed points")
        ci = c
    else:
        c = Fraction(c)
        if c > Fraction(1, 4):
            raise CantorError("complex fixed points")
        ci = DyadicInterval.exact(c, prec)
    disc = 1 - ci * 4
    if disc.lo < 0:
        disc = DyadicInterval(0, disc.hi, disc.prec)
    return (disc.sqrt() + 1).half()


def preimage_v(c: Union[Fraction, int, DyadicInterval], prec: int = 128) -> DyadicInterval:
    """Enclosure of v(c) = sqrt(u^2 - 2u), the positive x with f_c(x) = -u(c)."""
    u = fixed_point_u(c, prec)
    ci = c if isinstance(c, DyadicInterval) else DyadicInterval.exact(c, prec)
    if u.upper < 2:
        raise CantorError("v undefined at this parameter")
    # u^2 - 2u = -c - u because u^2 = u - c
    sq = -ci - u
    if sq.hi < 0:
        raise CantorError("v undefined at this parameter")
    if sq.lo < 0:
        sq = DyadicInterval(0, sq.hi, sq.prec)
    v = sq.sqrt()
    if not (v.square() + ci + u).contains_zero():
        raise AssertionError("v(c)^2 + c + u(c) is not certified to vanish")
    return v


# endpoints and levels ---------------------------------------------------------

@dataclass(frozen=True)
class CantorEndpoint:
    """A boundary point of some C_n, bracketed by [lo, hi].

    ``born`` is the first level at which the point is an endpoint; there it
    solves f^born = -u (f^0 = +u for the right end of C_1).  At every later
    level it solves f^n = +u.  ``exact`` holds the value when it is known in
    closed form; ``v_sign`` is the observed sign of f^(born-1) = +/-v.
    """

    lo: Fraction
    hi: Fraction
    born: int
    exact: Optional[Number] = None
    v_sign: int = 0
    synthetic: bool = False

    @property
    def mid(self) -> Fraction:
        return (self.lo + self.hi) / 2

    @property
    def width(self) -> Fraction:
        return self.hi - self.lo

    def tag(self, level: int) -> str:
        if self.synthetic:
            return "synthetic clip at -R-1"
        if level > self.born or (self.born == 0 and level == 0):
            return f"f^{level}=+u"
        vs = {1: "+v", -1: "-v"}.get(self.v_sign, "v")
        return f"f^{level}=-u; f^{level - 1}={vs}"

    def as_number(self) -> Optional[Number]:
        return self.exact

    def to_json(self) -> dict:
        out = {
            "decimal": f"{float(self.mid):.17g}",
            "lo": str(self.lo),
            "hi": str(self.hi),
            "width": str(float(self.width)),
            "born": self.born,
        }
        if self.exact is not None:
            out["exact"] = str(self.exact.minpoly) if isinstance(self.exact, RealAlgebraic) else str(self.exact)
        return out


def _exact_endpoint(x: Number, born: int, eps: Fraction, v_sign: int = 0, synthetic=False) -> CantorEndpoint:
    lo, hi = refine(x, eps)
    return CantorEndpoint(lo, hi, born, x, v_sign, synthetic)


@dataclass(frozen=True)
class CantorLevel:
    alpha: Fraction
    depth: int
    intervals: tuple[tuple[CantorEndpoint, CantorEndpoint], ...]
    eps: Fraction

    def __len__(self):
        return len(self.intervals)

    @property
    def boundary_tags(self) -> list[tuple[str, str]]:
        return [(a.tag(self.depth), b.tag(self.depth)) for a, b in self.intervals]

    def outer(self) -> IntervalSet:
        """Rational intervals containing the true ones."""
        return IntervalSet.of([(a.exact if a.exact is not None else a.lo,
                                b.exact if b.exact is not None else b.hi) for a, b in self.intervals])

    def inner(self) -> IntervalSet:
        """Rational intervals contained in the true ones."""
        return IntervalSet.of([(a.exact if a.exact is not None else a.hi,
                                b.exact if b.exact is not None else b.lo) for a, b in self.intervals])

    def to_json(self) -> dict:
        return {
            "alpha": str(self.alpha),
            "depth": self.depth,
            "eps": str(self.eps),
            "intervals": [
                {"left": a.to_json(), "right": b.to_json(), "tags": [ta, tb]}
                for (a, b), (ta, tb) in zip(self.intervals, self.boundary_tags)
            ],
        }

    def to_csv_rows(self) -> list[list[str]]:
        rows = []
        for i, ((a, b), (ta, tb)) in enumerate(zip(self.intervals, self.boundary_tags)):
            rows.append([str(i), f"{float(a.mid):.17g}", f"{float(b.mid):.17g}",
                         str(float(a.width)), str(float(b.width)), ta, tb])
        return rows


def _endpoint_le(x: CantorEndpoint, y: CantorEndpoint) -> bool:
    """Certified x <= y."""
    return x is y or x.hi <= y.lo or (x.exact is not None and x.exact == y.exact)


def nested_in(inner: CantorLevel, outer: CantorLevel) -> bool:
    """Every interval of ``inner`` lies inside some interval of ``outer``."""
    for a, b in inner.intervals:
        if not any(_endpoint_le(c, a) and _endpoint_le(b, d) for c, d in outer.intervals):
            return False
    return True


# certified evaluation of h(c) = f_c^k(alpha) + u(c) ------------------------------

def _prec_for(lo: Fraction, hi: Fraction) -> int:
    w = hi - lo
    if w <= 0:
        return 128
    bits = max(0, (w.denominator.bit_length() - w.numerator.bit_length()))
    return max(128, bits + 96)


def _h_point(alpha: Fraction, k: int, c: Fraction) -> Optional[int]:
    def decide(prec: int):
        ci = DyadicInterval.exact(c, prec)
        x = DyadicInterval.exact(alpha, prec)
        for _ in range(k):
            x = x.square() + ci
        return (x + fixed_point_u(ci, prec)).sign() or None

    return _with_prec(decide, _prec_for(c, c + abs(c) / (1 << 64) + Fraction(1, 1 << 64)))


def _with_prec(decide, start: int, limit: int = 4096):
    prec = start
    while prec <= limit:
        out = decide(prec)
        if out is not None:
            return out
        prec *= 2
    return None


def _h_enclosures(alpha: Fraction, k: int, lo: Fraction, hi: Fraction):
    """Enclosures of h and h' over [lo, hi] (mean value form intersected with the direct one)."""
    prec = _prec_for(lo, hi)
    J = DyadicInterval.hull(lo, hi, prec)
    m = DyadicInterval.exact((lo + hi) / 2, prec)
    x = DyadicInterval.exact(alpha, prec)
    dx = DyadicInterval.exact(0, prec)
    xm = x
    for _ in range(k):
        dx = x * dx * 2 + 1
        x = x.square() + J
        xm = xm.square() + m
    disc = 1 - J * 4
    s = disc.sqrt()
    u = (s + 1).half()
    du = -s.reciprocal()
    h_direct = x + u
    dh = dx + du
    hm = xm + fixed_point_u(m, prec)
    h_mv = hm + dh * (J - m)
    h = h_direct.intersect(h_mv) or h_mv
    return h, dh


def _split_level_interval(alpha: Fraction, k: int, a: CantorEndpoint, b: CantorEndpoint,
                          eps: Fraction, max_pieces: int = 200000):
    """Zeros of h_k on [a.lo, b.hi], each as a certified bracket of width < eps."""
    roots: list[tuple[Fraction, Fraction]] = []
    stack = [(a.lo, b.hi)]
    pieces = 0
    while stack:
        lo, hi = stack.pop()
        pieces += 1
        if pieces > max_pieces:
            raise CantorError(f"subdivision did not settle at level {k} on [{float(a.lo)}, {float(b.hi)}]")
        h, dh = _h_enclosures(alpha, k, lo, hi)
        if h.lo > 0 or h.hi < 0:
            continue
        if dh.lo > 0 or dh.hi < 0:
            s_lo, s_hi = _h_point(alpha, k, lo), _h_point(alpha, k, hi)
            if s_lo is not None and s_hi is not None:
                if s_lo == s_hi:
                    continue
                roots.append(_bisect_h(alpha, k, lo, hi, s_lo, eps))
                continue
        mid = _dyadic_mid(lo, hi)
        stack.append((mid, hi))
        stack.append((lo, mid))
    roots.sort()
    return roots


def _dyadic_mid(lo: Fraction, hi: Fraction) -> Fraction:
    """A dyadic rational near the midpoint (keeps denominators small)."""
    w = hi - lo
    bits = max(1, w.denominator.bit_length() - w.numerator.bit_length() + 8)
    m = (lo + hi) / 2
    scaled = round(m * (1 << bits))
    out = Fraction(scaled, 1 << bits)
    return out if lo < out < hi else m


def _bisect_h(alpha, k, lo, hi, s_lo, eps):
    while hi - lo >= eps:
        m = _dyadic_mid(lo, hi)
        s = _h_point(alpha, k, m)
        if s is None:
            m = lo + (hi - lo) * Fraction(3, 7)
            s = _h_point(alpha, k, m)
            if s is None:
                raise CantorError("could not decide the sign of h at a bisection point")
        if s == s_lo:
            lo = m
        else:
            hi = m
    return lo, hi


def _f_sign(alpha: Fraction, k: int, lo: Fraction, hi: Fraction) -> int:
    prec = _prec_for(lo, hi)
    J = DyadicInterval.hull(lo, hi, prec)
    x = DyadicInterval.exact(alpha, prec)
    for _ in range(k):
        x = x.square() + J
    return x.sign() or 0


# levels -------------------------------------------------------------------------

def _check_alpha(alpha) -> Fraction:
    a = Fraction(alpha)
    if abs(a) < 2:
        raise CantorError("Cantor construction requires |alpha| >= 2")
    return abs(a)


def _level0(a: Fraction, eps: Fraction) -> CantorLevel:
    right = _exact_endpoint(a - a * a, 0, eps)
    r = escape_radius(a)
    clip = (-r).add_rational(-1) if isinstance(r, RealAlgebraic) else -r - 1
    left = _exact_endpoint(clip, 0, eps, synthetic=True)
    return CantorLevel(a, 0, ((left, right),), eps)


def _level1(a: Fraction, eps: Fraction) -> CantorLevel:
    t = theta(a).theta
    left = _exact_endpoint(t, 1, eps, v_sign=1)
    right = _exact_endpoint(a - a * a, 0, eps)
    return CantorLevel(a, 1, ((left, right),), eps)


def _next_level(level: CantorLevel, threads: int = 1) -> CantorLevel:
    a, k, eps = level.alpha, level.depth + 1, level.eps

    def work(iv):
        left, right = iv
        roots = _split_level_interval(a, k, left, right, eps)
        if len(roots) != 2:
            raise CantorError(
                f"expected two boundary crossings at level {k} in "
                f"[{float(left.mid):.15g}, {float(right.mid):.15g}], found {len(roots)}")
        (l1, h1), (l2, h2) = roots
        if not (left.hi < l1 and h2 < right.lo):
            raise CantorError(f"new endpoints at level {k} are not interior")
        e1 = CantorEndpoint(l1, h1, k, None, _f_sign(a, k - 1, l1, h1))
        e2 = CantorEndpoint(l2, h2, k, None, _f_sign(a, k - 1, l2, h2))
        return [(left, e1), (e2, right)]

    if threads > 1 and len(level.intervals) > 1:
        with ThreadPoolExecutor(max_workers=threads) as ex:
            parts = list(ex.map(work, level.intervals))
    else:
        parts = [work(iv) for iv in level.intervals]
    out = tuple(iv for part in parts for iv in part)
    return CantorLevel(a, k, out, eps)


def cantor_levels(alpha, n: int, eps=DEFAULT_EPS, cap: int = DEFAULT_DEPTH_CAP,
                  threads: int = 1) -> list[CantorLevel]:
    """Levels C_0 .. C_n (C_0 clipped on the left)."""
    a = _check_alpha(alpha)
    if n < 0:
        raise ValueError("depth must be nonnegative")
    if n > cap:
        raise CantorError(f"depth {n} exceeds cap {cap}")
    eps = Fraction(eps)
    if eps <= 0:
        raise ValueError("eps must be positive")
    levels = [_level0(a, eps)]
    if n >= 1:
        levels.append(_level1(a, eps))
    while len(levels) <= n:
        levels.append(_next_level(levels[-1], threads))
    return levels


def cantor_level(alpha, n: int, eps=DEFAULT_EPS, cap: int = DEFAULT_DEPTH_CAP,
                 threads: int = 1) -> CantorLevel:
    return cantor_levels(alpha, n, eps, cap, threads)[-1]


# root localisation --------------------------------------------------------------

@dataclass(frozen=True)
class LocalizationReport:
    alpha: Fraction
    m: int
    n: int
    degree: int
    squarefree_degree: int
    real_roots: int
    per_interval: tuple[int, ...]
    outside: int

    @property
    def ok(self) -> bool:
        return (self.real_roots == self.squarefree_degree
                and self.outside == 0
                and all(c == 1 for c in self.per_interval))

    def as_dict(self) -> dict:
        return {
            "alpha": str(self.alpha), "m": self.m, "n": self.n,
            "degree": self.degree, "squarefree_degree": self.squarefree_degree,
            "real_roots": self.real_roots, "intervals": len(self.per_interval),
            "per_interval": list(self.per_interval), "outside": self.outside, "ok": self.ok,
        }


class LocalizationFailure(CantorError):
    def __init__(self, report: LocalizationReport):
        bad = [i for i, c in enumerate(report.per_interval) if c != 1]
        super().__init__(
            f"root localisation failed for alpha={report.alpha}, m={report.m}, n={report.n}: "
            f"per-interval counts off at {bad[:8]}, outside={report.outside}, "
            f"real={report.real_roots}/{report.squarefree_degree}")
        self.report = report


def _integer_poly(p: Poly) -> Poly:
    return p if p.is_integral() else Poly(p.as_integer_scaled()[1]).primitive()


def _endpoint_poly(alpha: Fraction, e: CantorEndpoint) -> Poly:
    """Exact polynomial vanishing at e (square-free, integer coefficients)."""
    if e.exact is not None:
        x = e.exact
        if isinstance(x, RealAlgebraic):
            return x.minpoly
        q = Fraction(x)
        return Poly([-q.numerator, q.denominator])
    k = e.born
    return squarefree_part(_integer_poly(psi(alpha, k + 1) + psi(alpha, k)))


class _Bracket:
    """Mutable working copy of an endpoint bracket used during localisation."""

    def __init__(self, alpha: Fraction, e: CantorEndpoint):
        self._alpha = alpha
        self.e = e
        self.lo, self.hi = e.lo, e.hi
        self.poly = _endpoint_poly(alpha, e)
        if e.exact is not None and not isinstance(e.exact, RealAlgebraic):
            self.lo = self.hi = Fraction(e.exact)
            return
        # shrink until the exact polynomial has a single sign-changing root inside
        for _ in range(400):
            if (self.poly.sign_at(self.lo) * self.poly.sign_at(self.hi) < 0
                    and count_roots_rational(self.poly, self.lo, self.hi) == 1):
                return
            self._shrink_numeric()
        raise CantorError("could not isolate an endpoint by its exact polynomial")

    def _shrink_numeric(self):
        e = self.e
        if isinstance(e.exact, RealAlgebraic):
            self.lo, self.hi = _bisect(e.exact.minpoly, self.lo, self.hi)
            return
        alpha = self._alpha
        s_lo = _h_point(alpha, e.born, self.lo)
        self.lo, self.hi = _bisect_h(alpha, e.born, self.lo, self.hi, s_lo, (self.hi - self.lo) / 3)

    def shrink(self):
        if self.lo == self.hi:
            return
        self.lo, self.hi = _bisect(self.poly, self.lo, self.hi)

    def degenerate(self) -> bool:
        return self.lo == self.hi


def _zero_at(f: Poly, br: _Bracket) -> int:
    """1 if f vanishes at the endpoint itself."""
    if br.degenerate():
        return int(f.sign_at(br.lo) == 0)
    g = poly_gcd(f, br.poly)
    if g.degree <= 0:
        return 0
    return int(count_roots_rational(g, br.lo, br.hi) > 0)


def _settle(f: Poly, br: _Bracket) -> int:
    """Shrink br until the only root of f in it is the endpoint (if any)."""
    z = _zero_at(f, br)
    if br.degenerate():
        return z
    for _ in range(2000):
        if (f.sign_at(br.lo) != 0 and f.sign_at(br.hi) != 0
                and count_roots_rational(f, br.lo, br.hi) == z):
            return z
        br.shrink()
    raise CantorError("could not separate a root from an interval endpoint")


def localize_roots(alpha, m: int, n: int, level: Optional[CantorLevel] = None,
                   eps=DEFAULT_EPS, raise_on_failure: bool = False) -> LocalizationReport:
    """Count roots of squarefree(F_{m,n}) in each interval of C_n and outside their union."""
    a = _check_alpha(alpha)
    if not 0 <= m < n:
        raise ValueError("need 0 <= m < n")
    if level is None:
        level = cantor_level(a, n, eps)
    elif level.depth != n or level.alpha != a:
        raise ValueError("level does not match (alpha, n)")
    F = prep_poly(a, m, n)
    f = squarefree_part(_integer_poly(F))
    total = count_roots_rational(f, None, None)
    brackets: dict[int, _Bracket] = {}

    def br(e: CantorEndpoint) -> _Bracket:
        key = id(e)
        if key not in brackets:
            brackets[key] = _Bracket(a, e)
        return brackets[key]

    counts = []
    for left, right in level.intervals:
        bl, brr = br(left), br(right)
        zl, zr = _settle(f, bl), _settle(f, brr)
        inner = count_roots_rational(f, bl.hi, brr.lo, closed=False)
        if f.sign_at(brr.lo) == 0:
            inner -= 1
        counts.append(inner + zl + zr)
    report = LocalizationReport(a, m, n, F.degree, f.degree, total, tuple(counts), total - sum(counts))
    if raise_on_failure and not report.ok:
        raise LocalizationFailure(report)
    return report
