"""Logarithmic capacity: exact interval and lemniscate values, n-diameters,
a Fekete point optimizer, and the degree bound criterion built on

    a_n = d_n([a, b])^(n(n-1)) = (b - a)^(n(n-1)) D_n,    b_n = n^(2n) / n!^2.

If a_{n0} < b_{n0} and a_{n0+1}/a_{n0} < b_{n0+1}/b_{n0}, every algebraic
integer whose conjugates all lie in [a, b] has degree below n0.
"""
from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Optional, Sequence, Union

import numpy as np

from .arith import DyadicInterval, default_precision, IntervalSet, Number, RealAlgebraic, alg_compare, endpoint_enclosure
from .orbit import escape_radius

DEFAULT_N0_CAP = 64
_GOLDEN = (math.sqrt(5) - 1) / 2


class CriterionInapplicable(ValueError):
    pass


# exact capacities ------------------------------------------------------------

def _difference(b: Number, a: Number) -> Number:
    """b - a when at most one of them is irrational."""
    if isinstance(a, RealAlgebraic) and isinstance(b, RealAlgebraic):
        if alg_compare(a, b) == 0:
            return Fraction(0)
        raise NotImplementedError("difference of two irrational endpoints")
    if isinstance(b, RealAlgebraic):
        return b.add_rational(-Fraction(a))
    if isinstance(a, RealAlgebraic):
        return (-a).add_rational(Fraction(b))
    return Fraction(b) - Fraction(a)


def interval_length(a: Number, b: Number) -> Number:
    if alg_compare(a, b) >= 0:
        raise ValueError("need a < b")
    return _difference(b, a)


def interval_capacity(a: Number, b: Number) -> Number:
    """Capacity of [a, b]: a quarter of its length, exactly."""
    length = interval_length(a, b)
    if isinstance(length, RealAlgebraic):
        return length.mul_rational(Fraction(1, 4))
    return Fraction(length) / 4


def lemniscate_capacity(alpha, n: int, prec: int = 128) -> DyadicInterval:
    """Enclosure of R_alpha^(1/2^(n-1)), the capacity of {c : |psi_n(c)| <= R_alpha}."""
    if n < 1:
        raise ValueError("n must be positive")
    r = escape_radius(alpha)
    x = endpoint_enclosure(r, prec)
    for _ in range(n - 1):
        x = x.sqrt()
    return x


def adelic_capacity(archimedean: DyadicInterval) -> DyadicInterval:
    """Capacity product over all places for the sets used here.

    At every finite place the local set is the closed unit disc, of capacity
    exactly 1, so the product reduces to the archimedean factor.
    """
    return archimedean


# the sequences D_n, a_n, b_n ------------------------------------------------------

@lru_cache(maxsize=None)
def d_sequence(n: int) -> Fraction:
    """D_2 = 1, D_n = n^n (n-2)^(n-2) / (2^(2n-2) (2n-3)^(2n-3)) D_{n-1}."""
    if n < 2:
        raise ValueError("n must be at least 2")
    if n == 2:
        return Fraction(1)
    step = Fraction(n ** n * (n - 2) ** (n - 2), 2 ** (2 * n - 2) * (2 * n - 3) ** (2 * n - 3))
    return step * d_sequence(n - 1)


def b_sequence(n: int) -> Fraction:
    return Fraction(n ** (2 * n), math.factorial(n) ** 2)


def _pow(x: DyadicInterval, k: int) -> DyadicInterval:
    """x^k for a nonnegative interval by binary powering."""
    result = DyadicInterval.exact(1, x.prec)
    base = x
    while k:
        if k & 1:
            result = result * base
        k >>= 1
        if k:
            base = base.square()
    return result


def exact_n_diameter(a: Number, b: Number, n: int, prec: int = 128) -> DyadicInterval:
    """Enclosure of d_n([a, b]) = (b - a) D_n^(1/(n(n-1)))."""
    if n < 2:
        raise ValueError("n must be at least 2")
    length = endpoint_enclosure(interval_length(a, b), prec)
    return length * _rational_root(d_sequence(n), n * (n - 1), prec)


def _rational_root(q: Fraction, k: int, prec: int) -> DyadicInterval:
    """Tight enclosure of q^(1/k), q > 0, at ``prec`` fractional bits.

    Seeded in floating point, then settled by exact integer comparisons
    Y^k den <= num 2^(prec k) < (Y+1)^k den.
    """
    import mpmath

    num, den = q.numerator << (prec * k), q.denominator
    with mpmath.workprec(prec + 64):
        y = int(mpmath.floor(mpmath.root(mpmath.mpf(q.numerator) / q.denominator, k) * mpmath.mpf(2) ** prec))
    while y > 0 and y ** k * den > num:
        y -= 1
    while (y + 1) ** k * den <= num:
        y += 1
    hi = y if y ** k * den == num else y + 1
    return DyadicInterval(y, hi, prec)


# degree bound criterion ---------------------------------------------------------

@dataclass(frozen=True)
class CriterionRow:
    """One row of the criterion table; a_n is enclosed by [a_lo, a_hi]."""

    n: int
    a_lo: Fraction
    a_hi: Fraction
    b_n: Fraction
    first: Optional[bool]
    second: Optional[bool]

    def as_dict(self) -> dict:
        return {
            "n": self.n,
            "a_n": {"lo": f"{float(self.a_lo):.12e}", "hi": f"{float(self.a_hi):.12e}",
                    "width": f"{float(self.a_hi - self.a_lo):.3e}"},
            "b_n": {"exact": str(self.b_n), "decimal": f"{float(self.b_n):.12e}"},
            "a_n<b_n": self.first,
            "ratio_test": self.second,
        }


@dataclass(frozen=True)
class CriterionReport:
    interval: tuple
    n0: Optional[int]
    table: tuple[CriterionRow, ...]
    certified: bool
    admissible: tuple[int, ...] = field(default=())

    @property
    def degree_bound(self) -> Optional[int]:
        """Largest degree still allowed: n0 - 1."""
        return None if self.n0 is None else self.n0 - 1

    def as_dict(self) -> dict:
        return {
            "interval": [str(x) for x in self.interval],
            "n0": self.n0,
            "certified": self.certified,
            "admissible": list(self.admissible),
            "table": [row.as_dict() for row in self.table],
        }

    def table_text(self) -> str:
        lines = [f"{'n':>3}  {'a_n lower':>20}  {'a_n upper':>20}  {'b_n':>20}  a<b    ratio"]
        for r in self.table:
            lines.append(f"{r.n:>3}  {float(r.a_lo):>20.12e}  {float(r.a_hi):>20.12e}  "
                         f"{float(r.b_n):>20.12e}  {_yn(r.first):<5}  {_yn(r.second)}")
        lines.append(f"n0 = {self.n0}" if self.n0 is not None else "n0 = none (cap reached)")
        return "\n".join(lines)


def _yn(v: Optional[bool]) -> str:
    return "?" if v is None else ("yes" if v else "no")


def _strict_lt(lo: Fraction, hi: Fraction, q: Fraction) -> Optional[bool]:
    if hi < q:
        return True
    if lo >= q:
        return False
    return None


def _criterion_rows(length: Number, cap: int, prec: int) -> list[CriterionRow]:
    L = endpoint_enclosure(length, prec)
    rows = []
    for n in range(2, cap + 1):
        p = _pow(L, n * (n - 1))
        d = d_sequence(n)
        a_lo, a_hi = p.lower * d, p.upper * d
        q = _pow(L, 2 * n)
        r = d_sequence(n + 1) / d
        b_n = b_sequence(n)
        rows.append(CriterionRow(n, a_lo, a_hi, b_n, _strict_lt(a_lo, a_hi, b_n),
                                 _strict_lt(q.lower * r, q.upper * r, b_sequence(n + 1) / b_n)))
    return rows


def degree_bound(a: Number, b: Number, cap: int = DEFAULT_N0_CAP,
                 prec: Optional[int] = None) -> CriterionReport:
    """Smallest n0 >= 2 meeting both strict inequalities, decided with certified enclosures."""
    length = interval_length(a, b)
    if alg_compare(length, 4) >= 0:
        raise CriterionInapplicable("criterion inapplicable: interval length must be < 4")
    prec = prec or default_precision()
    while True:
        rows = _criterion_rows(length, cap, prec)
        n0 = None
        undecided = False
        for r in rows:
            if r.first is None or r.second is None:
                undecided = True
                break
            if r.first and r.second:
                n0 = r.n
                break
        if not undecided or prec >= 1 << 14:
            break
        prec *= 2
    certified = n0 is not None and not undecided
    if any(r.first is None or r.second is None for r in rows):
        rows_full = _criterion_rows(length, cap, max(4 * prec, 1024))
    else:
        rows_full = rows
    admissible = tuple(r.n for r in rows_full if r.first and r.second)
    shown = rows if n0 is None else rows[: min(len(rows), n0 + 1)]
    return CriterionReport((a, b), n0, tuple(shown), certified, admissible)


# Fekete points ---------------------------------------------------------------

@dataclass(frozen=True)
class FeketeConfiguration:
    points: tuple
    objective: float
    iterations: int
    seed: int

    @property
    def n(self) -> int:
        return len(self.points)

    @property
    def diameter(self) -> float:
        n = self.n
        return math.exp(2 * self.objective / (n * (n - 1)))

    def as_dict(self) -> dict:
        pts = [p if isinstance(p, float) else [p.real, p.imag] for p in self.points]
        return {"points": pts, "objective": self.objective, "d_n": self.diameter,
                "iterations": self.iterations, "seed": self.seed}


@dataclass(frozen=True)
class Disc:
    center: complex
    radius: float

    def project(self, z: complex) -> complex:
        d = z - self.center
        r = abs(d)
        return z if r <= self.radius else self.center + d * (self.radius / r)


def log_objective(points: Sequence) -> float:
    x = np.asarray(points)
    diff = np.abs(x[:, None] - x[None, :])
    iu = np.triu_indices(len(x), 1)
    d = diff[iu]
    if np.any(d == 0):
        return -math.inf
    return float(np.sum(np.log(d)))


def _golden_max(f, lo: float, hi: float, tol: float = 1e-13) -> tuple[float, float]:
    a, b = lo, hi
    c = b - _GOLDEN * (b - a)
    d = a + _GOLDEN * (b - a)
    fc, fd = f(c), f(d)
    while b - a > tol * max(1.0, abs(a) + abs(b)):
        if fc >= fd:
            b, d, fd = d, c, fc
            c = b - _GOLDEN * (b - a)
            fc = f(c)
        else:
            a, c, fc = c, d, fd
            d = a + _GOLDEN * (b - a)
            fd = f(d)
    best = max((f(lo), lo), (f(hi), hi), (fc, c), (fd, d))
    return best[1], best[0]


def _real_segments(intervals: Sequence[tuple[float, float]]) -> list[tuple[float, float]]:
    return [(float(a), float(b)) for a, b in intervals]


def _ascent_real(segments, x: np.ndarray, max_sweeps: int, tol: float) -> tuple[np.ndarray, int]:
    n = len(x)
    sweeps = 0
    prev = log_objective(x)
    for sweeps in range(1, max_sweeps + 1):
        for i in range(n):
            others = [float(o) for o in np.delete(x, i)]

            def f(t, others=others):
                acc = 0.0
                for o in others:
                    d = abs(t - o)
                    if d == 0.0:
                        return -math.inf
                    acc += math.log(d)
                return acc

            best_t, best_v = x[i], f(x[i])
            cuts = sorted(others)
            for lo, hi in segments:
                pts = [lo] + [c for c in cuts if lo < c < hi] + [hi]
                for s, e in zip(pts[:-1], pts[1:]):
                    if e - s <= 0:
                        continue
                    t, v = _golden_max(f, s, e)
                    if v > best_v:
                        best_t, best_v = t, v
            x[i] = best_t
        cur = log_objective(x)
        if cur - prev <= tol * max(1.0, abs(cur)):
            prev = cur
            break
        prev = cur
    return np.sort(x), sweeps


def _ascent_discs(discs: Sequence[Disc], z: np.ndarray, max_sweeps: int, tol: float) -> tuple[np.ndarray, int]:
    def project(w):
        best = None
        for d in discs:
            p = d.project(w)
            if best is None or abs(p - w) < abs(best - w):
                best = p
        return best

    obj = log_objective(z)
    step = 0.1 * max(d.radius for d in discs)
    it = 0
    for it in range(1, max_sweeps + 1):
        diff = z[:, None] - z[None, :]
        np.fill_diagonal(diff, np.inf)
        grad = np.sum(1.0 / np.conj(diff), axis=1)  # gradient of sum_j log|z_i - z_j|
        g = grad / (np.max(np.abs(grad)) or 1.0)
        while step > 1e-15:
            trial = np.array([project(w) for w in z + step * g])
            t_obj = log_objective(trial)
            if t_obj >= obj:
                gain = t_obj - obj
                z, obj = trial, t_obj
                step *= 1.5
                break
            step *= 0.5
        else:
            break
        if gain <= tol * max(1.0, abs(obj)):
            break
    return z, it


def fekete_optimize(target: Union[IntervalSet, Sequence[tuple], Sequence[Disc]], n: int,
                    restarts: int = 8, seed: int = 0, max_sweeps: int = 2000,
                    tol: float = 1e-16, threads: int = 1) -> FeketeConfiguration:
    """Best local maximizer of the log pairwise-distance sum over ``restarts`` seeds."""
    if n < 2:
        raise ValueError("n must be at least 2")
    items = list(target)
    if not items:
        raise ValueError("empty target set")
    discs = isinstance(items[0], Disc)
    segments = None if discs else _real_segments(
        [(float(a), float(b)) for a, b in items])

    def run(r: int) -> FeketeConfiguration:
        rng = np.random.default_rng(seed + r)
        if discs:
            centers = np.array([items[k].center for k in rng.integers(len(items), size=n)], dtype=complex)
            radii = np.array([items[k].radius for k in rng.integers(len(items), size=n)])
            ang = rng.uniform(0, 2 * math.pi, n)
            z0 = centers + 0.5 * radii * np.exp(1j * ang)
            pts, it = _ascent_discs(items, z0, max_sweeps, tol)
            pts = tuple(complex(p) for p in sorted(pts, key=lambda w: (w.real, w.imag)))
        else:
            lengths = np.array([b - a for a, b in segments])
            idx = rng.choice(len(segments), size=n, p=lengths / lengths.sum())
            x0 = np.array([rng.uniform(*segments[k]) for k in idx])
            pts, it = _ascent_real(segments, np.sort(x0), max_sweeps, tol)
            pts = tuple(float(p) for p in pts)
        return FeketeConfiguration(pts, log_objective(np.array(pts)), it, seed + r)

    if threads > 1:
        with ThreadPoolExecutor(max_workers=threads) as ex:
            results = list(ex.map(run, range(restarts)))
    else:
        results = [run(r) for r in range(restarts)]
    return max(results, key=lambda c: (c.objective, -c.seed))
