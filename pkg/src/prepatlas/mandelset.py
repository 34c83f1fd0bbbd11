"""Numerical pictures of the generalized Mandelbrot set M(alpha).

``escape_grid`` rasterizes M(alpha) by escape time.  ``prep_roots`` finds all
complex roots of the square-free part of F_{m,n} by Aberth iteration, with F
evaluated along the orbit (the expanded coefficients are far too large for
double precision Horner).  Every root carries two exact certificates computed
from the integer polynomial at the double-precision root: an upper bound on
|F(z)| and an inclusion radius deg(s)*|s(z)/s'(z)| for s = squarefree(F).
Nothing here feeds a classification verdict.
"""
from __future__ import annotations

import csv
import io
import json
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional, Sequence

import numpy as np

from . import kernels
from .arith import Poly, count_real_roots, poly_gcd
from .orbit import DEFAULT_PSI_CAP, escape_radius, escape_radius_upper, prep_poly

GOLDEN_ANGLE = math.pi * (3 - math.sqrt(5))


# escape-time grids --------------------------------------------------------------

@dataclass(frozen=True)
class EscapeGrid:
    alpha: Fraction
    window: tuple[Fraction, Fraction, Fraction, Fraction]
    resolution: tuple[int, int]
    max_iter: int
    bailout: float
    cells: np.ndarray = field(repr=False, compare=False)

    @property
    def sentinel(self) -> int:
        return self.max_iter + 1

    def centers(self) -> tuple[np.ndarray, np.ndarray]:
        return _centers(self.window, self.resolution)

    def cell_of(self, c: complex) -> tuple[int, int]:
        """(row, column) of the cell whose center is nearest to c."""
        re_min, re_max, im_min, im_max = (float(v) for v in self.window)
        w, h = self.resolution
        i = int(math.floor((c.real - re_min) / (re_max - re_min) * w))
        j = int(math.floor((im_max - c.imag) / (im_max - im_min) * h))
        return min(max(j, 0), h - 1), min(max(i, 0), w - 1)

    def contains(self, c: complex) -> bool:
        re_min, re_max, im_min, im_max = (float(v) for v in self.window)
        return re_min <= c.real <= re_max and im_min <= c.imag <= im_max

    def to_pgm(self) -> bytes:
        maxval = min(self.max_iter, 255)
        cells = self.cells.astype(np.int64)
        scaled = np.rint(cells * maxval / self.max_iter).astype(np.int64)
        img = np.where(cells == self.sentinel, 0, np.maximum(scaled, 1))
        w, h = self.resolution
        header = f"P5\n{w} {h}\n{maxval}\n".encode("ascii")
        return header + img.astype(np.uint8).tobytes()

    def to_csv(self) -> str:
        re, im = self.centers()
        buf = io.StringIO()
        wr = csv.writer(buf, lineterminator="\n")
        wr.writerow(["re", "im", "count"])
        for j, y in enumerate(im):
            for i, x in enumerate(re):
                wr.writerow([repr(float(x)), repr(float(y)), int(self.cells[j, i])])
        return buf.getvalue()


def _centers(window, resolution) -> tuple[np.ndarray, np.ndarray]:
    re_min, re_max, im_min, im_max = (float(v) for v in window)
    w, h = resolution
    re = re_min + (np.arange(w) + 0.5) * ((re_max - re_min) / w)
    im = im_max - (np.arange(h) + 0.5) * ((im_max - im_min) / h)
    return np.ascontiguousarray(re), np.ascontiguousarray(im)


def float_bailout(alpha) -> float:
    """R_alpha as a double, rounded up."""
    r = escape_radius_upper(alpha)
    f = float(r)
    return f if Fraction(f) >= r else math.nextafter(f, math.inf)


def escape_grid(alpha, window: Sequence, resolution: tuple[int, int], max_iter: int,
                threads: int = 1, backend: Optional[str] = None) -> EscapeGrid:
    """Escape counts over a window (re_min, re_max, im_min, im_max); row 0 is the top."""
    a = Fraction(alpha)
    win = tuple(Fraction(v) for v in window)
    if len(win) != 4 or not (win[0] < win[1] and win[2] < win[3]):
        raise ValueError("window must satisfy re_min < re_max and im_min < im_max")
    w, h = resolution
    if w < 1 or h < 1:
        raise ValueError("resolution must be at least 1x1")
    if max_iter < 1:
        raise ValueError("max_iter must be at least 1")
    bailout = float_bailout(a)
    re, im = _centers(win, (w, h))
    out = np.empty((h, w), dtype=np.int32)
    k = kernels.backend(backend)
    if threads > 1 and h > 1:
        bands = np.array_split(np.arange(h), min(threads, h))

        def run(rows):
            if len(rows) == 0:
                return
            sub = np.empty((len(rows), w), dtype=np.int32)
            k.escape_rows(float(a), re, np.ascontiguousarray(im[rows]), max_iter, bailout, sub)
            out[rows[0]:rows[-1] + 1] = sub

        with ThreadPoolExecutor(max_workers=threads) as ex:
            list(ex.map(run, bands))
    else:
        k.escape_rows(float(a), re, im, max_iter, bailout, out)
    return EscapeGrid(a, win, (w, h), max_iter, bailout, out)


# roots of F_{m,n} -------------------------------------------------------------------

class RootFindingError(RuntimeError):
    def __init__(self, message: str, partial: "ComplexRootSet"):
        super().__init__(message)
        self.partial = partial


@dataclass(frozen=True)
class ComplexRoot:
    re: float
    im: float
    residual: float
    radius: float

    @property
    def value(self) -> complex:
        return complex(self.re, self.im)


@dataclass(frozen=True)
class ComplexRootSet:
    alpha: Fraction
    m: int
    n: int
    degree: int
    squarefree_degree: int
    roots: tuple[ComplexRoot, ...]
    tol: float
    converged: bool
    iterations: int
    discs_disjoint: bool
    real_roots: Optional[int] = None

    @property
    def source(self) -> tuple:
        return (self.alpha, self.m, self.n)

    def max_residual(self) -> float:
        return max((r.residual for r in self.roots), default=0.0)

    def to_csv(self) -> str:
        buf = io.StringIO()
        wr = csv.writer(buf, lineterminator="\n")
        wr.writerow(["re", "im", "residual", "radius"])
        for r in self.roots:
            wr.writerow([repr(r.re), repr(r.im), f"{r.residual:.6e}", f"{r.radius:.6e}"])
        return buf.getvalue()

    def as_dict(self) -> dict:
        return {
            "alpha": str(self.alpha), "m": self.m, "n": self.n,
            "degree": self.degree, "squarefree_degree": self.squarefree_degree,
            "real_roots": self.real_roots,
            "converged": self.converged, "iterations": self.iterations,
            "discs_disjoint": self.discs_disjoint, "tol": self.tol,
            "roots": [{"re": r.re, "im": r.im, "residual": r.residual, "radius": r.radius}
                      for r in self.roots],
        }

    def to_json(self) -> str:
        return json.dumps(self.as_dict(), indent=2)


def _gaussian_eval(p: Poly, re: float, im: float) -> tuple[int, int, int]:
    """Exact p(z) for the dyadic complex z = re + i*im, as (x, y, e) meaning (x + iy)/2^e."""
    fr, fi = Fraction(re), Fraction(im)
    e = max(fr.denominator.bit_length(), fi.denominator.bit_length()) - 1
    a = int(fr * (1 << e))
    b = int(fi * (1 << e))
    # Horner on (a + ib)/2^e keeping a common denominator 2^(e*k)
    x, y = 0, 0
    shift = 0
    for c in reversed(p.coeffs):
        x, y = x * a - y * b, x * b + y * a
        shift += e
        x += int(c) << shift
    return x, y, shift


def _modulus_upper(x: int, y: int, e: int) -> float:
    """Upper bound (as float) for |x + iy| / 2^e."""
    if x == 0 and y == 0:
        return 0.0
    n2 = x * x + y * y
    r = math.isqrt(n2) + 1
    shift = max(r.bit_length() - 60, 0)
    try:
        return math.ldexp(float((r >> shift) + 1) * (1 + 2 ** -50), shift - e)
    except OverflowError:
        return math.inf


def _exact_certificates(F: Poly, s: Poly, z: complex) -> tuple[float, float]:
    """(upper bound of |F(z)|, inclusion radius deg(s)*|s(z)/s'(z)|) computed exactly."""
    fx, fy, fe = _gaussian_eval(F, z.real, z.imag)
    residual = _modulus_upper(fx, fy, fe)
    sx, sy, se = _gaussian_eval(s, z.real, z.imag)
    dx, dy, de = _gaussian_eval(s.derivative(), z.real, z.imag)
    if sx == 0 and sy == 0:
        return residual, 0.0
    num = (sx * sx + sy * sy) * s.degree ** 2
    den = dx * dx + dy * dy
    if den == 0:
        return residual, math.inf
    # q = num/den * 2^(2de - 2se), bounded above with integer division only
    k = 64 - (num.bit_length() - den.bit_length())
    q = (num << k) // den + 1 if k >= 0 else (num // (den << -k)) + 1
    r = math.sqrt(math.ldexp(float(q), 2 * de - 2 * se - k)) * (1 + 2 ** -40)
    return residual, r


def _initial_guesses(s: Poly, seed: int, attempt: int) -> np.ndarray:
    d = s.degree
    lead = abs(Fraction(s.lc))
    trail = abs(Fraction(s.coeffs[0]))
    ratio = trail / lead
    radius = math.exp(math.log1p(float(ratio)) / d) if ratio < 1e300 else 4.0
    radius *= 1.0 + 0.25 * attempt
    offset = (seed * 0.7548776662466927 + 0.5 * attempt) % 1.0 * 2 * math.pi
    k = np.arange(d)
    return radius * np.exp(1j * (offset + GOLDEN_ANGLE * k)).astype(complex)


def _polish(alpha: float, m: int, n: int, g: Sequence[complex], z: complex) -> complex:
    """A few Newton steps on s = F/g at extended precision."""
    import mpmath

    with mpmath.workdps(40):
        c = mpmath.mpc(z)
        for _ in range(6):
            x, dx = mpmath.mpf(alpha), mpmath.mpc(0)
            xm, dxm = x, dx
            for k in range(1, n + 1):
                dx = 2 * x * dx + 1
                x = x * x + c
                if k == m:
                    xm, dxm = x, dx
            F, dF = x - xm, dx - dxm
            if F == 0:
                break
            gv, dg = mpmath.mpc(0), mpmath.mpc(0)
            for coef in reversed(list(g)):
                dg = dg * c + gv
                gv = gv * c + coef
            ratio = dF / F - dg / gv
            if ratio == 0:
                break
            step = 1 / ratio
            if abs(step) > 1e-6 * max(1, abs(c)):
                break
            c -= step
            if abs(step) < mpmath.mpf(10) ** -30:
                break
        return complex(c)


def aberth_inputs(alpha, m: int, n: int, cap: int = DEFAULT_PSI_CAP) -> tuple[Poly, Poly, Poly, Poly]:
    """(F, integer F, monic gcd(F, F'), square-free part s) for F = F_{m,n}."""
    F = prep_poly(Fraction(alpha), m, n, cap)
    Fi = F if F.is_integral() else Poly(F.as_integer_scaled()[1])
    g = poly_gcd(Fi, Fi.derivative())
    g = g.monic() if g.degree > 0 else Poly([1])
    s = (Fi.exact_div(g) if g.degree > 0 else Fi).primitive()
    return F, Fi, g, (-s if s.lc < 0 else s)


def prep_roots(alpha, m: int, n: int, tol: float = 1e-9, cap: int = DEFAULT_PSI_CAP,
               seed: int = 0, max_iter: int = 2000, retries: int = 3,
               backend: Optional[str] = None, threads: int = 1) -> ComplexRootSet:
    """All distinct complex roots of F_{m,n}, each with an exact residual bound below tol."""
    if tol <= 0:
        raise ValueError("tol must be positive")
    a = Fraction(alpha)
    F, Fi, g, s = aberth_inputs(a, m, n, cap)
    d = s.degree
    gc = np.array([complex(float(c)) for c in g.coeffs], dtype=complex)
    k = kernels.backend(backend)
    z = None
    converged = False
    iters = 0
    for attempt in range(retries + 1):
        z = _initial_guesses(s, seed, attempt)
        iters, converged = k.aberth_orbit(float(a), m, n, gc, z, max_iter, 1e-14)
        if converged:
            break
    assert z is not None
    g_list = [complex(float(c)) for c in g.coeffs]

    def finish(zk: complex) -> ComplexRoot:
        zp = _polish(float(a), m, n, g_list, complex(zk))
        res, rad = _exact_certificates(Fi, s, zp)
        return ComplexRoot(zp.real, zp.imag, res / _int_scale(F), rad)

    if threads > 1:
        with ThreadPoolExecutor(max_workers=threads) as ex:
            roots = list(ex.map(finish, z))
    else:
        roots = [finish(zk) for zk in z]
    disjoint = _discs_disjoint(roots)
    real = count_real_roots(s) if d > 0 else 0
    if disjoint:
        roots = _snap_real(roots, real)
    roots.sort(key=lambda r: (round(r.re, 12), r.im))
    result = ComplexRootSet(a, m, n, F.degree, d, tuple(roots), tol, converged, iters, disjoint, real)
    bad = [r for r in roots if not r.residual <= tol]
    if not converged or bad:
        raise RootFindingError(
            f"root finding did not reach tol={tol} for F_({m},{n}) at alpha={a}: "
            f"{len(bad)} roots above tolerance, converged={converged}", result)
    return result


def _int_scale(F: Poly) -> float:
    """Factor by which the integer-scaled F exceeds F."""
    if F.is_integral():
        return 1.0
    return float(F.as_integer_scaled()[0])


def _discs_disjoint(roots: Sequence[ComplexRoot]) -> bool:
    if len(roots) < 2:
        return True
    zs = np.array([r.value for r in roots])
    rs = np.array([r.radius for r in roots])
    dist = np.abs(zs[:, None] - zs[None, :])
    np.fill_diagonal(dist, np.inf)
    return bool(np.all(dist > rs[:, None] + rs[None, :]))


def _snap_real(roots: list[ComplexRoot], real: int) -> list[ComplexRoot]:
    # every real root lies in its own disc, so a disc that misses the axis holds
    # a non-real root; if exactly `real` discs meet the axis they are the real roots
    near = [abs(r.im) <= r.radius for r in roots]
    if sum(near) != real:
        return roots
    return [ComplexRoot(r.re, 0.0, r.residual, r.radius) if hit else r
            for r, hit in zip(roots, near)]


@dataclass(frozen=True)
class CellCheck:
    root: ComplexRoot
    cell: tuple[int, int]
    count: int
    sentinel: bool


def grid_root_consistency(grid: EscapeGrid, rootset: ComplexRootSet) -> list[CellCheck]:
    """Escape count of the grid cell nearest to each root inside the window.

    Preperiodic parameters never escape, but most of them lie on the boundary of
    M(alpha) and the float orbit of a nearby cell center is free to leave, so
    non-sentinel entries here are expected and say nothing about the roots.
    """
    out = []
    for r in rootset.roots:
        if not grid.contains(r.value):
            continue
        cell = grid.cell_of(r.value)
        count = int(grid.cells[cell])
        out.append(CellCheck(r, cell, count, count == grid.sentinel))
    return out


# disc containment ---------------------------------------------------------------

@dataclass(frozen=True)
class DiscReport:
    radius: float
    max_modulus: float
    slack: float
    ok: bool
    offender: Optional[ComplexRoot]

    def as_dict(self) -> dict:
        out = {"R_alpha": self.radius, "max_modulus": self.max_modulus, "slack": self.slack, "ok": self.ok}
        if self.offender is not None:
            out["offender"] = {"re": self.offender.re, "im": self.offender.im}
        return out


class DiscViolation(AssertionError):
    def __init__(self, report: DiscReport):
        o = report.offender
        super().__init__(f"root {o.re}+{o.im}i has modulus {abs(o.value)} > R = {report.radius}")
        self.report = report


def verify_in_disc(rootset: ComplexRootSet, tol: Optional[float] = None, strict: bool = True) -> DiscReport:
    """Check |root| + inclusion radius <= R_alpha + tol for every root."""
    tol = rootset.tol if tol is None else tol
    r = escape_radius(rootset.alpha)
    R = float(r)
    worst, offender = 0.0, None
    for root in rootset.roots:
        mod = abs(root.value) + (root.radius if math.isfinite(root.radius) else 0.0)
        if mod > worst:
            worst = mod
        if mod > R + tol and offender is None:
            offender = root
    rep = DiscReport(R, worst, R - worst, offender is None, offender)
    if strict and offender is not None:
        raise DiscViolation(rep)
    return rep
