"""The acceptance checks, shared by ``prep-atlas verify-paper`` and the test suite.

Each check returns a ``CheckResult``; the runtime budget is part of the check.
"""
from __future__ import annotations

import itertools
import math
import time
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Optional

from .arith import RealAlgebraic, X, alg_compare, count_real_roots, squarefree_part
from .capacity import (d_sequence, degree_bound, exact_n_diameter, fekete_optimize,
                       interval_capacity, lemniscate_capacity)
from .cantor import cantor_levels, localize_roots, nested_in
from .classify import (classify_totally_real_prep, cyclotomic, cyclotomic_factorization,
                       enumerate_candidates, kronecker_shift, kronecker_transform)
from .mandelset import prep_roots, verify_in_disc
from .orbit import (Escaped, Preperiodic, decide_rational, escape_radius, prep_poly, psi,
                    real_slice, theta)

SQRT2_INTERVAL = (RealAlgebraic.quadratic(-2, -1, 2), Fraction(0))


@dataclass(frozen=True)
class CheckResult:
    number: int
    title: str
    passed: bool
    detail: str
    seconds: float
    budget: float

    def line(self) -> str:
        mark = "PASS" if self.passed else "FAIL"
        return f"[{mark}] {self.number}. {self.title} ({self.seconds:.1f}s / {self.budget:.0f}s): {self.detail}"

    def as_dict(self) -> dict:
        return {"criterion": self.number, "title": self.title, "passed": self.passed,
                "detail": self.detail, "seconds": round(self.seconds, 3), "budget": self.budget}


def _timed(number: int, title: str, budget: float, fn: Callable[[], tuple[bool, str]]) -> CheckResult:
    t0 = time.perf_counter()
    try:
        ok, detail = fn()
    except Exception as exc:  # a crash is a failed criterion, reported like any other
        ok, detail = False, f"{type(exc).__name__}: {exc}"
    dt = time.perf_counter() - t0
    if ok and dt >= budget:
        ok, detail = False, f"{detail}; over the time budget"
    return CheckResult(number, title, ok, detail, dt, budget)


# 1, 2: classification -------------------------------------------------------------

EXPECTED_ALPHA1 = {X, X + 1, X + 2, X + 3, X ** 2 + 4 * X + 2}


def _without_alpha(result) -> dict:
    d = result.as_dict()
    d.pop("alpha")
    return d


def check_classify_alpha1() -> tuple[bool, str]:
    res = classify_totally_real_prep(1)
    polys = {f.poly for f in res.accepted}
    if polys != EXPECTED_ALPHA1:
        return False, f"accepted {sorted(p.pretty() for p in polys)}"
    if not all(f.divisibility_check and f.poly.divides(prep_poly(1, *f.witness)) for f in res.accepted):
        return False, "a witness does not divide its F_(m,n)"
    if not any("c = 0" in n for n in res.notes):
        return False, "no note about the parameter 0"
    params = ", ".join(f"{float(r):.6g}" for r in res.accepted_parameters())
    mirror = classify_totally_real_prep(-1)
    if _without_alpha(mirror) != _without_alpha(res):
        return False, "alpha = -1 output differs"
    return True, f"{{{params}}} with witnesses; identical for alpha = -1; note on 0 present"


def check_classify_alpha0() -> tuple[bool, str]:
    res = classify_totally_real_prep(0)
    got = res.accepted_parameters()
    want = [Fraction(-2), Fraction(-1), Fraction(0)]
    ok = len(got) == 3 and all(not isinstance(g, RealAlgebraic) and g == w for g, w in zip(got, want))
    return ok, "{" + ", ".join(str(g) for g in got) + "}"


# 3: degree bound ----------------------------------------------------------------

def check_degree_bound() -> tuple[bool, str]:
    rep = degree_bound(*SQRT2_INTERVAL)
    row = {r.n: r for r in rep.table}.get(12)
    row_ok = row is not None and row.first is True and row.second is True
    ok = rep.n0 == 12 and rep.certified and row_ok
    detail = f"n0 = {rep.n0} (certified={rep.certified}); expected 12"
    if rep.n0 is not None and rep.n0 != 12:
        detail += f"; both inequalities already hold at n = {rep.n0}"
    return ok, detail


# 4: theta -------------------------------------------------------------------------

THETA_SAMPLES = [Fraction(k, 13) for k in range(-25, 25)]


def check_theta() -> tuple[bool, str]:
    failures = [a for a in THETA_SAMPLES if not theta(a).identity_holds]
    if failures:
        return False, f"identity fails at {failures[:3]}"
    t0 = theta(0)
    if not (t0.theta == -2 and not isinstance(t0.theta, RealAlgebraic)):
        return False, f"theta(0) = {t0.theta}"
    t1 = theta(1)
    if t1.minpoly != X ** 2 + 4 * X + 2 or alg_compare(t1.theta, SQRT2_INTERVAL[0]) != 0:
        return False, f"theta(1) = {t1.theta}"
    return True, f"{len(THETA_SAMPLES)} identities hold; theta(0) = -2; theta(1) = -2-sqrt2"


# 5: escape radius and real slice ----------------------------------------------

def check_escape() -> tuple[bool, str]:
    if escape_radius(0) != 2:
        return False, f"escape_radius(0) = {escape_radius(0)}"
    s0 = real_slice(0)
    if s0.hull() != (Fraction(-2), Fraction(1, 4)) or len(s0) != 1:
        return False, f"real_slice(0) = {s0}"
    s1 = real_slice(1)
    r1 = escape_radius(1)
    outside = [Fraction(k, 30) for k in range(1, 101)]
    assert all(not s1.contains(c) and alg_compare(c, r1) < 0 for c in outside)
    bad = [c for c in outside if not isinstance(decide_rational(1, c).verdict, Escaped)]
    if bad:
        return False, f"not escaped inside |c| < R_1: {bad[:3]}"
    far = 0
    for a in (Fraction(0), Fraction(1), Fraction(3, 2)):
        base = -math.floor(float(escape_radius(a))) - 1
        for k in range(20):
            c = Fraction(base) - Fraction(k, 3)
            if not isinstance(decide_rational(a, c).verdict, Escaped):
                return False, f"alpha={a}, c={c} did not escape"
            far += 1
    return True, f"R_0 = 2, slice(0) = [-2, 1/4]; 100 + {far} samples escape"


# 6: Cantor structure --------------------------------------------------------------

def check_cantor(alphas=(Fraction(2), Fraction(5, 2)), depth: int = 8, loc_depth: int = 6) -> tuple[bool, str]:
    for a in alphas:
        levels = cantor_levels(a, depth)
        for n in range(1, depth + 1):
            if len(levels[n]) != 2 ** (n - 1):
                return False, f"alpha={a}: level {n} has {len(levels[n])} intervals"
            if n > 1 and not nested_in(levels[n], levels[n - 1]):
                return False, f"alpha={a}: level {n} not nested"
        for n in range(1, loc_depth + 1):
            for m in range(n):
                rep = localize_roots(a, m, n, level=levels[n])
                sq = squarefree_part(prep_poly(a, m, n))
                if not rep.ok or count_real_roots(sq) != sq.degree:
                    return False, f"alpha={a}: localisation failed for (m, n) = ({m}, {n})"
    return True, f"2^(n-1) nested intervals to n = {depth}; one root per interval for all m < n <= {loc_depth}"


# 7: capacity -----------------------------------------------------------------------

def _brute_force_three_points(step: Fraction = Fraction(1, 8)) -> tuple[Fraction, tuple]:
    grid = [Fraction(-2) + k * step for k in range(int(4 / step) + 1)]
    best, arg = Fraction(-1), ()
    for x, y, z in itertools.combinations(grid, 3):
        v = ((y - x) * (z - x) * (z - y)) ** 2
        if v > best:
            best, arg = v, (x, y, z)
    return best, arg


def check_capacity() -> tuple[bool, str]:
    caps = [lemniscate_capacity(1, n) for n in range(1, 21)]
    if not all(caps[i + 1].upper < caps[i].lower for i in range(len(caps) - 1)):
        return False, "lemniscate capacities not certified strictly decreasing"
    if not caps[-1].upper - 1 < Fraction(1, 10 ** 4) or not 1 - caps[-1].lower < Fraction(1, 10 ** 4):
        return False, f"n = 20 value {float(caps[-1].mid)}"
    if interval_capacity(-2, 2) != 1:
        return False, "capacity of [-2, 2] is not 1"
    if alg_compare(interval_capacity(*SQRT2_INTERVAL), 1) >= 0:
        return False, "capacity of [-2-sqrt2, 0] not below 1"
    worst = 0.0
    for n in range(3, 9):
        conf = fekete_optimize([(-2, 2)], n)
        exact = float(exact_n_diameter(-2, 2, n).mid)
        worst = max(worst, abs(conf.diameter - exact) / exact)
        if n == 3 and not all(abs(p - q) < 1e-6 for p, q in zip(sorted(x.real for x in conf.points), (-2, 0, 2))):
            return False, f"n = 3 optimum {conf.points}"
    if worst >= 1e-6:
        return False, f"Fekete relative error {worst:.2e}"
    best, arg = _brute_force_three_points()
    if best != 256 or arg != (-2, 0, 2) or 4 ** 6 * d_sequence(3) != 256:
        return False, f"brute force gives {best} at {arg}"
    return True, (f"lemniscate decreasing, n=20 within {float(abs(caps[-1].mid - 1)):.1e} of 1; "
                  f"Fekete rel. error {worst:.1e}; 256 = 4^6 D_3 reproduced")


# 8: Kronecker round trip ---------------------------------------------------------

def check_kronecker(max_degree: int = 11) -> tuple[bool, str]:
    a, b = SQRT2_INTERVAL
    shift = kronecker_shift(a, b) + 2
    cands = enumerate_candidates(a, b, max_degree + 1)
    for p in cands:
        if cyclotomic_factorization(kronecker_transform(p, shift)) is None:
            return False, f"{p.pretty()} does not map to a cyclotomic product"
    if kronecker_transform(X + 2, shift) != cyclotomic(4):
        return False, "X+2 does not map to Phi_4"
    if kronecker_transform(X ** 2 + 4 * X + 2, shift) != cyclotomic(8):
        return False, "X^2+4X+2 does not map to Phi_8"
    return True, f"{len(cands)} candidates of degree <= {max_degree} are cyclotomic products"


# 9: property suites ----------------------------------------------------------------

def naive_orbit(alpha: Fraction, c: Fraction, steps: int = 40, max_bits: int = 4000) -> Optional[tuple]:
    """Plain iteration: ("prep", m, n), ("escaped",) or None if undecided."""
    s = alpha * alpha + 1
    seen: dict[Fraction, int] = {}
    x = alpha
    for k in range(steps):
        if x in seen:
            return ("prep", seen[x], k)
        seen[x] = k
        t = abs(x) - s
        if t > 0 and t * t > s:
            return ("escaped",)
        if x.denominator.bit_length() > max_bits:
            return None
        x = x * x + c
    return None


def _grid(limit: int = 12) -> list[Fraction]:
    return sorted({Fraction(p, q) for q in range(1, limit + 1) for p in range(-limit, limit + 1)})


def check_properties() -> tuple[bool, str]:
    for a in (0, 1, 2):
        for n in range(1, 11):
            for m in range(n):
                for k in range(1, 11 - n):
                    if not prep_poly(a, m, n).divides(prep_poly(a, m + k, n + k)):
                        return False, f"F_({m},{n}) does not divide F_({m + k},{n + k}) at alpha={a}"
    for a in (Fraction(1, 3), Fraction(2), Fraction(-7, 5)):
        for n in range(1, 8):
            if psi(a, n) != psi(-a, n):
                return False, f"psi_{n} not even at alpha={a}"
    grid = _grid()
    compared = 0
    for a in grid:
        for c in grid:
            got = decide_rational(a, c).verdict
            ref = naive_orbit(a, c)
            if ref is None:
                if not isinstance(got, Escaped):
                    return False, f"alpha={a}, c={c}: naive undecided, got {got}"
            elif ref[0] == "prep":
                if got != Preperiodic(ref[1], ref[2]):
                    return False, f"alpha={a}, c={c}: {got} vs {ref}"
            elif not isinstance(got, Escaped):
                return False, f"alpha={a}, c={c}: {got} vs escape"
            compared += 1
    roots = 0
    for n in range(1, 9):
        for m in range(n):
            rs = prep_roots(1, m, n, tol=1e-9)
            verify_in_disc(rs, tol=1e-9)
            roots += len(rs.roots)
    return True, (f"divisibility and evenness hold; {compared} rational pairs agree with the naive "
                  f"oracle; {roots} roots inside the R_1 disc")


CHECKS = [
    (1, "classify alpha = 1 (and -1)", 60.0, check_classify_alpha1),
    (2, "classify alpha = 0", 60.0, check_classify_alpha0),
    (3, "degree bound n0 on [-2-sqrt2, 0]", 10.0, check_degree_bound),
    (4, "theta family identity", 5.0, check_theta),
    (5, "escape radius and real slice", 10.0, check_escape),
    (6, "Cantor structure for alpha in {2, 5/2}", 120.0, check_cantor),
    (7, "capacity and Fekete points", 60.0, check_capacity),
    (8, "Kronecker round trip", 10.0, check_kronecker),
    (9, "property suites", 120.0, check_properties),
]


def run_check(number: int) -> CheckResult:
    for num, title, budget, fn in CHECKS:
        if num == number:
            return _timed(num, title, budget, fn)
    raise KeyError(number)


def run_all() -> list[CheckResult]:
    return [_timed(num, title, budget, fn) for num, title, budget, fn in CHECKS]
