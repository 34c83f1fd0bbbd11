"""Totally real preperiodic parameters for integer starting points.

Pipeline: real slice -> degree bound n0 -> every algebraic integer of degree
below n0 with all conjugates in the slice -> exact orbit decision for each
irreducible candidate.

The enumeration rests on Kronecker's theorem: a totally real algebraic
integer with all conjugates in [t, t+4] equals zeta + 1/zeta + t + 2 for a
root of unity zeta.  So the candidates are the minimal polynomials of those
numbers (a finite list once the degree is bounded) and their products.
"""
from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from itertools import combinations
from typing import Optional

from .arith import (
    IntervalSet,
    Number,
    Poly,
    RealAlgebraic,
    alg_compare,
    count_real_roots,
    endpoint_json,
    is_squarefree,
    sturm_count,
)
from .capacity import degree_bound
from .orbit import BudgetExhausted, Escaped, Preperiodic, decide_algebraic, prep_poly, real_slice


class KroneckerFormError(ValueError):
    pass


class UnsupportedAlpha(ValueError):
    pass


# cyclotomic and shifted Chebyshev polynomials --------------------------------------

@lru_cache(maxsize=None)
def cyclotomic(n: int) -> Poly:
    """The n-th cyclotomic polynomial, by dividing X^n - 1 by Phi_d for d | n, d < n."""
    if n < 1:
        raise ValueError("n must be positive")
    p = Poly([-1] + [0] * (n - 1) + [1])
    for d in range(1, n):
        if n % d == 0:
            q = p.exact_div(cyclotomic(d))
            assert q is not None
            p = q
    return p


def totient(n: int) -> int:
    result, m, p = n, n, 2
    while p * p <= m:
        if m % p == 0:
            while m % p == 0:
                m //= p
            result -= result // p
        p += 1
    if m > 1:
        result -= result // m
    return result


@lru_cache(maxsize=None)
def _chebyshev_t(j: int) -> Poly:
    """z^j + z^-j as a polynomial in y = z + 1/z."""
    if j == 0:
        return Poly([2])
    if j == 1:
        return Poly([0, 1])
    return _chebyshev_t(j - 1) * Poly([0, 1]) - _chebyshev_t(j - 2)


@lru_cache(maxsize=None)
def shifted_chebyshev_minpoly(n: int, shift: int = -2) -> Poly:
    """Minimal polynomial of zeta_n + 1/zeta_n + shift."""
    if n < 1:
        raise ValueError("n must be positive")
    if n <= 2:
        # zeta = 1 or -1: a single rational value
        return Poly([-(2 * (3 - 2 * n) + shift), 1])
    phi = cyclotomic(n)
    k = phi.degree // 2
    c = phi.coeffs
    q = Poly([c[k]])
    for j in range(1, k + 1):
        q = q + _chebyshev_t(j) * c[k + j]
    # root y = X - shift
    return q.shift(-shift)


def kronecker_transform(p: Poly, shift: int = -2) -> Poly:
    """z^deg(p) * p(z + 1/z + shift), an integer polynomial in z."""
    d = p.degree
    inner = Poly([1, shift, 1])
    acc = Poly()
    pw = Poly([1])
    for i, c in enumerate(p.coeffs):
        acc = acc + pw * Poly([0] * (d - i) + [c])
        pw = pw * inner
    return acc


def cyclotomic_factorization(q: Poly) -> Optional[list[int]]:
    """Indices n with q = prod Phi_n (with repetition), or None if q is not such a product."""
    if q.is_zero() or q.lc != 1:
        return None
    out: list[int] = []
    rest = q
    n = 1
    while rest.degree > 0:
        if totient(n) > rest.degree and n > 2 * rest.degree ** 2 + 2:
            return None
        phi = cyclotomic(n)
        if phi.degree <= rest.degree:
            quo = rest.exact_div(phi)
            if quo is not None:
                out.append(n)
                rest = quo
                continue
        n += 1
    return out if rest == Poly([1]) else None


def totally_real_test(p: Poly) -> bool:
    """True iff p is square-free and all of its roots are real."""
    if p.is_zero():
        raise ValueError("zero polynomial")
    return is_squarefree(p) and count_real_roots(p) == p.degree


# enumeration --------------------------------------------------------------------

def kronecker_shift(a: Number, b: Number) -> int:
    """An integer t with [a, b] inside [t, t + 4]."""
    t = math.floor(float(a)) + 1
    while alg_compare(t, a) > 0:
        t -= 1
    if alg_compare(t + 4, b) < 0:
        raise KroneckerFormError("interval not reducible to Kronecker form")
    return t


def kronecker_family(max_degree: int, t: int) -> list[tuple[int, Poly]]:
    """(n, minpoly of zeta_n + 1/zeta_n + t + 2) for every n with degree <= max_degree."""
    shift = t + 2
    out = []
    bound = max(6, 2 * (2 * max_degree) ** 2 + 2)
    for n in range(1, bound + 1):
        deg = 1 if n <= 2 else totient(n) // 2
        if deg <= max_degree:
            out.append((n, shifted_chebyshev_minpoly(n, shift)))
    return out


def _all_roots_inside(p: Poly, a: Number, b: Number) -> bool:
    return sturm_count(p, a, b) == p.degree


def irreducible_candidates(a: Number, b: Number, max_degree: int) -> list[tuple[int, Poly, bool]]:
    """Kronecker family members with a flag telling whether all roots lie in [a, b]."""
    if alg_compare(a, b) > 0:
        raise ValueError("need a <= b")
    t = kronecker_shift(a, b)
    return [(n, p, _all_roots_inside(p, a, b)) for n, p in kronecker_family(max_degree, t)]


def enumerate_candidates(a: Number, b: Number, n0: int) -> list[Poly]:
    """Monic square-free integer polynomials of degree < n0 with all roots in [a, b]."""
    max_degree = n0 - 1
    factors = [p for _, p, inside in irreducible_candidates(a, b, max_degree) if inside]
    factors.sort(key=lambda q: (q.degree, [-c for c in reversed(q.coeffs)]))
    out: list[Poly] = []
    for r in range(1, len(factors) + 1):
        for combo in combinations(factors, r):
            if sum(q.degree for q in combo) > max_degree:
                continue
            prod = Poly([1])
            for q in combo:
                prod = prod * q
            out.append(prod)
    out.sort(key=lambda q: (q.degree, q.coeffs))
    return out


# classification -----------------------------------------------------------------

@dataclass(frozen=True)
class AcceptedFactor:
    poly: Poly
    roots: tuple[Number, ...]
    witness: tuple[int, int]
    divisibility_check: bool

    def as_dict(self) -> dict:
        return {
            "minpoly": self.poly.pretty(),
            "roots": [endpoint_json(r) for r in self.roots],
            "witness": {"m": self.witness[0], "n": self.witness[1]},
            "divides_prep_poly": self.divisibility_check,
        }


@dataclass(frozen=True)
class RejectedFactor:
    poly: Poly
    reason: str
    detail: str

    def as_dict(self) -> dict:
        return {"minpoly": self.poly.pretty(), "reason": self.reason, "detail": self.detail}


@dataclass(frozen=True)
class ClassificationResult:
    alpha: Fraction
    interval: IntervalSet
    degree_bound: int
    candidates_considered: tuple[Poly, ...]
    accepted: tuple[AcceptedFactor, ...]
    rejected: tuple[RejectedFactor, ...]
    product_candidates: int
    notes: tuple[str, ...] = field(default=())

    def accepted_parameters(self) -> list[Number]:
        roots = [r for f in self.accepted for r in f.roots]
        return sorted(roots, key=float)

    def as_dict(self) -> dict:
        return {
            "alpha": str(self.alpha),
            "interval": self.interval.to_json(),
            "n0": self.degree_bound,
            "max_degree": self.degree_bound - 1,
            "candidates_considered": [p.pretty() for p in self.candidates_considered],
            "product_candidates": self.product_candidates,
            "accepted": [f.as_dict() for f in self.accepted],
            "accepted_parameters": [endpoint_json(r) for r in self.accepted_parameters()],
            "rejected": [r.as_dict() for r in self.rejected],
            "notes": list(self.notes),
        }

    def report(self) -> str:
        lines = [f"alpha = {self.alpha}", f"real slice: {self.interval}",
                 f"n0 = {self.degree_bound} (degree <= {self.degree_bound - 1})",
                 f"irreducible candidates: {len(self.candidates_considered)}; "
                 f"products with all roots in the slice: {self.product_candidates}",
                 "accepted:"]
        for f in self.accepted:
            roots = ", ".join(_short(r) for r in f.roots)
            lines.append(f"  {f.poly.pretty():<24} roots {roots:<40} witness (m, n) = {f.witness}")
        lines.append("rejected:")
        for r in self.rejected:
            lines.append(f"  {r.poly.pretty():<24} {r.reason}: {r.detail}")
        params = ", ".join(_short(r) for r in self.accepted_parameters())
        lines.append(f"accepted parameters: {{{params}}}")
        lines.extend(f"note: {n}" for n in self.notes)
        return "\n".join(lines)


def _short(x: Number) -> str:
    if isinstance(x, RealAlgebraic):
        return f"{float(x):.12g}"
    return str(Fraction(x))


def _as_numbers(roots) -> tuple[Number, ...]:
    out = []
    for r in roots:
        q = r.rational_value() if r.minpoly.degree == 1 else None
        out.append(q if q is not None else r)
    return tuple(out)


def _decide_factor(alpha: Fraction, p: Poly):
    verdicts = decide_algebraic(alpha, p)
    roots = _as_numbers(r for r, _ in verdicts)
    kinds = {type(v) for _, v in verdicts}
    if kinds == {Preperiodic}:
        m, n = verdicts[0][1].m, verdicts[0][1].n
        if m == 0:
            # psi_k for k >= 1 only sees alpha^2, so a witness with m >= 1 serves +-alpha alike
            m, n = 1, n + 1
        F = prep_poly(alpha, m, n)
        divides = F.exact_div(p) is not None
        if not divides:
            raise AssertionError(f"witness ({m}, {n}) for {p} does not divide F_(m,n)")
        return AcceptedFactor(p, roots, (m, n), divides)
    escaped = [(r, v) for r, v in verdicts if isinstance(v, Escaped)]
    if escaped:
        r, v = escaped[0]
        return RejectedFactor(p, "some root escapes", f"c ~ {_short(_as_numbers([r])[0])} escapes at step {v.step}")
    if any(isinstance(v, BudgetExhausted) for _, v in verdicts):
        raise RuntimeError("undecided orbit")
    raise AssertionError("mixed verdicts across conjugate roots")


def classify_totally_real_prep(alpha, threads: int = 1, cap: Optional[int] = None) -> ClassificationResult:
    """All totally real c for which the integer alpha in {-1, 0, 1} is preperiodic."""
    a = Fraction(alpha)
    if a not in (-1, 0, 1):
        raise UnsupportedAlpha(
            "classification is implemented for alpha in {-1, 0, 1}; for other rationals the "
            "parameters need not be algebraic integers and the question is open")
    slice_ = real_slice(a)
    lo, hi = slice_.hull()
    report = degree_bound(lo, hi) if cap is None else degree_bound(lo, hi, cap=cap)
    if report.n0 is None:
        raise RuntimeError("degree bound criterion found no n0")
    n0 = report.n0
    family = irreducible_candidates(lo, hi, n0 - 1)
    considered = tuple(p for _, p, _ in family)
    inside = [p for _, p, ok in family if ok]
    outside = [RejectedFactor(p, "roots outside interval", f"2cos(2pi k/{n}) family member")
               for n, p, ok in family if not ok]
    if threads > 1:
        with ThreadPoolExecutor(max_workers=threads) as ex:
            decided = list(ex.map(lambda p: _decide_factor(a, p), inside))
    else:
        decided = [_decide_factor(a, p) for p in inside]
    accepted = sorted((d for d in decided if isinstance(d, AcceptedFactor)), key=lambda f: float(min(f.roots, key=float)))
    rejected = [d for d in decided if isinstance(d, RejectedFactor)] + outside
    notes = []
    zero = [f for f in accepted if any(alg_compare(r, 0) == 0 for r in f.roots)]
    if zero and a != 0:
        notes.append("c = 0 is accepted because alpha is a fixed point of f_0 (f_0(+-1) = 1); "
                     "a listing of this set without 0 is incomplete")
    products = len(enumerate_candidates(lo, hi, n0))
    return ClassificationResult(a, slice_, n0, considered, tuple(accepted), tuple(rejected), products, tuple(notes))
