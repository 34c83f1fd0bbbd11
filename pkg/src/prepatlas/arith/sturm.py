"""Sturm sequences and exact real-root counting at rational points."""
from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from typing import Optional, Sequence

from .poly import Poly, squarefree_part


class IndeterminateCount(ValueError):
    pass


@lru_cache(maxsize=512)
def _sturm_cached(coeffs: tuple) -> tuple[Poly, ...]:
    p = Poly(coeffs)
    seq = [p, p.derivative().primitive()]
    while seq[-1].degree > 0:
        a, b = seq[-2], seq[-1]
        r = a.prem(b)
        # prem scales by lc(b)^(da-db+1); undo a negative factor
        if b.lc < 0 and (a.degree - b.degree + 1) % 2 == 1:
            r = -r
        if r.is_zero():
            break
        r = -r
        seq.append(r.primitive() if r.lc > 0 else -(r.primitive()))
    return tuple(seq)


def sturm_sequence(p: Poly) -> tuple[Poly, ...]:
    """Sturm chain of the square-free part of ``p``."""
    if p.is_zero():
        raise IndeterminateCount("indeterminate root count")
    return _sturm_cached(squarefree_part(p).coeffs)


def _variations(signs: Sequence[int]) -> int:
    v, last = 0, 0
    for s in signs:
        if s == 0:
            continue
        if last and s != last:
            v += 1
        last = s
    return v


def variations_at(seq: Sequence[Poly], x: Optional[Fraction], at_inf: int = 0) -> int:
    """Sign variations of the chain at x, or at +/- infinity when x is None."""
    if x is None:
        return _variations([q.sign_at_infinity(at_inf > 0) for q in seq])
    return _variations([q.sign_at(x) for q in seq])


def count_roots_rational(p: Poly, a: Optional[Fraction], b: Optional[Fraction],
                         closed: bool = True) -> int:
    """Distinct real roots of p in [a, b] (or (a, b] with closed=False).

    ``None`` stands for -infinity (a) or +infinity (b).
    """
    seq = sturm_sequence(p)
    sf = seq[0]
    if sf.degree <= 0:
        return 0
    if a is not None and b is not None and a > b:
        return 0
    va = variations_at(seq, a, -1)
    vb = variations_at(seq, b, +1)
    n = va - vb
    if closed and a is not None and sf.sign_at(a) == 0:
        n += 1
    return n


def count_real_roots(p: Poly) -> int:
    return count_roots_rational(p, None, None)


def cauchy_bound(p: Poly) -> Fraction:
    """All complex roots of p have modulus strictly below this value."""
    lc = abs(Fraction(p.lc))
    m = max((abs(Fraction(c)) for c in p.coeffs[:-1]), default=Fraction(0))
    return 1 + m / lc
