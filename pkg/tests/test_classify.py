import math
from fractions import Fraction
from itertools import product

import numpy as np
import pytest
import sympy

from prepatlas.arith import Poly, RealAlgebraic, X, alg_compare
from prepatlas.classify import (UnsupportedAlpha, classify_totally_real_prep, cyclotomic, cyclotomic_factorization,
                                enumerate_candidates, irreducible_candidates, kronecker_family, kronecker_shift,
                                kronecker_transform, shifted_chebyshev_minpoly, totally_real_test, totient)
from prepatlas.orbit import prep_poly

XS = sympy.Symbol("x")
SQ2 = RealAlgebraic.quadratic(-2, -1, 2)


def to_sympy(p: Poly):
    return sympy.Poly([sympy.Rational(c) for c in reversed(p.coeffs)], XS)


def key(p: Poly):
    return tuple(p.coeffs)


# cyclotomic and Chebyshev ------------------------------------------------------------

@pytest.mark.parametrize("n", range(1, 61))
def test_cyclotomic_matches_sympy(n):
    assert to_sympy(cyclotomic(n)) == sympy.Poly(sympy.cyclotomic_poly(n, XS), XS)
    assert cyclotomic(n).degree == totient(n) == sympy.totient(n)


def test_shifted_chebyshev_examples():
    assert shifted_chebyshev_minpoly(1) == X
    assert shifted_chebyshev_minpoly(2) == X + 4
    assert shifted_chebyshev_minpoly(3) == X + 3
    assert shifted_chebyshev_minpoly(4) == X + 2
    assert shifted_chebyshev_minpoly(8) == X ** 2 + 4 * X + 2
    assert shifted_chebyshev_minpoly(5) == X ** 2 + 5 * X + 5


@pytest.mark.parametrize("n", range(3, 40))
def test_chebyshev_root_is_shifted_cosine(n):
    p = shifted_chebyshev_minpoly(n)
    assert p.degree == totient(n) // 2
    with_root = [k for k in range(1, n) if math.gcd(k, n) == 1]
    vals = np.array([float(c) for c in p.coeffs][::-1])
    for k in with_root:
        assert abs(np.polyval(vals, 2 * math.cos(2 * math.pi * k / n) - 2)) < 1e-6 * max(1, abs(vals).max())


def test_kronecker_round_trip():
    # every family member up to degree 11 transforms back to a product of cyclotomics
    for n, p in kronecker_family(11, -4):
        q = kronecker_transform(p)
        idx = cyclotomic_factorization(q)
        assert idx is not None and n in idx
    assert cyclotomic_factorization(X ** 2 + 3 * X + 1) is None


def test_kronecker_shift():
    assert kronecker_shift(SQ2, 0) == -4
    assert kronecker_shift(-2, Fraction(1, 4)) == -2
    assert kronecker_shift(Fraction(-1, 2), Fraction(1, 2)) == -1


def test_totally_real_examples():
    assert totally_real_test(X ** 2 + 4 * X + 2)
    assert not totally_real_test(X ** 2 + 1)
    assert not totally_real_test((X + 1) ** 2)
    assert totally_real_test(X ** 3 - 3 * X + 1)


# enumeration against brute force -------------------------------------------------------

def brute_candidates(lo, hi, max_degree, lo_exact=None):
    """Square-free monic integer polynomials with every root in [lo, hi], by direct search.

    Coefficient boxes come from the elementary symmetric functions of roots in
    [lo, hi]; a loose numpy filter is followed by an exact sympy check.  When
    ``lo_exact`` (a sympy number) is given it replaces ``lo`` in the exact check.
    """
    m = max(abs(lo), abs(hi))
    out = set()
    for d in range(1, max_degree + 1):
        boxes = [range(-math.ceil(math.comb(d, k) * m ** k), math.ceil(math.comb(d, k) * m ** k) + 1)
                 for k in range(1, d + 1)]
        for es in product(*boxes):
            coeffs = [1, *es]                       # highest degree first
            r = np.roots(coeffs)
            if np.any(abs(r.imag) > 1e-3) or np.any(r.real < lo - 1e-3) or np.any(r.real > hi + 1e-3):
                continue
            sp = sympy.Poly(coeffs, XS)
            if sympy.degree(sympy.gcd(sp, sp.diff(XS)), XS) > 0:
                continue
            a = lo_exact if lo_exact is not None else sympy.Rational(lo)
            roots = sympy.real_roots(sp)
            if len(roots) == d and all(sympy.simplify(x - a) >= 0 and sympy.simplify(hi - x) >= 0 for x in roots):
                out.add(tuple(int(c) for c in reversed(coeffs)))
    return out


def test_enumeration_minus4_0_degree2():
    got = {key(p) for p in enumerate_candidates(-4, 0, 3)}
    assert got == brute_candidates(-4, 0, 2)


def test_enumeration_half_interval():
    assert enumerate_candidates(Fraction(-1, 2), Fraction(1, 2), 4) == [X]


@pytest.mark.slow
def test_enumeration_complete_up_to_degree3():
    got = {key(p) for p in enumerate_candidates(SQ2, 0, 4)}
    assert got == brute_candidates(-2 - math.sqrt(2), 0, 3, lo_exact=-2 - sympy.sqrt(2))


def test_candidate_list_for_alpha1_slice():
    inside = {key(p) for _, p, ok in irreducible_candidates(SQ2, 0, 11) if ok}
    for p in (X, X + 1, X + 2, X + 3, X ** 2 + 4 * X + 2):
        assert key(p) in inside
    assert key(X + 4) not in inside


# classification -----------------------------------------------------------------

def test_classify_alpha0():
    r = classify_totally_real_prep(0)
    assert r.degree_bound == 3
    assert r.accepted_parameters() == [-2, -1, 0]


def test_classify_alpha1():
    r = classify_totally_real_prep(1)
    assert r.degree_bound == 11
    params = r.accepted_parameters()
    assert len(params) == 6
    expected = [SQ2, -3, -2, -1, RealAlgebraic.quadratic(-2, 1, 2), 0]
    assert all(alg_compare(x, y) == 0 for x, y in zip(params, expected))
    assert {key(f.poly) for f in r.accepted} == {key(p) for p in (X, X + 1, X + 2, X + 3, X ** 2 + 4 * X + 2)}
    escaped = {key(f.poly) for f in r.rejected if f.reason == "some root escapes"}
    assert escaped == {key(X ** 2 + 3 * X + 1), key(X ** 3 + 5 * X ** 2 + 6 * X + 1)}


def test_classify_sign_symmetry():
    a = classify_totally_real_prep(1).as_dict()
    b = classify_totally_real_prep(-1).as_dict()
    assert a.pop("alpha") == "1" and b.pop("alpha") == "-1"
    assert a == b


@pytest.mark.parametrize("alpha", [-1, 0, 1])
def test_classify_soundness(alpha):
    r = classify_totally_real_prep(alpha)
    slice_lo, slice_hi = r.interval.hull()
    for f in r.accepted:
        m, n = f.witness
        assert m < n and f.divisibility_check
        # independent check with sympy: the factor divides the iterate difference
        c = sympy.Symbol("c")
        x, orbit = sympy.Integer(alpha), [sympy.Integer(alpha)]
        for _ in range(n):
            x = sympy.expand(x ** 2 + c)
            orbit.append(x)
        F = sympy.Poly(orbit[n] - orbit[m], c)
        assert sympy.rem(F, sympy.Poly(to_sympy(f.poly).as_expr().subs(XS, c), c)).is_zero
        assert to_sympy(prep_poly(alpha, m, n)).as_expr().subs(XS, c).expand() == F.as_expr()
        assert totally_real_test(f.poly)
        for root in f.roots:
            assert alg_compare(slice_lo, root) <= 0 <= alg_compare(slice_hi, root)


def test_classify_rejects_other_alpha():
    with pytest.raises(UnsupportedAlpha):
        classify_totally_real_prep(Fraction(1, 2))
    with pytest.raises(UnsupportedAlpha):
        classify_totally_real_prep(2)


def test_classify_threads_and_json():
    a = classify_totally_real_prep(1)
    b = classify_totally_real_prep(1, threads=4)
    assert a.as_dict() == b.as_dict()
    assert "accepted parameters" in a.report()
