from fractions import Fraction

import pytest
import sympy
from hypothesis import given, settings
from hypothesis import strategies as st

from prepatlas.arith import (DyadicInterval, ParseError, Poly, RealAlgebraic, X, alg_compare,
                             count_real_roots, isolate_real_roots, parse_interval, parse_number,
                             parse_rational, poly_gcd, refine, squarefree_part, sturm_count)

SQ2 = RealAlgebraic.quadratic(-2, -1, 2)       # -2 - sqrt2
SQ2_PLUS = RealAlgebraic.quadratic(-2, 1, 2)   # -2 + sqrt2
XS = sympy.Symbol("x")


def to_sympy(p: Poly):
    return sum(sympy.Rational(c) * XS ** i for i, c in enumerate(p.coeffs))


# polynomials --------------------------------------------------------------------

def test_poly_arithmetic_matches_sympy():
    p = X ** 3 - 2 * X + Fraction(1, 3)
    q = X ** 2 + 5
    assert sympy.expand(to_sympy(p * q) - to_sympy(p) * to_sympy(q)) == 0
    assert sympy.expand(to_sympy(p - q) - (to_sympy(p) - to_sympy(q))) == 0
    quo, rem = p.divmod(q)
    sq, sr = sympy.div(to_sympy(p), to_sympy(q), XS)
    assert sympy.expand(to_sympy(quo) - sq) == 0 and sympy.expand(to_sympy(rem) - sr) == 0


def test_large_integer_product_uses_same_answer_as_schoolbook():
    p = Poly(list(range(-20, 30)))
    q = Poly([3 ** k - 7 for k in range(40)])
    assert sympy.expand(to_sympy(p * q) - to_sympy(p) * to_sympy(q)) == 0


def test_gcd_and_squarefree():
    p = (X + 1) ** 3 * (X - 2)
    assert poly_gcd(p, p.derivative()).monic() == ((X + 1) ** 2).monic()
    assert squarefree_part(p).monic() == ((X + 1) * (X - 2)).monic()


def test_divides():
    assert (X + 2).divides(X ** 2 + 4 * X + 4)
    assert not (X + 3).divides(X ** 2 + 4 * X + 4)


def test_pretty():
    assert (X ** 2 + 4 * X + 2).pretty() == "X^2 + 4*X + 2"
    assert (-X + Fraction(1, 2)).pretty() == "-X + 1/2"


# Sturm counts and isolation -------------------------------------------------------

def test_sturm_examples():
    assert sturm_count(X ** 2 + 4 * X + 2, -4, 0) == 2
    assert sturm_count(X ** 2 + 1, -10, 10) == 0
    assert sturm_count(X * (X + 1) * (X + 2), -3, 0) == 3


def test_sturm_closed_endpoints_and_algebraic_endpoints():
    p = X * (X + 1) * (X + 2)
    assert sturm_count(p, -2, 0) == 3
    assert sturm_count(p, -1, -1) == 1
    # [-2-sqrt2, 0] contains -3, -2, -1, 0 but not -4
    q = (X + 4) * (X + 3) * (X + 2) * (X + 1) * X
    assert sturm_count(q, SQ2, 0) == 4


def test_isolation_examples():
    roots = isolate_real_roots(X ** 2 + 4 * X + 2)
    assert len(roots) == 2
    lo0, hi0 = refine(roots[0], Fraction(1, 10 ** 9))
    lo1, hi1 = refine(roots[1], Fraction(1, 10 ** 9))
    assert abs((lo0 + hi0) / 2 - Fraction("-3.41421356")) < Fraction(1, 10 ** 8)
    assert abs((lo1 + hi1) / 2 - Fraction("-0.58578644")) < Fraction(1, 10 ** 8)
    assert isolate_real_roots(X ** 2 + 1) == []
    (r,) = isolate_real_roots(X ** 3 + 2 * X ** 2 + X + 1)
    assert -2 < float(r) < -1 and abs(float(r) + 1.7549) < 1e-4


def test_compare_examples():
    assert alg_compare(SQ2, Fraction(-7, 2)) == 1
    a = RealAlgebraic.from_poly(X ** 2 - 2, 1, 2)
    b = RealAlgebraic.from_poly(X ** 2 - 2, Fraction(5, 4), Fraction(3, 2))
    assert alg_compare(a, b) == 0
    assert alg_compare(0, SQ2_PLUS) == 1


def test_refine_examples():
    lo, hi = refine(SQ2, Fraction(1, 1000))
    assert hi - lo < Fraction(1, 1000) and abs(lo - Fraction("-3.41421356")) < Fraction(1, 1000)
    assert refine(Fraction(1, 2), Fraction(1, 10)) == (Fraction(1, 2), Fraction(1, 2))
    r5 = RealAlgebraic.from_poly(X ** 2 - 5, 2, 3)
    lo, hi = refine(r5, Fraction(1, 100))
    assert hi - lo < Fraction(1, 100) and abs(lo - Fraction("2.2360")) < Fraction(1, 100)


def test_quadratic_collapses_to_rational():
    assert RealAlgebraic.quadratic(1, 1, Fraction(9, 4)) == Fraction(5, 2)


small_int_poly = st.lists(st.integers(-9, 9), min_size=2, max_size=9).filter(lambda c: c[-1] != 0)


@settings(max_examples=60, deadline=None)
@given(small_int_poly)
def test_sturm_count_matches_isolation_and_sympy(coeffs):
    p = Poly(coeffs)
    B = 2 + max(abs(c) for c in coeffs)
    n = sturm_count(p, -B, B)
    assert n == len(isolate_real_roots(p)) == count_real_roots(p)
    assert n == len(set(sympy.Poly(list(reversed(coeffs)), XS).real_roots()))


@settings(max_examples=60, deadline=None)
@given(small_int_poly)
def test_refine_keeps_exactly_one_root(coeffs):
    p = Poly(coeffs)
    for r in isolate_real_roots(p):
        lo, hi = refine(r, Fraction(1, 10 ** 6))
        assert sturm_count(r.minpoly, lo, hi) == 1


@settings(max_examples=40, deadline=None)
@given(st.lists(small_int_poly, min_size=3, max_size=3))
def test_compare_is_a_total_order(polys):
    nums = []
    for c in polys:
        rs = isolate_real_roots(Poly(c))
        nums.append(rs[0] if rs else Fraction(c[0], 3))
    x, y, z = nums
    assert alg_compare(x, y) == -alg_compare(y, x)
    assert alg_compare(x, x) == 0
    if alg_compare(x, y) <= 0 and alg_compare(y, z) <= 0:
        assert alg_compare(x, z) <= 0
    ordered = sorted(nums, key=float)
    for u, v in zip(ordered, ordered[1:]):
        assert alg_compare(u, v) <= 0 or abs(float(u) - float(v)) < 1e-12


# dyadic intervals --------------------------------------------------------------

@settings(max_examples=200, deadline=None)
@given(st.fractions(min_value=Fraction(1, 10 ** 6), max_value=10 ** 6), st.integers(16, 200))
def test_sqrt_rounds_outward(q, prec):
    s = DyadicInterval.exact(q, prec).sqrt()
    assert s.lower ** 2 <= q <= s.upper ** 2


@settings(max_examples=100, deadline=None)
@given(st.fractions(-100, 100), st.fractions(-100, 100), st.integers(16, 128))
def test_interval_ops_contain_exact_results(a, b, prec):
    A, B = DyadicInterval.exact(a, prec), DyadicInterval.exact(b, prec)
    assert (A + B).contains(a + b)
    assert (A - B).contains(a - b)
    assert (A * B).contains(a * b)
    if b != 0 and not B.contains_zero():
        assert (A / B).contains(a / b)


# parsing -----------------------------------------------------------------------

def test_parse_rational():
    assert parse_rational("3/2") == Fraction(3, 2)
    assert parse_rational("-0.25") == Fraction(-1, 4)
    with pytest.raises(ParseError):
        parse_rational("1e3")
    with pytest.raises(ParseError):
        parse_rational("1/0")


def test_parse_surds():
    assert alg_compare(parse_number("-2-sqrt2"), SQ2) == 0
    assert alg_compare(parse_number("sqrt(5)/2"), RealAlgebraic.quadratic(0, Fraction(1, 2), 5)) == 0
    assert alg_compare(parse_number("1/2+3/4*sqrt5"), RealAlgebraic.quadratic(Fraction(1, 2), Fraction(3, 4), 5)) == 0
    assert parse_number("sqrt4") == 2
    with pytest.raises(ParseError):
        parse_number("sqrt2+sqrt3")
    a, b = parse_interval("-2-sqrt2,0")
    assert alg_compare(a, SQ2) == 0 and b == 0
