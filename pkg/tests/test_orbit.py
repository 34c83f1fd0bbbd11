from fractions import Fraction

import pytest
import sympy
from hypothesis import given, settings
from hypothesis import strategies as st

from prepatlas.arith import Poly, RealAlgebraic, X, alg_compare
from prepatlas.orbit import (BudgetExhausted, DegreeOverflow, Escaped, InvalidParameterPolynomial,
                             Preperiodic, decide_algebraic, decide_rational, escape_radius, prep_poly,
                             psi, real_slice, theta, theta_identity)

SQ2 = RealAlgebraic.quadratic(-2, -1, 2)


def naive(alpha, c, steps=60, max_bits=3000):
    """Hash-set orbit repeat detector; escape only by the archimedean bound."""
    s = alpha * alpha + 1
    seen = {}
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


# escape radius and slice ---------------------------------------------------------

def test_escape_radius_examples():
    assert escape_radius(0) == 2
    r1 = escape_radius(1)
    assert isinstance(r1, RealAlgebraic) and r1.minpoly == X ** 2 - 4 * X + 2 and 3 < float(r1) < 4
    assert escape_radius(Fraction(3, 4)) == Fraction(45, 16)


def test_real_slice_examples():
    assert real_slice(0).hull() == (-2, Fraction(1, 4))
    lo, hi = real_slice(1).hull()
    assert alg_compare(lo, SQ2) == 0 and hi == 0
    lo, hi = real_slice(Fraction(1, 2)).hull()
    assert hi == Fraction(1, 4)
    assert alg_compare(lo, RealAlgebraic.quadratic(Fraction(-5, 4), Fraction(-1, 2), 5)) == 0


# psi and F_{m,n} ------------------------------------------------------------------

def test_psi_examples():
    assert psi(1, 1) == X + 1
    assert psi(1, 2) == X ** 2 + 3 * X + 1
    assert psi(0, 3) == X ** 4 + 2 * X ** 3 + X ** 2 + X


def test_prep_poly_examples():
    assert prep_poly(0, 0, 2) == X ** 2 + X
    assert prep_poly(1, 0, 1) == X
    assert prep_poly(1, 1, 2) == X ** 2 + 2 * X


def test_psi_matches_sympy_iteration():
    c = sympy.Symbol("c")
    for alpha in (Fraction(0), Fraction(1), Fraction(-3, 2)):
        x = sympy.Rational(alpha)
        for n in range(1, 6):
            x = sympy.expand(x ** 2 + c)
            coeffs = sympy.Poly(x, c).all_coeffs()[::-1]
            assert psi(alpha, n) == Poly([Fraction(int(q.p), int(q.q)) for q in coeffs])


def test_degree_cap():
    with pytest.raises(DegreeOverflow):
        psi(1, 20)
    with pytest.raises(ValueError):
        prep_poly(1, 2, 2)


@pytest.mark.parametrize("alpha", [Fraction(0), Fraction(1), Fraction(-2), Fraction(3, 5)])
def test_psi_monic_of_expected_degree(alpha):
    for n in range(1, 11):
        p = psi(alpha, n)
        assert p.degree == 2 ** (n - 1) and p.lc == 1


def test_divisibility_along_orbit():
    for alpha in (0, 1, 2):
        for n in range(1, 9):
            for m in range(n):
                for k in range(0, 9 - n):
                    assert prep_poly(alpha, m, n).divides(prep_poly(alpha, m + k, n + k))


@settings(max_examples=40, deadline=None)
@given(st.fractions(-5, 5, max_denominator=20), st.integers(1, 8))
def test_evenness(alpha, n):
    assert psi(alpha, n) == psi(-alpha, n)


# rational decisions ------------------------------------------------------------

def test_decide_rational_examples():
    rec = decide_rational(1, -3)
    assert rec.verdict == Preperiodic(0, 2) and rec.values == (1, -2)
    assert decide_rational(1, 0).verdict == Preperiodic(0, 1)
    v = decide_rational(1, Fraction(1, 2)).verdict
    assert isinstance(v, Escaped)


def test_decide_rational_budget():
    assert isinstance(decide_rational(0, Fraction(-1, 2), budget=3).verdict, (BudgetExhausted, Escaped))
    with pytest.raises(ValueError):
        decide_rational(0, 1, budget=0)


GRID = sorted({Fraction(a, b) for b in range(1, 13) for a in range(-12, 13)})
ALPHAS = [Fraction(0), Fraction(1, 2), Fraction(-1, 2), Fraction(1), Fraction(-1),
          Fraction(3, 2), Fraction(-3, 2), Fraction(2), Fraction(-2)]


@pytest.mark.parametrize("alpha", ALPHAS, ids=str)
def test_decide_rational_matches_naive_oracle(alpha):
    for c in GRID:
        got = decide_rational(alpha, c).verdict
        ref = naive(alpha, c)
        if ref is None:
            assert isinstance(got, Escaped) and got.witness == "non-archimedean", (alpha, c)
        elif ref[0] == "prep":
            assert got == Preperiodic(ref[1], ref[2]), (alpha, c)
        else:
            assert isinstance(got, Escaped), (alpha, c)


@settings(max_examples=150, deadline=None)
@given(st.fractions(-4, 4, max_denominator=12), st.fractions(-8, 8, max_denominator=144))
def test_decide_rational_even_in_alpha(alpha, c):
    a, b = decide_rational(alpha, c).verdict, decide_rational(-alpha, c).verdict
    assert type(a) is type(b)


# algebraic decisions -----------------------------------------------------------

def test_decide_algebraic_examples():
    out = decide_algebraic(1, X ** 2 + 4 * X + 2)
    assert len(out) == 2 and all(isinstance(v, Preperiodic) for _, v in out)
    (r, v), = decide_algebraic(1, X + 3)
    assert v == Preperiodic(0, 2)
    assert all(isinstance(v, Escaped) for _, v in decide_algebraic(1, X ** 2 - 2))


def test_decide_algebraic_escape_steps():
    out = decide_algebraic(1, X ** 2 + 3 * X + 1)
    assert {v.step for _, v in out if isinstance(v, Escaped)} == {4}


def test_decide_algebraic_rejects_bad_input():
    with pytest.raises(InvalidParameterPolynomial):
        decide_algebraic(1, X ** 2 + 1)
    with pytest.raises(InvalidParameterPolynomial):
        decide_algebraic(1, 2 * X + 1)
    with pytest.raises(InvalidParameterPolynomial):
        decide_algebraic(Fraction(1, 2), X)


def test_decide_algebraic_witness_divides():
    for p in (X ** 2 + 4 * X + 2, X + 1, X + 2):
        for r, v in decide_algebraic(1, p):
            assert p.divides(prep_poly(1, v.m, v.n))


# theta -------------------------------------------------------------------------

def test_theta_examples():
    t0 = theta(0)
    assert t0.theta == -2 and t0.minpoly == X ** 2 + 2 * X and t0.identity_holds
    t1 = theta(1)
    assert alg_compare(t1.theta, SQ2) == 0 and t1.minpoly == X ** 2 + 4 * X + 2
    t = theta(Fraction(3, 2))
    assert t.minpoly == X ** 2 + Fraction(13, 2) * X + Fraction(117, 16)
    assert alg_compare(t.theta, RealAlgebraic.quadratic(Fraction(-13, 4), Fraction(-1, 2), 13)) == 0


@settings(max_examples=50, deadline=None)
@given(st.fractions(Fraction(-199, 100), Fraction(199, 100), max_denominator=1000))
def test_theta_identity_random(alpha):
    assert theta(alpha).identity_holds


def test_theta_identity_detects_wrong_polynomial():
    assert not theta_identity(1, X ** 2 + 4 * X + 3)


def test_theta_is_minus_escape_radius():
    for a in (Fraction(1), Fraction(3, 2), Fraction(2, 7)):
        assert alg_compare(theta(a).theta, escape_radius(a).mul_rational(-1)) == 0
