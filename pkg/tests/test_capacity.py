import math
from fractions import Fraction
from itertools import combinations

import mpmath
import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from prepatlas.arith import RealAlgebraic, alg_compare
from prepatlas.capacity import (CriterionInapplicable, _rational_root, Disc, b_sequence, d_sequence, degree_bound,
                                exact_n_diameter, fekete_optimize, interval_capacity, lemniscate_capacity,
                                log_objective)

SQ2 = RealAlgebraic.quadratic(-2, -1, 2)


def brute_diameter(a, b, n, steps=(64, 8, 8)):
    """n-diameter of [a, b] by coarse grid search over the interior points, then local grid refinement."""
    def score(inner):
        pts = [a, *sorted(inner), b]
        return math.prod(abs(x - y) for x, y in combinations(pts, 2)) ** (2 / (n * (n - 1)))

    grid = np.linspace(a, b, steps[0] + 1)[1:-1]
    best = max(combinations(grid, n - 2), key=score) if n > 2 else ()
    h = (b - a) / steps[0]
    for _ in range(40):
        h /= 2
        moves = [tuple(np.array(best) + h * (np.array(d) - 1)) for d in np.ndindex(*(3,) * (n - 2))]
        best = max([best, *moves], key=score)
    return score(best)


# exact values ------------------------------------------------------------------

def test_d_sequence_examples():
    assert d_sequence(2) == 1
    assert d_sequence(3) == Fraction(1, 16)
    assert d_sequence(4) == Fraction(1, 3125)
    assert b_sequence(2) == 4


def test_interval_capacity_examples():
    assert interval_capacity(0, 1) == Fraction(1, 4)
    cap = interval_capacity(SQ2, 0)
    assert alg_compare(cap, RealAlgebraic.quadratic(Fraction(1, 2), Fraction(1, 4), 2)) == 0
    with pytest.raises(ValueError):
        interval_capacity(1, 0)


def test_n_diameter_examples():
    assert exact_n_diameter(0, 4, 2).contains(4)
    d3 = exact_n_diameter(0, 4, 3)       # 4 * D_3^(1/6) = 16^(1/3)
    assert d3.lower ** 3 <= 16 <= d3.upper ** 3


@pytest.mark.parametrize("n", [2, 3, 4])
def test_n_diameter_against_brute_force(n):
    got = float(exact_n_diameter(0, 1, n).lower)
    assert abs(brute_diameter(0.0, 1.0, n) - got) / got < 1e-4


def test_n_diameters_decrease_to_capacity():
    vals = [float(exact_n_diameter(0, 1, n).upper) for n in range(2, 40)]
    assert all(x > y for x, y in zip(vals, vals[1:]))
    assert all(v > 0.25 for v in vals)


@settings(max_examples=100, deadline=None)
@given(st.fractions(min_value=Fraction(1, 10 ** 30), max_value=10 ** 6), st.integers(1, 200), st.integers(8, 160))
def test_rational_root_encloses(q, k, prec):
    r = _rational_root(q, k, prec)
    assert r.lower ** k <= q <= r.upper ** k and r.hi - r.lo <= 1


def test_lemniscate_examples():
    r = lemniscate_capacity(1, 1)
    assert abs(float(r.lower) - (2 + math.sqrt(2))) < 1e-12
    assert abs(float(lemniscate_capacity(0, 2).lower) - math.sqrt(2)) < 1e-12


@pytest.mark.parametrize("alpha", [Fraction(0), Fraction(1), Fraction(5, 2)])
def test_lemniscate_capacities_decrease_above_one(alpha):
    vals = [lemniscate_capacity(alpha, n) for n in range(1, 12)]
    assert all(v.lower > 1 for v in vals)
    assert all(x.lower > y.upper for x, y in zip(vals, vals[1:]))


# degree bound ----------------------------------------------------------------------

def mp_degree_bound(length, dps=80, cap=64):
    """First n meeting both inequalities, from a_n and b_n in plain high-precision floats.

    ``length`` is a Fraction or a callable returning an mpf at the working precision.
    """
    with mpmath.workdps(dps):
        L = length() if callable(length) else mpmath.mpf(length.numerator) / length.denominator
        d = mpmath.mpf(1)
        a = {}
        for n in range(2, cap + 2):
            if n > 2:
                d *= mpmath.mpf(n) ** n * mpmath.mpf(n - 2) ** (n - 2) / (
                    mpmath.mpf(2) ** (2 * n - 2) * mpmath.mpf(2 * n - 3) ** (2 * n - 3))
            a[n] = L ** (n * (n - 1)) * d
        b = {n: mpmath.mpf(n) ** (2 * n) / mpmath.factorial(n) ** 2 for n in a}
        for n in range(2, cap + 1):
            if a[n] < b[n] and a[n + 1] / a[n] < b[n + 1] / b[n]:
                return n
    return None


def test_degree_bound_matches_mpmath_oracle():
    rep = degree_bound(SQ2, 0)
    assert rep.certified
    assert rep.n0 == mp_degree_bound(lambda: 2 + mpmath.sqrt(2)) == 11
    assert rep.degree_bound == 10


@pytest.mark.parametrize("a,b", [(0, 1), (-1, 1), (0, 3), (Fraction(-7, 2), 0)], ids=str)
def test_degree_bound_rational_intervals(a, b):
    rep = degree_bound(a, b)
    assert rep.certified and rep.n0 == mp_degree_bound(Fraction(b) - Fraction(a))


def test_degree_bound_small_interval_is_small():
    assert degree_bound(0, 1).n0 <= 3


def test_degree_bound_inapplicable():
    with pytest.raises(CriterionInapplicable):
        degree_bound(-2, 2)


def test_degree_bound_table_text():
    rep = degree_bound(SQ2, 0)
    text = rep.table_text()
    assert text.splitlines()[-1] == "n0 = 11"
    assert rep.as_dict()["n0"] == 11 and rep.n0 in rep.admissible


# Fekete points --------------------------------------------------------------------

def test_fekete_interval_matches_exact_diameter():
    conf = fekete_optimize([(0.0, 1.0)], 4)
    assert abs(conf.diameter - float(exact_n_diameter(0, 1, 4).lower)) < 1e-6
    assert conf.points[0] == pytest.approx(0.0, abs=1e-9) and conf.points[-1] == pytest.approx(1.0, abs=1e-9)


@settings(max_examples=15, deadline=None)
@given(st.integers(2, 7), st.integers(0, 100))
def test_fekete_never_beats_exact_diameter(n, seed):
    conf = fekete_optimize([(-1.0, 1.0)], n, restarts=2, seed=seed)
    assert conf.diameter <= float(exact_n_diameter(-1, 1, n).upper) + 1e-9


def test_fekete_disc_points_on_circle():
    conf = fekete_optimize([Disc(0j, 1.0)], 5)
    assert all(abs(abs(z) - 1) < 1e-6 for z in conf.points)
    # roots of unity: d_n of the unit disc is n^(1/(n-1))
    assert conf.diameter == pytest.approx(5 ** (1 / 4), rel=1e-6)


def test_fekete_deterministic_and_threaded():
    a = fekete_optimize([(0.0, 1.0), (2.0, 3.0)], 6, seed=4)
    b = fekete_optimize([(0.0, 1.0), (2.0, 3.0)], 6, seed=4, threads=3)
    assert a == b


def test_log_objective():
    assert log_objective([0.0, 1.0, 3.0]) == pytest.approx(math.log(1) + math.log(3) + math.log(2))
