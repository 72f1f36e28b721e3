import math
import warnings
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from aperiodica.cps import PiecewiseLinear, QuadraticScheme, StepWeight, cut_and_project, omega_comb
from aperiodica.errors import PreconditionError
from aperiodica.groups import SpaceDescriptor, VanHoveSpec, integer_range, interval
from aperiodica.measures import (
    BumpFunction,
    PointMeasure,
    Samples,
    almost_periods,
    default_horizons,
    discrepancy_set,
    mean_estimate,
    smooth,
    smooth_many,
    uniform_upper_density,
)
from aperiodica.pointset import PointSet

from oracles import window_count_sup

LINE = VanHoveSpec(SpaceDescriptor.line())
INTS = VanHoveSpec(SpaceDescriptor.integers())
GOLDEN = QuadraticScheme()


def comb(points, lo, hi, weight=1.0):
    return PointMeasure(np.asarray(points, dtype=float), np.full(len(points), weight), interval(lo, hi, "[]"))


def z_comb(n, step=1, offset=0):
    pts = np.arange(-n, n + 1)
    pts = pts[(pts - offset) % step == 0]
    return comb(pts, -n, n)


# --- point measures -------------------------------------------------------------------


def test_point_measure_validation():
    with pytest.raises(PreconditionError):
        PointMeasure(np.array([0.0, 0.0]), np.ones(2), interval(0, 1))
    with pytest.raises(PreconditionError):
        PointMeasure(np.array([0.0]), np.ones(2), interval(0, 1))


def test_tb_bound_and_mass():
    mu = comb([0, 0.5, 0.9, 3], -1, 4)
    assert mu.tb_bound == 3
    assert mu.mass(0, 1) == 3
    assert mu.mass(0, 0.9, True, True) == 3
    assert mu.mass(0, 0.9) == 2


def test_algebra_and_csv():
    a = comb([0, 1], -1, 2)
    b = comb([1, 2], -1, 2, 2.0)
    c = a + b
    assert c.points.tolist() == [0, 1, 2] and c.weights.tolist() == [1, 3, 2]
    assert (a - a).weights.tolist() == [0, 0]
    assert (2 * a).weights.tolist() == [2, 2]
    assert a.to_csv().splitlines() == ["x,re_weight,im_weight", "0.0,1.0,0.0", "1.0,1.0,0.0"]


# --- smoothing ------------------------------------------------------------------------


def test_smooth_single_term():
    r = smooth(BumpFunction.tent(0.5), z_comb(100), 0.25)
    assert r.value == 0.5 and not r.truncated


def test_smooth_zero_measure():
    zero = PointMeasure.zero(interval(-10, 10, "[]"))
    assert smooth(BumpFunction.tent(1), zero, 3.3).value == 0


def test_smooth_tent_vanishes_at_ends():
    assert smooth(BumpFunction.tent(1), z_comb(100, step=2), 1).value == 0


def test_smooth_truncation_flag():
    assert smooth(BumpFunction.tent(1), z_comb(10), 9.5).truncated


def test_unit_bump():
    assert BumpFunction.tent(0.3).is_unit_bump()
    assert not BumpFunction.tent(0.3, 2).is_unit_bump()
    assert not BumpFunction(((-1, 0), (0, 0.5), (1, 0))).is_unit_bump()


# --- means ------------------------------------------------------------------------------


def test_mean_integers_with_translates():
    n_max = 1000
    est = mean_estimate(z_comb(n_max + 2), LINE, n_max, translates=[0, 0.5])
    assert est.value == 1
    for n, spread in est.spreads:
        assert spread <= 1 / n


def test_mean_golden_comb():
    n_max = 10**4
    mu = omega_comb(GOLDEN, StepWeight.indicator(interval(0, 1)), interval(-n_max, n_max, "[]"))
    est = mean_estimate(mu, LINE, n_max)
    assert abs(est.value - 1 / math.sqrt(5)) <= 5 / n_max
    lo, hi = est.envelope
    assert lo <= est.value <= hi


def test_mean_zero():
    assert mean_estimate(PointMeasure.zero(interval(-50, 50, "[]")), LINE, 50).value == 0


def test_mean_patch_too_small_names_patch():
    with pytest.raises(PreconditionError, match=r"\[-12, 12\]"):
        mean_estimate(z_comb(10), LINE, 10, translates=[-2, 2])


def test_default_horizons():
    assert default_horizons(1000) == [1, 2, 5, 10, 20, 50, 100, 200, 500, 1000]
    assert default_horizons(300) == [1, 2, 5, 10, 20, 50, 100, 200, 300]


# --- uniform upper density --------------------------------------------------------------


def test_udens_integers():
    ps = PointSet(np.arange(-2000, 2001), integer_range(-2000, 2000))
    assert uniform_upper_density(ps, INTS, 1000) == 1


def test_udens_progression():
    n_max = 1000
    pts = np.arange(-2000, 2001)
    ps = PointSet(pts[(pts - 2) % 5 == 0], integer_range(-2000, 2000))
    assert abs(uniform_upper_density(ps, INTS, n_max) - 1 / 5) <= 1 / n_max


def test_udens_matches_bruteforce():
    rng = np.random.default_rng(3)
    pts = np.sort(rng.choice(np.arange(0.0, 200.0, 0.5), 80, replace=False))
    ps = PointSet(pts, interval(0, 200, "[]"))
    got = uniform_upper_density(ps, LINE, 20, ns=[20])
    assert got == window_count_sup(pts.tolist(), 40, 0, 200) / 40


# --- almost periods --------------------------------------------------------------------


def test_periods_of_integer_comb():
    f = Samples.of(BumpFunction.tent(0.5), z_comb(300), -250, 250, 0.25)
    ap = almost_periods(f, 0.05, 100)
    assert set(range(0, 101)) <= set(ap.periods)
    assert ap.max_gap == 1


def test_periods_of_zero():
    f = Samples(0.5, np.zeros(400))
    ap = almost_periods(f, 1e-3, 100)
    assert ap.periods == [0.5 * k for k in range(201)]


def test_periods_horizon_too_long():
    with pytest.raises(PreconditionError):
        almost_periods(Samples(1.0, np.zeros(10)), 0.1, 20)


def test_golden_tent_comb_is_almost_periodic():
    # a continuous weight makes the comb strongly almost periodic
    tent = PiecewiseLinear(((0, 0), (Fraction(1, 2), 1), (1, 0)))
    mu = omega_comb(GOLDEN, tent, interval(-1200, 1200, "[]"))
    f = Samples.of(BumpFunction.tent(0.5), mu, -1100, 1100, 0.01)
    ap = almost_periods(f, 0.2, 1000)
    assert len(ap.periods) > 1
    assert ap.max_gap <= 20


# --- discrepancy -----------------------------------------------------------------------


def test_discrepancy_examples():
    a = z_comb(20)
    assert len(discrepancy_set(a, a)) == 0
    odd = discrepancy_set(z_comb(20), z_comb(20, step=2))
    assert odd.points.tolist() == list(range(-19, 20, 2))


def test_discrepancy_patch_mismatch_flags():
    a = comb([0, 1, 2, 3], 0, 3)
    b = comb([0, 1], 0, 1)
    with warnings.catch_warnings(record=True) as w:
        warnings.simplefilter("always")
        d = discrepancy_set(a, b)
    assert w and d.meta["restricted"]
    assert len(d) == 0


# --- properties -------------------------------------------------------------------------

weights = st.lists(st.floats(-5, 5, allow_nan=False), min_size=30, max_size=30)


@given(weights, weights, st.floats(-3, 3), st.floats(-3, 3), st.floats(-10, 10))
def test_smooth_linear(w1, w2, a, b, x):
    pts = np.linspace(-15, 15, 30)
    patch = interval(-20, 20, "[]")
    mu = PointMeasure(pts, np.array(w1), patch)
    nu = PointMeasure(pts, np.array(w2), patch)
    phi = BumpFunction.tent(2.5)
    lhs = smooth(phi, mu * a + nu * b, x).value
    rhs = a * smooth(phi, mu, x).value + b * smooth(phi, nu, x).value
    assert abs(lhs - rhs) <= 1e-12 * (1 + abs(lhs) + abs(rhs)) * 50


@given(
    st.lists(st.fractions(-20, 20, max_denominator=9), min_size=1, max_size=12, unique=True),
    st.fractions(-5, 5, max_denominator=7),
    st.fractions(-10, 10, max_denominator=5),
)
def test_smooth_translation_covariant_exact(points, t, x):
    pts = np.array(sorted(points), dtype=object)
    mu = PointMeasure(pts, np.array([Fraction(1, i + 1) for i in range(len(pts))], dtype=object), interval(-30, 30, "[]"))
    phi = BumpFunction.tent(Fraction(3, 2))
    assert smooth(phi, mu.shifted(t), x + t).value == smooth(phi, mu, x).value


@given(st.lists(st.floats(0, 1), min_size=200, max_size=200), st.data())
def test_mean_monotone_under_domination(w, data):
    pts = np.arange(-100.0, 100.0)
    mu = PointMeasure(pts, np.array(w), interval(-100, 100, "[]"))
    extra = np.array(data.draw(st.lists(st.floats(0, 1), min_size=200, max_size=200)))
    nu = PointMeasure(pts, np.array(w) + extra, mu.patch)
    a = mean_estimate(mu, LINE, 90)
    b = mean_estimate(nu, LINE, 90)
    assert all(x >= 0 for _, x in a.sequence)
    assert all(x <= y for (_, x), (_, y) in zip(a.sequence, b.sequence))


@given(st.lists(st.integers(-400, 400), min_size=1, max_size=300, unique=True))
def test_udens_dominates_mean(points):
    pts = np.array(sorted(points))
    ps = PointSet(pts, integer_range(-400, 400))
    mu = PointMeasure(pts.astype(float), np.ones(len(pts)), interval(-400, 400, "[]"))
    n = 200
    m = mean_estimate(mu, LINE, n, ns=[n]).value
    # integer windows {-n..n} hold one more lattice point than [-n, n); allow that slack
    assert uniform_upper_density(ps, INTS, n, ns=[n]) >= m * (2 * n) / (2 * n + 1) - 1e-12


@given(st.integers(2, 9), st.floats(1e-6, 1.0))
def test_periodic_input_every_multiple(q, eps):
    pitch = 0.25
    base = np.sin(np.arange(q * 4) * 2 * np.pi / (q * 4))
    vals = np.tile(base, 40)
    ap = almost_periods(Samples(pitch, vals), eps, 10 * q)
    assert {k * q for k in range(11)} <= set(ap.periods)


def test_smooth_many_matches_smooth():
    mu = z_comb(30, step=3)
    phi = BumpFunction.tent(2)
    xs = np.linspace(-20, 20, 41)
    np.testing.assert_allclose(smooth_many(phi, mu, xs), [smooth(phi, mu, x).value for x in xs], atol=1e-15)
