import math
from fractions import Fraction

import numpy as np
import pytest
import sympy as sp
from hypothesis import given
from hypothesis import strategies as st

from aperiodica.cps import (
    CyclicScheme,
    PAdicScheme,
    PiecewiseLinear,
    ProductScheme,
    QuadraticNumber,
    QuadraticScheme,
    StepWeight,
    TrivialScheme,
    Window,
    character_lift_check,
    cut_and_project,
    density_constant,
    dual_frequencies,
    omega_comb,
    scheme_from_json,
    star,
)
from aperiodica.errors import PreconditionError, UnsupportedError
from aperiodica.groups import (
    SetDescriptor,
    box,
    cyclic_set,
    integer_range,
    interval,
    real_set,
    residue_class,
)
from aperiodica.measures import PointMeasure

from oracles import quadratic_alpha, quadratic_scan

GOLDEN = QuadraticScheme()

# Golden W = [0, 1) on the closed patch [0, 20]; coordinates from the sympy lattice scan over
# |m|, |n| <= 40 (tests/oracles.py: quadratic_scan).
GOLDEN_0_20 = [(0, 0), (1, 1), (2, 2), (2, 3), (3, 4), (4, 5), (4, 6), (5, 7), (5, 8)]


# --- star map ----------------------------------------------------------------------


def test_star_golden_exact():
    y = star(GOLDEN, (1, 1))
    assert y == QuadraticNumber(Fraction(3, 2), Fraction(-1, 2), 5)
    assert float(y) == pytest.approx(0.381966011250105, abs=1e-14)
    _, ac = quadratic_alpha()
    assert sp.simplify(1 + ac - (3 - sp.sqrt(5)) / 2) == 0


def test_star_padic_and_zero():
    assert star(PAdicScheme(3, 4), (7,)) == 7
    assert star(PAdicScheme(3, 4), (-1,)) == 80
    assert star(GOLDEN, (0, 0)) == QuadraticNumber(0, 0, 5)


def test_lattice_point_linear_images():
    lp = GOLDEN.point((3, -2))
    assert lp.direct_value == pytest.approx(3 - 2 * GOLDEN.alpha, abs=1e-12)
    assert lp.star_value == pytest.approx(3 - 2 * GOLDEN.alpha_conj, abs=1e-12)


def test_degenerate_quadratic_rejected():
    with pytest.raises(PreconditionError):
        QuadraticScheme(1, 1, 4, 2)


# --- cut and project -----------------------------------------------------------------


def test_padic_example():
    ps = cut_and_project(PAdicScheme(5, 6), residue_class(2, 1, 5, 6), integer_range(-20, 20))
    assert ps.points.tolist() == [-18, -13, -8, -3, 2, 7, 12, 17]


def test_empty_window():
    for s, W, patch in [
        (GOLDEN, SetDescriptor.empty(GOLDEN.internal_space), interval(-5, 5, "[]")),
        (PAdicScheme(3, 3), SetDescriptor.empty(PAdicScheme(3, 3).internal_space), integer_range(-5, 5)),
    ]:
        assert len(cut_and_project(s, W, patch)) == 0


def test_golden_unit_window_small_patch():
    ps = cut_and_project(GOLDEN, interval(0, 1), interval(0, 20, "[]"))
    assert [tuple(c) for c in ps.coords.tolist()] == GOLDEN_0_20
    assert len(ps) == 9
    assert ps.points[:3] == pytest.approx([0.0, 1 + GOLDEN.alpha, 2 + 2 * GOLDEN.alpha])


def test_boundary_points_exact():
    # star(0, 0) = 0 sits on the closed end, star(1, 0) = 1 on the open end
    ps = cut_and_project(GOLDEN, interval(0, 1), interval(-0.5, 1.5, "[]"))
    assert [tuple(c) for c in ps.coords.tolist()] == [(0, 0)]
    ps = cut_and_project(GOLDEN, interval(0, 1, "(]"), interval(-0.5, 1.5, "[]"))
    assert [tuple(c) for c in ps.coords.tolist()] == [(1, 0)]


def test_unbounded_patch_rejected():
    with pytest.raises(PreconditionError):
        cut_and_project(GOLDEN, interval(0, 1), interval(0, "inf"))
    with pytest.raises(PreconditionError):
        cut_and_project(GOLDEN, interval(0, "inf"), interval(0, 1))


def test_space_mismatch_rejected():
    with pytest.raises(PreconditionError):
        cut_and_project(GOLDEN, residue_class(0, 1, 2, 3), interval(0, 1))


def test_csv_columns():
    ps = cut_and_project(GOLDEN, interval(0, 1), interval(0, 3, "[]"))
    lines = ps.to_csv().splitlines()
    assert lines[0] == "m,n,x,x_star"
    assert lines[2].split(",")[:2] == ["1", "1"]
    assert float(lines[2].split(",")[3]) == pytest.approx(0.381966011250105)


def test_cyclic_and_trivial():
    ps = cut_and_project(CyclicScheme(4), cyclic_set(4, [1, 3]), integer_range(0, 9))
    assert ps.points.tolist() == [1, 3, 5, 7, 9]
    ps = cut_and_project(TrivialScheme(), SetDescriptor.universe(TrivialScheme().internal_space), integer_range(-2, 2))
    assert ps.points.tolist() == [-2, -1, 0, 1, 2]
    tr = TrivialScheme("R", Fraction(1, 2))
    ps = cut_and_project(tr, SetDescriptor.universe(tr.internal_space), interval(0, 2))
    assert ps.points.tolist() == [0.0, 0.5, 1.0, 1.5]


def test_product_scheme():
    s = ProductScheme(GOLDEN, PAdicScheme(3, 4))
    W = box(interval(0, 1), residue_class(1, 1, 3, 4))
    P = box(interval(0, 10, "[]"), integer_range(0, 10))
    ps = cut_and_project(s, W, P)
    left = cut_and_project(GOLDEN, interval(0, 1), interval(0, 10, "[]"))
    right = cut_and_project(PAdicScheme(3, 4), residue_class(1, 1, 3, 4), integer_range(0, 10))
    assert len(ps) == len(left) * len(right)
    assert density_constant(s) == pytest.approx(1 / math.sqrt(5))


# --- omega comb ------------------------------------------------------------------


def test_omega_indicator_is_dirac():
    W = real_set((0, 0.5), (0.75, 1))
    patch = interval(-100, 100, "[]")
    om = omega_comb(GOLDEN, StepWeight.indicator(W), patch)
    ps = cut_and_project(GOLDEN, W, patch)
    assert np.array_equal(om.points, ps.points)
    assert np.all(om.weights == 1)


def test_omega_zero_weight():
    om = omega_comb(GOLDEN, StepWeight.indicator(SetDescriptor.empty(GOLDEN.internal_space)), interval(0, 9))
    assert len(om) == 0
    om = omega_comb(GOLDEN, StepWeight.indicator(interval(0, 1), 0), interval(0, 9))
    assert len(om) == 0


def test_omega_tent_weight():
    tent = PiecewiseLinear(((0, 0), (Fraction(1, 2), 1), (1, 0)))
    om = omega_comb(GOLDEN, tent, interval(0, 3, "[]"))
    x = 1 + GOLDEN.alpha
    assert om.weight_at(om.points[np.argmin(np.abs(om.points - x))]) == pytest.approx(0.763932022500210, abs=1e-12)
    assert tent.integral() == Fraction(1, 2)


def test_omega_rejects_unbounded_weight():
    with pytest.raises(PreconditionError):
        omega_comb(GOLDEN, StepWeight.indicator(interval(0, "inf")), interval(0, 9))


# --- density constant ---------------------------------------------------------------


def test_density_constants():
    assert GOLDEN.density_exact() == QuadraticNumber(0, Fraction(1, 5), 5)
    assert density_constant(GOLDEN) == pytest.approx(1 / math.sqrt(5), abs=1e-15)
    assert density_constant(PAdicScheme(3, 6)) == 1
    assert density_constant(TrivialScheme()) == 1
    assert density_constant(CyclicScheme(6)) == pytest.approx(1 / 6)
    assert density_constant(TrivialScheme("R", 2)) == pytest.approx(0.5)


def test_golden_density_oracle():
    R = 10**4
    ps = cut_and_project(GOLDEN, interval(0, 1), interval(-R, R))
    assert len(ps) / (2 * R) == pytest.approx(1 / math.sqrt(5), abs=5 / R)


def test_padic_density_oracle():
    s = PAdicScheme(3, 6)
    W = SetDescriptor.universe(s.internal_space)
    ps = cut_and_project(s, W, integer_range(-500, 499))
    assert len(ps) / 1000 == density_constant(s) * float(W.measure())


@pytest.mark.parametrize("name", ["golden", "silver", "bronze"])
def test_density_matches_covolume(name):
    s = QuadraticScheme.named(name)
    det = abs(s.alpha_conj - s.alpha)
    assert density_constant(s) == pytest.approx(1 / det, rel=1e-14)


# --- regularity ------------------------------------------------------------------------


def test_window_flags():
    assert Window(interval(0, 1)).is_regular
    assert Window(residue_class(1, 2, 3, 5)).is_regular
    assert not Window(interval(0, 0, "[]")).is_regular
    assert not Window(interval(0, "inf")).is_regular
    assert Window(real_set((0, 1), (2, 3))).boundary_measure == 0


# --- character lifts ------------------------------------------------------------------


def test_dual_pair_symbolic():
    beta, gamma = dual_frequencies(GOLDEN, 1, 1)
    a, ac = quadratic_alpha()
    b_s = a / sp.sqrt(5)
    g_s = ac / sp.sqrt(5)
    assert sp.simplify(b_s - g_s - 1) == 0
    assert sp.simplify(b_s * a - g_s * ac - 1) == 0
    assert float(beta) == pytest.approx(float(b_s), abs=1e-15)
    assert float(gamma) == pytest.approx(float(g_s), abs=1e-15)


def test_lift_dual_pair_passes():
    beta, gamma = dual_frequencies(GOLDEN, 1, 1)
    assert character_lift_check(GOLDEN, beta, gamma, coord_bound=200).passed


def test_lift_trivial_character():
    r = character_lift_check(GOLDEN, 0, 0, coord_bound=50)
    assert r.max_deviation == 0 and r.passed


def test_lift_generic_pair_fails():
    r = character_lift_check(GOLDEN, 0.3, 0.3, coord_bound=100)
    assert r.max_deviation > 0.5 and not r.passed


def test_lift_padic_unsupported():
    with pytest.raises(UnsupportedError):
        character_lift_check(PAdicScheme(3, 4), 0, 0)


# --- config -------------------------------------------------------------------------


@pytest.mark.parametrize(
    "d",
    [
        {"type": "quadratic", "alpha": "golden"},
        {"type": "quadratic", "alpha": {"u": 1, "v": 1, "d": 3, "c": 1}},
        {"type": "padic", "p": 3, "k": 6},
        {"type": "cyclic", "m": 5},
        {"type": "trivial", "over": "Z", "spacing": "1"},
        {"type": "product", "left": {"type": "quadratic", "alpha": "silver"}, "right": {"type": "padic", "p": 2, "k": 8}},
    ],
)
def test_scheme_json_roundtrip(d):
    assert scheme_from_json(scheme_from_json(d).to_json()) == scheme_from_json(d)


# --- properties -----------------------------------------------------------------------

small_fracs = st.fractions(min_value=-2, max_value=2, max_denominator=7)


@st.composite
def windows(draw):
    a = draw(small_fracs)
    w = draw(st.fractions(min_value=Fraction(1, 7), max_value=2, max_denominator=7))
    b = draw(st.sampled_from(["[)", "[]", "()", "(]"]))
    return a, a + w, b


@given(windows(), st.integers(5, 40))
def test_completeness_against_scan(win, R):
    a, b, bounds = win
    got = cut_and_project(GOLDEN, interval(a, b, bounds), interval(-R, R, "[]"))
    expected = quadratic_scan([(a, b, bounds[0] == "[", bounds[1] == "]")], (-R, R, True, True), (-2 * R - 5, 2 * R + 5), (-R - 3, R + 3))
    assert [tuple(c) for c in got.coords.tolist()] == sorted(expected, key=lambda mn: mn[0] + mn[1] * float(quadratic_alpha()[0]))


@given(st.integers(-50, 50), st.integers(-50, 50), st.integers(-50, 50), st.integers(-50, 50))
def test_star_additive(m1, n1, m2, n2):
    assert star(GOLDEN, (m1 + m2, n1 + n2)) == star(GOLDEN, (m1, n1)) + star(GOLDEN, (m2, n2))
    p = PAdicScheme(3, 5)
    assert star(p, (m1 + m2,)) == (star(p, (m1,)) + star(p, (m2,))) % 3**5


@given(windows())
def test_omega_indicator_weight_by_weight(win):
    a, b, bounds = win
    W = interval(a, b, bounds)
    patch = interval(-60, 60, "[]")
    om = omega_comb(GOLDEN, StepWeight.indicator(W), patch)
    dirac = PointMeasure.dirac(cut_and_project(GOLDEN, W, patch))
    assert np.array_equal(om.points, dirac.points) and np.array_equal(om.weights, dirac.weights)


@given(windows())
def test_difference_set_inclusion(win):
    a, b, bounds = win
    W = interval(a, b, bounds)
    lam = cut_and_project(GOLDEN, W, interval(-25, 25, "[]"))
    diffs = {(int(c1[0] - c2[0]), int(c1[1] - c2[1])) for c1 in lam.coords for c2 in lam.coords}
    WW = W.minkowski(W.neg())
    coords = np.array(sorted(diffs), dtype=np.int64).reshape(-1, 2)
    if len(coords):
        assert np.all(GOLDEN.star_in(coords, WW))


@pytest.mark.parametrize("R", [10**2, 10**3, 10**4])
def test_density_convergence(R):
    ps = cut_and_project(GOLDEN, interval(0, 1), interval(-R, R))
    assert abs(len(ps) / (2 * R) - 1 / math.sqrt(5)) <= 5 / R


@given(st.sampled_from([2, 3, 5, 7]), st.integers(1, 3), st.data())
def test_padic_against_integer_scan(p, j, data):
    r = data.draw(st.integers(0, p**j - 1))
    lo = data.draw(st.integers(-300, 0))
    hi = data.draw(st.integers(0, 300))
    ps = cut_and_project(PAdicScheme(p, 6), residue_class(r, j, p, 6), integer_range(lo, hi))
    assert ps.points.tolist() == [n for n in range(lo, hi + 1) if (n - r) % p**j == 0]
