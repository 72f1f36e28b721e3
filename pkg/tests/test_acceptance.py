"""Acceptance criteria, one test each; every test prints a single PASS/FAIL line.

Run ``python tests/test_acceptance.py`` for the summary alone, or ``pytest -s`` to see the
lines interleaved with the pytest report.
"""
import math
import sys
import time
from fractions import Fraction
from pathlib import Path

import numpy as np
import pytest

sys.path.insert(0, str(Path(__file__).parent))

from aperiodica.cli import run  # noqa: E402
from aperiodica.cps import (  # noqa: E402
    PAdicScheme,
    QuadraticScheme,
    StepWeight,
    character_lift_check,
    cut_and_project,
    omega_comb,
)
from aperiodica.gap import default_bump, gap_certificate, reconstruct_window, t_operator  # noqa: E402
from aperiodica.groups import SpaceDescriptor, VanHoveSpec, integer_range, interval, residue_class  # noqa: E402
from aperiodica.measures import PointMeasure, mean_estimate, uniform_upper_density  # noqa: E402
from aperiodica.meyer import density_bound_check, lambda_theta, m_theta  # noqa: E402

from oracles import integer_scan, quadratic_scan  # noqa: E402

GOLDEN = QuadraticScheme()
SQRT5 = math.sqrt(5)


def report(number, title, ok, detail, elapsed, limit):
    fast = elapsed < limit
    verdict = "PASS" if ok and fast else "FAIL"
    print(f"[{verdict}] criterion {number:>2}: {title}: {detail} ({elapsed:.2f}s, limit {limit}s)")
    return ok and fast


def timed(fn):
    t0 = time.perf_counter()
    ok, detail = fn()
    return ok, detail, time.perf_counter() - t0


# --- criteria ---------------------------------------------------------------------------


def padic_exactness():
    patch = integer_range(-10**4, 10**4)
    xs = np.arange(-10**4, 10**4 + 1)
    bad = []
    for p in (2, 3, 5, 7):
        s = PAdicScheme(p)
        for r in range(p):
            got = cut_and_project(s, residue_class(r, 1, p, s.k), patch).points
            if not np.array_equal(got, xs[xs % p == r]):
                bad.append((p, r))
    return not bad, f"mismatches {bad}" if bad else "all 17 residue classes equal pZ + r"


def density_formula():
    worst, decreasing = 0.0, True
    for ell in (0.3, 1, 1.5):
        errs = []
        for R in (10**2, 10**3, 10**4):
            ps = cut_and_project(GOLDEN, interval(0, ell), interval(-R, R, "[]"))
            errs.append(abs(len(ps) / (2 * R) - ell / SQRT5))
        worst = max(worst, errs[-1] * 10**4)
        decreasing &= errs[0] > errs[1] > errs[2]
    return worst <= 5 and decreasing, f"max R*error at R=1e4 is {worst:.3f} (<= 5), decreasing={decreasing}"


def gap_certificates():
    n_max = 10**4
    patch = interval(-n_max, n_max, "[]")
    ok, parts = True, []
    for eps in (Fraction(1, 10), Fraction(1, 100)):
        c = gap_certificate(GOLDEN, interval(0, 1), eps, patch, n_max=n_max)
        ok &= c.bound_holds_exactly()
        ok &= c.empirical_mean_gap.value <= c.certified_bound + 2 / n_max
        ok &= c.empirical_discrepancy_density <= float(eps) + 2 / n_max
        parts.append(f"eps={float(eps)}: bound {c.certified_bound:.4g}, mean gap {c.empirical_mean_gap.value:.4g}, "
                     f"udens {c.empirical_discrepancy_density:.4g}")
    return bool(ok), "; ".join(parts)


def t_operator_properties():
    patch = interval(-200, 200, "[]")
    lam = cut_and_project(GOLDEN, interval(0, 1), patch)
    gamma = cut_and_project(GOLDEN, interval(-0.5, 1.5, "[]"), patch)
    omega = PointMeasure.dirac(gamma)
    psi = default_bump(gamma)
    r = float(psi.radius)
    fix_err = lin_err = 0.0
    supp_ok = mass_ok = pos_ok = True
    for i in range(100):
        rng = np.random.default_rng([2024, i])
        mu = PointMeasure(lam.points, rng.uniform(0, 2, len(lam)), patch)
        nu = PointMeasure(lam.points, rng.uniform(0, 2, len(lam)), patch)
        tm = t_operator(psi, omega, mu, gamma)
        inner = mu.restrict(tm.patch)
        # (c): same support and weights on the eroded patch
        if tm.points.tolist() != inner.points.tolist():
            fix_err = math.inf
        else:
            fix_err = max(fix_err, float(np.max(np.abs(tm.weights - inner.weights), initial=0)))
        supp_ok &= bool(np.all(np.isin(tm.points, gamma.points)))
        pos_ok &= bool(np.all(tm.weights >= 0))
        lo, hi = (float(t) for t in tm.patch.hull())
        for _ in range(20):
            u, v = np.sort(rng.uniform(lo, hi, 2))
            mass_ok &= bool(tm.mass(u, v, True, True) <= mu.mass(u - r, v + r, True, True))
        a, b = rng.normal(size=2)
        diff = t_operator(psi, omega, mu * a + nu * b, gamma) - (tm * a + t_operator(psi, omega, nu, gamma) * b)
        lin_err = max(lin_err, float(np.max(np.abs(diff.weights), initial=0)))
    ok = fix_err <= 1e-9 and supp_ok and mass_ok and pos_ok and lin_err <= 1e-12
    return ok, (f"fixed-point error {fix_err:.2g}, support in Gamma {supp_ok}, interval bound {mass_ok}, "
                f"positive {pos_ok}, linearity error {lin_err:.2g}")


def lambda_theta_density():
    lam = lambda_theta(math.pi, 2100)
    checks = [density_bound_check(math.pi, t, n, lam) for t in range(0, 1001, 10) for n in (10, 100, 1000)]
    strict = all(c.ok for c in checks)
    prof = []
    for n in (10**2, 10**3, 10**4):
        m = m_theta(math.pi, 4 * n, complete_only=True).restrict(integer_range(0, 2 * n))
        prof.append(uniform_upper_density(m, VanHoveSpec(SpaceDescriptor.integers()), n, ns=[n]))
    ok = strict and prof[-1] < 0.05 and prof[0] > prof[1] > prof[2]
    return ok, f"{len(checks)} strict bounds hold={strict}; udens(M_pi) over n=1e2,1e3,1e4: " + ", ".join(
        f"{u:.4f}" for u in prof)


def character_lift():
    alpha, alpha_c = (1 + SQRT5) / 2, (1 - SQRT5) / 2
    dual = character_lift_check(GOLDEN, alpha / SQRT5, alpha_c / SQRT5, 1000)
    other = character_lift_check(GOLDEN, 0.3, 0.3, 1000)
    ok = dual.max_deviation < 1e-9 and other.max_deviation > 0.5
    return ok, f"dual pair deviation {dual.max_deviation:.2g}, (0.3, 0.3) deviation {other.max_deviation:.3f}"


def window_reconstruction():
    lam = cut_and_project(GOLDEN, interval(0, 1), interval(-10**4, 10**4, "[]"))
    rec = reconstruct_window(GOLDEN, lam)
    n = rec.point_count
    atoms = rec.window_estimate.atoms
    golden_ok = len(atoms) == 1 and abs(float(atoms[0].lo)) <= 10 / n and abs(float(atoms[0].hi) - 1) <= 10 / n
    s = PAdicScheme(2)
    mass = []
    for B in (10**3, 10**4):
        m = m_theta(math.pi, 2 * B + 2, complete_only=True).restrict(integer_range(0, B))
        mass.append(reconstruct_window(s, m).boundary_mass_estimate)
    shrink = mass[0] / mass[1] if mass[1] > 0 else math.inf
    ok = golden_ok and shrink < 2
    return ok, (f"golden endpoints [{float(atoms[0].lo):.3g}, {float(atoms[0].hi):.6f}] with N={n}; "
                f"M_pi boundary mass {mass[0]:.3f} -> {mass[1]:.3f} (shrink {shrink:.2f}x < 2)")


def mean_uniformity():
    n = 1000
    shifts = np.random.default_rng(8).uniform(-100, 100, 8).round(6).tolist()
    patch = interval(-1200, 1200, "[]")
    z = np.arange(-1200, 1201, dtype=float)
    combs = {
        "delta_Z": PointMeasure(z, np.ones(len(z)), patch),
        "golden": omega_comb(GOLDEN, StepWeight.indicator(interval(0, 1)), patch),
    }
    spreads = {}
    for name, mu in combs.items():
        est = mean_estimate(mu, VanHoveSpec(SpaceDescriptor.line()), n, translates=shifts, ns=[n])
        spreads[name] = dict(est.spreads)[n]
    ok = all(v <= 4 / n for v in spreads.values())
    return ok, ", ".join(f"{k} spread {v:.4g}" for k, v in spreads.items()) + f" (<= {4 / n})"


def oracle_equivalence():
    rng = np.random.default_rng(9)
    named = {"golden": (1, 1, 5, 2), "silver": (1, 1, 2, 1), "bronze": (3, 1, 13, 2)}
    mismatches = []
    for i in range(10):
        R = int(rng.integers(50, 201))
        if i % 3 == 2:
            p = int(rng.choice([2, 3, 5, 7]))
            j = int(rng.integers(1, 4))
            r = int(rng.integers(0, p**j))
            s = PAdicScheme(p, 8)
            got = cut_and_project(s, residue_class(r, j, p, 8), integer_range(-R, R)).points.tolist()
            ref = integer_scan(-R, R, lambda x: x % p**j == r)
            tag = f"padic p={p} class {r} mod {p}^{j}"
        else:
            name = ["golden", "silver", "bronze"][(i - i // 3) % 3]
            s = QuadraticScheme.named(name)
            a = Fraction(int(rng.integers(-16, 16)), 8)
            w = Fraction(int(rng.integers(1, 24)), 8)
            lc, hc = bool(rng.integers(2)), bool(rng.integers(2))
            bounds = ("[" if lc else "(") + ("]" if hc else ")")
            got = sorted(map(tuple, cut_and_project(s, interval(a, a + w, bounds), interval(-R, R, "[]")).coords.tolist()))
            box = (-4 * R - 20, 4 * R + 20)
            ref = quadratic_scan([(a, a + w, lc, hc)], (-R, R, True, True), box, box, named[name])
            tag = f"{name} {bounds[0]}{a}, {a + w}{bounds[1]}"
        if got != ref:
            mismatches.append(tag)
    return not mismatches, f"mismatches: {mismatches}" if mismatches else "10 seeded pairs equal the scan exactly"


DETERMINISM_CONFIGS = [
    {"pipeline": "generate", "scheme": "golden", "window": {"interval": [0, 1]}, "patch": [-100, 100]},
    {"pipeline": "density", "scheme": "golden", "window": {"interval": [0, 1]}, "R": 1000},
    {"pipeline": "mean", "scheme": "golden", "window": {"interval": [0, 1]}, "n_max": 300, "translates": [0, 2.5]},
    {"pipeline": "gap-cert", "scheme": "golden", "window": {"interval": [0, 1]}, "eps": 0.1, "n_max": 300},
    {"pipeline": "t-operator", "scheme": "golden", "window": {"interval": [0, 1]}, "R": 80, "trials": 10},
    {"pipeline": "meyer-check", "scheme": "golden", "window": {"interval": [0, 1]}, "R": 150},
    {"pipeline": "counterexample", "bound": 500, "ts": [0, 100, 200], "ns": [10, 100]},
    {"pipeline": "lift-check", "scheme": "golden", "coord_bound": 100},
    {"pipeline": "reconstruct", "scheme": "padic:3", "window": {"residue": 1, "depth": 1}, "patch": [-300, 300]},
]


def determinism(tmp):
    different = []
    for k, cfg in enumerate(DETERMINISM_CONFIGS):
        outs = []
        for rep in "ab":
            d = tmp / f"{k}{rep}"
            if run(cfg, d, seed=5) != 0:
                different.append(cfg["pipeline"] + " (exit)")
            outs.append({p.name: p.read_bytes() for p in sorted(d.iterdir())})
        if outs[0] != outs[1]:
            different.append(cfg["pipeline"])
    return not different, f"differing: {different}" if different else f"{len(DETERMINISM_CONFIGS)} pipelines byte-identical"


CRITERIA = [
    (1, "p-adic exactness", padic_exactness, 1),
    (2, "density formula", density_formula, 10),
    (3, "gap certificate", gap_certificates, 30),
    (4, "operator T properties", t_operator_properties, 10),
    (5, "Lambda_theta density bound", lambda_theta_density, 60),
    (6, "character lift", character_lift, 5),
    (7, "window reconstruction", window_reconstruction, 30),
    (8, "mean uniformity", mean_uniformity, 5),
    (9, "brute-force oracle equivalence", oracle_equivalence, 10),
]


@pytest.mark.parametrize("number, title, fn, limit", CRITERIA, ids=[f"c{c[0]}" for c in CRITERIA])
def test_criterion(number, title, fn, limit):
    ok, detail, elapsed = timed(fn)
    assert report(number, title, ok, detail, elapsed, limit), detail


def test_criterion_10_determinism(tmp_path):
    ok, detail, elapsed = timed(lambda: determinism(tmp_path))
    assert report(10, "determinism", ok, detail, elapsed, 5), detail


if __name__ == "__main__":
    import tempfile

    results = []
    for number, title, fn, limit in CRITERIA:
        results.append(report(number, title, *timed(fn), limit))
    with tempfile.TemporaryDirectory() as tmp:
        results.append(report(10, "determinism", *timed(lambda: determinism(Path(tmp))), 5))
    sys.exit(0 if all(results) else 1)
