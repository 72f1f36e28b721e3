"""Experiment driver: JSON config in, results.json / points.csv / strip.svg out.

Usage::

    aperiodica run config.json [--out DIR] [--seed N]
    aperiodica <pipeline> [--scheme ...] [--window ...] [--R ...] [--set key=json ...]

Exit codes: 0 ok, 1 config error, 2 precondition violation, 3 internal check failure.
``APERIODICA_THREADS`` caps the worker threads used by the sweeps.
"""
from __future__ import annotations

import argparse
import json
import math
import os
import re
import sys
from concurrent.futures import ThreadPoolExecutor
from fractions import Fraction
from pathlib import Path

import numpy as np

from .cps import (
    CyclicScheme,
    PAdicScheme,
    PiecewiseLinear,
    QuadraticNumber,
    QuadraticScheme,
    Scheme,
    StepWeight,
    TrivialScheme,
    cut_and_project,
    density_constant,
    dual_frequencies,
    character_lift_check,
    omega_comb,
    scheme_from_json,
)
from .errors import AperiodicaError, InternalCheckError, PreconditionError, UnsupportedError
from .gap import default_bump, gap_certificate, reconstruct_window, t_operator
from .groups import (
    INTEGERS,
    LINE,
    PADIC,
    CYCLIC,
    SetDescriptor,
    VanHoveSpec,
    cyclic_set,
    integer_range,
    interval,
    real_set,
    residue_class,
)
from .measures import PointMeasure, mean_estimate, udens_profile
from .meyer import density_bound_check, lambda_theta, m_theta, meyer_test

SPEC_VERSION = 1
PIPELINES = (
    "generate",
    "density",
    "mean",
    "gap-cert",
    "t-operator",
    "meyer-check",
    "counterexample",
    "lift-check",
    "reconstruct",
)


class ConfigError(AperiodicaError):
    """The experiment config is missing, malformed or refers to unknown objects."""


# ---------------------------------------------------------------------------
# deterministic JSON


_FLOAT_TAG = re.compile(r'"@@f:([^"]*)@@"')


def _plain(o):
    if isinstance(o, dict):
        return {str(k): _plain(v) for k, v in o.items()}
    if isinstance(o, (list, tuple)):
        return [_plain(v) for v in o]
    if isinstance(o, (bool, np.bool_)):
        return bool(o)
    if isinstance(o, (int, np.integer)):
        return int(o)
    if isinstance(o, Fraction):
        return str(o.numerator) if o.denominator == 1 else f"{o.numerator}/{o.denominator}"
    if isinstance(o, QuadraticNumber):
        o = float(o)
    if isinstance(o, (float, np.floating)):
        o = float(o)
        if math.isnan(o):
            return None
        if math.isinf(o):
            return "inf" if o > 0 else "-inf"
        return f"@@f:{o:.17g}@@"
    if isinstance(o, (complex, np.complexfloating)):
        return [_plain(o.real), _plain(o.imag)]
    if isinstance(o, np.ndarray):
        return _plain(o.tolist())
    return o


def dumps(obj) -> str:
    """JSON with every float written to 17 significant digits and sorted keys."""
    text = json.dumps(_plain(obj), indent=2, sort_keys=True, ensure_ascii=False)
    return _FLOAT_TAG.sub(r"\1", text) + "\n"


# ---------------------------------------------------------------------------
# config parsing


def _need(cfg: dict, key: str):
    if key not in cfg:
        raise ConfigError(f"config is missing {key!r}")
    return cfg[key]


def parse_scheme(spec) -> Scheme:
    if spec is None:
        return QuadraticScheme()
    if isinstance(spec, str):
        if spec in ("golden", "silver", "bronze"):
            return QuadraticScheme.named(spec)
        m = re.fullmatch(r"padic:(\d+)(?::(\d+))?", spec)
        if m:
            return PAdicScheme(int(m.group(1)), int(m.group(2) or 20))
        raise ConfigError(f"unknown scheme shorthand {spec!r}")
    if not isinstance(spec, dict):
        raise ConfigError("scheme must be a JSON object or a shorthand string")
    try:
        return scheme_from_json(spec)
    except KeyError as e:
        raise ConfigError(f"scheme config is missing {e}") from None


def parse_window(spec, s: Scheme) -> SetDescriptor:
    H = s.internal_space
    if spec is None:
        if H.kind == LINE:
            return interval(0, 1)
        if H.kind == PADIC:
            return residue_class(0, 1, H.p, H.k)
        return SetDescriptor.universe(H)
    if spec == "empty":
        return SetDescriptor.empty(H)
    if not isinstance(spec, dict):
        raise ConfigError("window must be a JSON object or 'empty'")
    if "space" in spec:
        return SetDescriptor.from_json(spec)
    if "interval" in spec:
        lo, hi = spec["interval"]
        return interval(lo, hi, spec.get("bounds", "[)"))
    if "intervals" in spec:
        return real_set(*[tuple(p) for p in spec["intervals"]], bounds=spec.get("bounds", "[)"))
    if "residue" in spec:
        if H.kind != PADIC:
            raise ConfigError("residue windows need a p-adic internal space")
        return residue_class(int(spec["residue"]), int(spec.get("depth", 1)), H.p, H.k)
    if "elements" in spec:
        if H.kind != CYCLIC:
            raise ConfigError("element windows need a cyclic internal space")
        return cyclic_set(H.m, spec["elements"])
    raise ConfigError(f"cannot read window {spec!r}")


def parse_weight(spec, s: Scheme, W: SetDescriptor):
    """Weight h for Omega(h): indicator of W by default, or {"tent": [lo, hi]} / {"knots": [[y, v], ...]}."""
    if spec is None or spec == "indicator":
        return StepWeight.indicator(W)
    if isinstance(spec, dict) and "tent" in spec:
        lo, hi = (Fraction(str(t)) for t in spec["tent"])
        return PiecewiseLinear(((lo, 0), ((lo + hi) / 2, 1), (hi, 0)))
    if isinstance(spec, dict) and "knots" in spec:
        return PiecewiseLinear(tuple((Fraction(str(y)), Fraction(str(v))) for y, v in spec["knots"]))
    raise ConfigError(f"cannot read weight {spec!r}")


def parse_patch(cfg: dict, s: Scheme) -> SetDescriptor:
    G = s.direct_space
    if "patch" in cfg:
        p = cfg["patch"]
        if isinstance(p, dict):
            return SetDescriptor.from_json(p)
        lo, hi = p
    else:
        R = cfg.get("R", 100)
        lo, hi = -R, R
    if G.kind == INTEGERS:
        return integer_range(math.ceil(Fraction(str(lo))), math.floor(Fraction(str(hi))))
    return interval(lo, hi, "[]")


# ---------------------------------------------------------------------------
# artifacts


def _svg_num(v: float) -> str:
    return f"{v:.4f}"


def emit_svg_strip(s: Scheme, W: SetDescriptor, patch: SetDescriptor) -> str:
    """The (x, x*) picture: lattice dots, the window strip, and the selected points on the x axis.

    A dot has class "sel" exactly when it belongs to ``cut_and_project(s, W, patch)``.
    """
    if not isinstance(s, QuadraticScheme):
        raise UnsupportedError(f"no planar picture for {type(s).__name__}: the internal space is not Euclidean")
    x0, x1 = (float(t) for t in patch.hull())
    if W.is_empty:
        y0, y1 = 0.0, 1.0
    else:
        y0, y1 = (float(t) for t in W.hull())
    pad = max(y1 - y0, 1.0)
    view = interval(y0 - pad, y1 + pad, "[]")
    dots = cut_and_project(s, view, patch)
    sel = cut_and_project(s, W, patch)
    chosen = {tuple(c) for c in sel.coords.tolist()}

    width, height, margin = 1000.0, 400.0, 20.0
    ylo, yhi = y0 - pad, y1 + pad
    axis_y = height - margin

    def px(x):
        return margin + (x - x0) / (x1 - x0 or 1.0) * (width - 2 * margin)

    def py(y):
        return (axis_y - 2 * margin) - (y - ylo) / (yhi - ylo) * (axis_y - 3 * margin) + margin

    out = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{int(width)}" height="{int(height)}" '
        f'viewBox="0 0 {int(width)} {int(height)}">',
        "<style>.sel{fill:#c0392b}.lat{fill:#95a5a6}.strip{fill:#f9e79f;fill-opacity:0.5}"
        ".edge{stroke:#b7950b;stroke-width:1}.proj{stroke:#c0392b;stroke-width:1}.axis{stroke:#000}</style>",
    ]
    for iv in W.atoms if not W.is_empty else ():
        top, bot = py(float(iv.hi)), py(float(iv.lo))
        out.append(
            f'<rect class="strip" x="{_svg_num(margin)}" y="{_svg_num(top)}" '
            f'width="{_svg_num(width - 2 * margin)}" height="{_svg_num(bot - top)}"/>'
        )
        for y in (iv.lo, iv.hi):
            out.append(
                f'<line class="edge" data-y="{y}" x1="{_svg_num(margin)}" x2="{_svg_num(width - margin)}" '
                f'y1="{_svg_num(py(float(y)))}" y2="{_svg_num(py(float(y)))}"/>'
            )
    out.append(
        f'<line class="axis" x1="{_svg_num(margin)}" x2="{_svg_num(width - margin)}" '
        f'y1="{_svg_num(axis_y)}" y2="{_svg_num(axis_y)}"/>'
    )
    for x, y, c in zip(dots.points.tolist(), dots.stars.tolist(), dots.coords.tolist()):
        cls = "sel" if tuple(c) in chosen else "lat"
        out.append(
            f'<circle class="{cls}" data-x="{x!r}" data-m="{c[0]}" data-n="{c[1]}" '
            f'cx="{_svg_num(px(x))}" cy="{_svg_num(py(y))}" r="2.5"/>'
        )
    for x in sel.points.tolist():
        out.append(
            f'<line class="proj" x1="{_svg_num(px(x))}" x2="{_svg_num(px(x))}" '
            f'y1="{_svg_num(axis_y - 6)}" y2="{_svg_num(axis_y + 6)}"/>'
        )
    out.append("</svg>")
    return "\n".join(out) + "\n"


# ---------------------------------------------------------------------------
# pipelines; each returns (results, extra files)


def _threads() -> int:
    try:
        return max(1, int(os.environ.get("APERIODICA_THREADS", "1")))
    except ValueError:
        raise ConfigError("APERIODICA_THREADS must be an integer") from None


def _svg_if_euclidean(s, W, patch, files):
    if isinstance(s, QuadraticScheme):
        files["strip.svg"] = emit_svg_strip(s, W, patch)


def run_generate(cfg, seed):
    s = parse_scheme(cfg.get("scheme"))
    W = parse_window(cfg.get("window"), s)
    patch = parse_patch(cfg, s)
    ps = cut_and_project(s, W, patch)
    files = {"points.csv": ps.to_csv()}
    _svg_if_euclidean(s, W, patch, files)
    res = {
        "count": len(ps),
        "patch": patch.to_json(),
        "window": W.to_json(),
        "density_constant": density_constant(s),
    }
    return res, files


def run_density(cfg, seed):
    """estimate = rows of points.csv / Haar measure of the patch, per nested radius."""
    s = parse_scheme(cfg.get("scheme"))
    W = parse_window(cfg.get("window"), s)
    R = int(cfg.get("R", 10_000))
    cfg = {**cfg, "R": R}
    cfg.pop("patch", None)
    patch = parse_patch(cfg, s)
    ps = cut_and_project(s, W, patch)
    target = density_constant(s) * float(W.measure())
    pts = np.asarray(ps.points)
    seq = []
    r = 100
    while r <= R:
        sub = parse_patch({"R": r}, s)
        lo, hi = sub.hull()
        count = int(np.count_nonzero((pts >= lo) & (pts <= hi)))
        est = count / float(sub.measure())
        seq.append({"R": r, "count": count, "estimate": est, "error": abs(est - target)})
        r *= 10
    if not seq or seq[-1]["R"] != R:
        count = len(ps)
        est = count / float(patch.measure())
        seq.append({"R": R, "count": count, "estimate": est, "error": abs(est - target)})
    tail = [e["estimate"] for e in seq[-3:]]
    res = {
        "estimate": seq[-1]["estimate"],
        "target": target,
        "envelope": [min(tail), max(tail)],
        "horizon": R,
        "tolerance": 5 / R,
        "within_tolerance": seq[-1]["error"] <= 5 / R,
        "sequence": seq,
        "formula": "count(points.csv rows with |x| <= R) / |[-R, R]|",
    }
    files = {"points.csv": ps.to_csv()}
    _svg_if_euclidean(s, W, parse_patch({"R": min(R, 50)}, s), files)
    return res, files


def run_mean(cfg, seed):
    s = parse_scheme(cfg.get("scheme"))
    W = parse_window(cfg.get("window"), s)
    h = parse_weight(cfg.get("weight"), s, W)
    n_max = int(cfg.get("n_max", 1000))
    translates = [float(t) if s.direct_space.kind == LINE else int(t) for t in cfg.get("translates", [0])]
    span = n_max + max(abs(t) for t in translates) + 1
    patch = parse_patch({"R": span}, s)
    mu = omega_comb(s, h, patch)
    est = mean_estimate(mu, VanHoveSpec(s.direct_space), n_max, translates)
    res = {"mean": est.to_json(), "target": density_constant(s) * float(h.integral())}
    return res, {}


def run_gap_cert(cfg, seed):
    s = parse_scheme(cfg.get("scheme"))
    W = parse_window(cfg.get("window"), s)
    eps = cfg.get("eps", 0.1)
    n_max = int(cfg.get("n_max", 1000))
    patch = parse_patch({"R": n_max}, s)
    cert = gap_certificate(s, W, eps, patch, n_max=n_max)
    res = cert.to_json()
    res["bound_holds_exactly"] = cert.bound_holds_exactly()
    res["mean_gap_ok"] = float(np.real(cert.empirical_mean_gap.value)) <= cert.certified_bound + 2 / n_max
    res["discrepancy_ok"] = cert.empirical_discrepancy_density <= float(cert.eps) + 2 / n_max
    if not (res["bound_holds_exactly"] and res["mean_gap_ok"] and res["discrepancy_ok"]):
        raise InternalCheckError(f"certificate checks failed: {res}")
    return res, {"mu.csv": cert.mu_eps.to_csv(), "nu.csv": cert.nu_eps.to_csv()}


def _t_trial(args):
    i, seed, lam, gamma, omega, psi, patch = args
    rng = np.random.default_rng([seed, i])
    w1 = rng.random(len(lam)) * (rng.random(len(lam)) < 0.7)
    w2 = rng.random(len(lam))
    mu = PointMeasure(lam.points, w1, patch)
    nu = PointMeasure(lam.points, w2, patch)
    t_mu = t_operator(psi, omega, mu, gamma)
    t_nu = t_operator(psi, omega, nu, gamma)
    inner = t_mu.patch
    lo, hi = inner.hull()
    # (c) fixed point on the interior sub-patch
    keep = (lam.points >= lo) & (lam.points <= hi)
    ref = np.zeros(len(lam.points[keep]))
    idx = np.searchsorted(t_mu.points, lam.points[keep])
    found = (idx < len(t_mu)) & (t_mu.points[np.minimum(idx, len(t_mu) - 1)] == lam.points[keep])
    ref[found] = t_mu.weights[idx[found]]
    fix_err = float(np.max(np.abs(ref - w1[keep]), initial=0.0))
    extra = np.setdiff1d(t_mu.points, lam.points[keep][w1[keep] != 0])
    # (b) support inside Gamma
    supp_ok = bool(np.all(np.isin(t_mu.points, gamma.points)))
    # (a) linearity and positivity
    a, b = rng.normal(), rng.normal()
    lhs = t_operator(psi, omega, mu * a + nu * b, gamma)
    rhs = t_mu * a + t_nu * b
    lin_err = float(np.max(np.abs((lhs - rhs).weights), initial=0.0))
    pos_ok = bool(np.all(t_mu.weights >= 0))
    # (e) T(mu)(A) <= mu(A - K)
    r = float(psi.radius)
    e_ok = True
    for _ in range(20):
        u, v = np.sort(rng.uniform(lo, hi, 2))
        e_ok &= bool(t_mu.mass(u, v) <= mu.mass(u - r, v + r) + 1e-12)
    return {"fix_err": fix_err, "extra_points": len(extra), "support_ok": supp_ok, "linearity_err": lin_err,
            "positive": pos_ok, "mass_bound_ok": e_ok}


def run_t_operator(cfg, seed):
    s = parse_scheme(cfg.get("scheme"))
    if not isinstance(s, QuadraticScheme):
        raise ConfigError("the t-operator pipeline runs on quadratic schemes")
    W = parse_window(cfg.get("window"), s)
    C = parse_window(cfg.get("gamma_window", {"interval": [-0.5, 1.5], "bounds": "[]"}), s)
    patch = parse_patch({"R": cfg.get("R", 200)}, s)
    trials = int(cfg.get("trials", 100))
    lam = cut_and_project(s, W, patch)
    gamma = cut_and_project(s, C, patch)
    if not set(lam.points.tolist()) <= set(gamma.points.tolist()):
        raise ConfigError("gamma_window must contain the window")
    omega = PointMeasure.dirac(gamma)
    psi = default_bump(gamma)
    jobs = [(i, seed, lam, gamma, omega, psi, patch) for i in range(trials)]
    with ThreadPoolExecutor(max_workers=_threads()) as ex:
        rows = list(ex.map(_t_trial, jobs))
    res = {
        "trials": trials,
        "psi_radius": float(psi.radius),
        "fixed_point_max_error": max(r["fix_err"] for r in rows),
        "fixed_point_extra_points": sum(r["extra_points"] for r in rows),
        "support_in_gamma": all(r["support_ok"] for r in rows),
        "linearity_max_error": max(r["linearity_err"] for r in rows),
        "positive": all(r["positive"] for r in rows),
        "mass_bound_holds": all(r["mass_bound_ok"] for r in rows),
    }
    ok = (
        res["fixed_point_max_error"] <= 1e-9
        and res["fixed_point_extra_points"] == 0
        and res["support_in_gamma"]
        and res["linearity_max_error"] <= 1e-12
        and res["positive"]
        and res["mass_bound_holds"]
    )
    res["all_ok"] = ok
    if not ok:
        raise InternalCheckError(f"operator checks failed: {res}")
    return res, {}


def run_meyer_check(cfg, seed):
    s = parse_scheme(cfg.get("scheme"))
    W = parse_window(cfg.get("window"), s)
    patch = parse_patch({"R": cfg.get("R", 200)}, s)
    ps = cut_and_project(s, W, patch)
    v = meyer_test(ps, int(cfg.get("f_search_bound", 64)))
    res = {
        "verdict": v.verdict,
        "uniformly_discrete": v.uniformly_discrete,
        "discreteness_radius": v.discreteness_radius,
        "relatively_dense": v.relatively_dense,
        "covering_radius": v.covering_radius,
        "triple_difference_gap": v.triple_difference_gap,
        "triple_difference_gap_half_patch": v.triple_difference_gap_half_patch,
        "F_found": v.F_found,
        "uncovered_witness": v.uncovered_witness,
        "notes": v.notes,
        "count": len(ps),
    }
    return res, {"points.csv": ps.to_csv()}


def run_counterexample(cfg, seed):
    theta = float(cfg.get("theta", math.pi))
    bound = float(cfg.get("bound", 2000))
    ts = cfg.get("ts", list(range(0, 1001, 10)))
    ns = cfg.get("ns", [10, 100, 1000])
    lam = lambda_theta(theta, bound)
    jobs = [(t, n) for n in ns for t in ts]
    with ThreadPoolExecutor(max_workers=_threads()) as ex:
        checks = list(ex.map(lambda tn: density_bound_check(theta, tn[0], tn[1], lam), jobs))
    sweep = [{"t": c.t, "n": c.n, "count": c.count, "count_ratio": c.count_ratio, "bound": c.bound, "ok": c.ok}
             for c in checks]
    m = m_theta(theta, bound, complete_only=True)
    res = {
        "theta": theta,
        "bound": bound,
        "lambda_count": len(lam),
        "m_count": len(m),
        "density_sweep": sweep,
        "all_ok": all(c.ok for c in checks),
    }
    udens_n = cfg.get("udens_n")
    if udens_n:
        prof = {}
        for n in udens_n:
            mm = m_theta(theta, 4 * n, complete_only=True).restrict(integer_range(0, 2 * n))
            prof[str(n)] = udens_profile(mm, VanHoveSpec(mm.patch.space), n, ns=[n])[n]
        res["m_udens"] = prof
    if not res["all_ok"]:
        raise InternalCheckError("density bound violated")
    return res, {"points.csv": m.to_csv()}


def run_lift_check(cfg, seed):
    s = parse_scheme(cfg.get("scheme"))
    if not isinstance(s, QuadraticScheme):
        raise UnsupportedError("character lifts need a Euclidean internal space")
    if "beta" in cfg:
        beta, gamma = float(cfg["beta"]), float(cfg["gamma"])
    else:
        k, l = cfg.get("dual", [1, 1])
        beta, gamma = dual_frequencies(s, int(k), int(l))
    lc = character_lift_check(s, beta, gamma, int(cfg.get("coord_bound", 1000)), float(cfg.get("tol", 1e-9)))
    return {"beta": float(beta), "gamma": float(gamma), "max_deviation": lc.max_deviation, "pass": lc.passed,
            "coord_bound": lc.coord_bound}, {}


def run_reconstruct(cfg, seed):
    s = parse_scheme(cfg.get("scheme"))
    source = cfg.get("source", "window")
    patch = parse_patch(cfg, s)
    if source == "m_theta":
        theta = float(cfg.get("theta", math.pi))
        lo, hi = patch.hull()
        lam = m_theta(theta, 2 * float(hi) + 2, complete_only=True).restrict(patch)
    else:
        W = parse_window(cfg.get("window"), s)
        lam = cut_and_project(s, W, patch)
    rec = reconstruct_window(s, lam, cfg.get("gap_threshold"))
    return rec.to_json(), {"points.csv": lam.to_csv()}


RUNNERS = {
    "generate": run_generate,
    "density": run_density,
    "mean": run_mean,
    "gap-cert": run_gap_cert,
    "t-operator": run_t_operator,
    "meyer-check": run_meyer_check,
    "counterexample": run_counterexample,
    "lift-check": run_lift_check,
    "reconstruct": run_reconstruct,
}


def run(config: dict, out: str | os.PathLike | None = None, seed: int | None = None) -> int:
    """Run one pipeline and write its artifacts; returns the exit status."""
    try:
        if not config:
            raise ConfigError("empty config")
        if not isinstance(config, dict):
            raise ConfigError("config must be a JSON object")
        pipeline = _need(config, "pipeline")
        if pipeline not in RUNNERS:
            raise ConfigError(f"unknown pipeline {pipeline!r}; choose one of {', '.join(PIPELINES)}")
        seed = int(seed if seed is not None else config.get("seed", 0))
        out_dir = Path(out or config.get("out") or f"aperiodica-out/{pipeline}")
        results, files = RUNNERS[pipeline](config, seed)
    except ConfigError as e:
        print(f"config error: {e}", file=sys.stderr)
        return 1
    except (PreconditionError, UnsupportedError) as e:
        print(f"precondition violated: {e}", file=sys.stderr)
        return 2
    except InternalCheckError as e:
        print(f"internal check failed: {e}", file=sys.stderr)
        return 3
    except (KeyError, TypeError, ValueError) as e:
        print(f"config error: {type(e).__name__}: {e}", file=sys.stderr)
        return 1
    doc = {"spec_version": SPEC_VERSION, "pipeline": pipeline, "seed": seed, "config": config, "results": results}
    out_dir.mkdir(parents=True, exist_ok=True)
    (out_dir / "results.json").write_text(dumps(doc), encoding="utf-8")
    for name in sorted(files):
        (out_dir / name).write_text(files[name], encoding="utf-8")
    return 0


def _json_arg(text):
    try:
        return json.loads(text)
    except json.JSONDecodeError:
        return text


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(prog="aperiodica", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)
    p_run = sub.add_parser("run", help="run a JSON config")
    p_run.add_argument("config")
    p_run.add_argument("--out")
    p_run.add_argument("--seed", type=int)
    for name in PIPELINES:
        p = sub.add_parser(name, help=f"shorthand for a {name} config")
        p.add_argument("--scheme", type=_json_arg)
        p.add_argument("--window", type=_json_arg)
        p.add_argument("--patch", nargs=2, type=_json_arg, metavar=("LO", "HI"))
        p.add_argument("--R", type=_json_arg)
        p.add_argument("--eps", type=float)
        p.add_argument("--n-max", dest="n_max", type=int)
        p.add_argument("--theta", type=float)
        p.add_argument("--bound", type=float)
        p.add_argument("--set", action="append", default=[], metavar="KEY=JSON")
        p.add_argument("--out")
        p.add_argument("--seed", type=int)
    args = parser.parse_args(argv)

    if args.command == "run":
        try:
            text = Path(args.config).read_text(encoding="utf-8")
            config = json.loads(text) if text.strip() else {}
        except (OSError, json.JSONDecodeError) as e:
            print(f"config error: {e}", file=sys.stderr)
            return 1
        return run(config, args.out, args.seed)

    config = {"pipeline": args.command}
    for key in ("scheme", "window", "patch", "R", "eps", "n_max", "theta", "bound"):
        val = getattr(args, key)
        if val is not None:
            config[key] = val
    for item in args.set:
        key, sep, val = item.partition("=")
        if not sep:
            print(f"config error: --set expects KEY=JSON, got {item!r}", file=sys.stderr)
            return 1
        config[key] = _json_arg(val)
    return run(config, args.out, args.seed)


if __name__ == "__main__":
    sys.exit(main())
