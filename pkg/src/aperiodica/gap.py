"""Sandwich certificates, the smoothing-restriction operator T and window reconstruction.

How the pieces fit together. For a regular window W the certificate picks continuous weights
f <= 1_W <= g with a small integral gap, so ``mu = Omega(f) <= delta_Lambda <= nu = Omega(g)``
and both outer combs are strongly almost periodic. The mean of ``nu - mu`` is D_S times the
integral gap. Feeding either comb through ``t_operator`` with a comb omega carried by the
enclosing Meyer set Gamma gives back the same comb on the interior of the patch, which is
the finite-patch content of approximating a g-a-p measure by SAP ones supported in Gamma.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction

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
    Window,
    _as_window,
    cut_and_project,
    omega_comb,
)
from .errors import InternalCheckError, PreconditionError, UnsupportedError
from .groups import (
    INTEGERS,
    LINE,
    SetDescriptor,
    VanHoveSpec,
    cyclic_set,
    integer_range,
    interval,
    real_set,
)
from .measures import (
    BumpFunction,
    MeanEstimate,
    PointMeasure,
    discrepancy_set,
    mean_estimate,
    smooth_many,
    uniform_upper_density,
)
from .pointset import PointSet

__all__ = [
    "RiemannSandwich",
    "Certificate",
    "WindowReconstruction",
    "riemann_sandwich",
    "gap_certificate",
    "t_operator",
    "default_bump",
    "min_gap",
    "reconstruct_window",
    "weight_samples",
]


def _as_fraction(x) -> Fraction:
    """Exact value of a user-facing number; floats are read by their shortest repr."""
    if isinstance(x, float):
        return Fraction(repr(x))
    return Fraction(x)


def _exact_le(x, y) -> bool:
    d = x - y
    if isinstance(d, QuadraticNumber):
        return d.sign() <= 0
    return d <= 0


def _rational_upper(D) -> Fraction:
    """A rational number >= D (D itself when D is rational)."""
    if not isinstance(D, QuadraticNumber):
        return Fraction(D)
    q = Fraction(float(D)).limit_denominator(10**9)
    while (D - q).sign() > 0:
        q += Fraction(1, 10**9)
    return q


# ---------------------------------------------------------------------------
# sandwiches


@dataclass(frozen=True)
class RiemannSandwich:
    lower: object
    upper: object
    gap_integral: Fraction
    target: SetDescriptor
    inner: SetDescriptor  # where lower == 1
    outer: SetDescriptor  # open set carrying upper
    margin: Fraction = Fraction(0)

    def breakpoints(self) -> dict:
        def knots(w):
            if isinstance(w, PiecewiseLinear):
                return [[float(y), float(v)] for y, v in w.knots]
            return []

        return {"lower": knots(self.lower), "upper": knots(self.upper)}


def _check_float_knots(knots, what: str):
    fl = [float(y) for y, _ in knots]
    if any(b <= a for a, b in zip(fl, fl[1:])):
        raise PreconditionError(f"{what}: margin too small to separate the window endpoints in floating point")


def riemann_sandwich(W, eps) -> RiemannSandwich:
    """Trapezoids f <= 1_W <= g with ``integral(g - f) <= eps``.

    On the line every closure component [a, b] gets g = 1 on [a, b] ramping to 0 at a - d and
    b + d, and every interior component gets f = 1 on [a + 2d, b - 2d] ramping to 0 at a + d and
    b - d. The margin d is eps / (#closure parts + 3 #interior parts), shrunk if needed so that
    neighbouring trapezoids stay apart. Windows in Z_p, Z/mZ or {0} are open and closed at once,
    so f = g = 1_W.
    """
    W = _as_window(W).descriptor
    eps_q = _as_fraction(eps)
    if eps_q <= 0:
        raise PreconditionError("eps must be positive")
    if W.space.kind != LINE:
        if not (W.interior().same_set(W) and W.closure().same_set(W)):
            raise UnsupportedError(f"sandwiches in {W.space} are built only for open-and-closed windows")
        ind = StepWeight.indicator(W)
        return RiemannSandwich(ind, ind, Fraction(0), W, W, W)
    if W.is_empty:
        zero = StepWeight.indicator(W)
        return RiemannSandwich(zero, zero, Fraction(0), W, W, W)
    if not W.is_bounded:
        raise PreconditionError("window must be bounded")

    closed = [(Fraction(iv.lo), Fraction(iv.hi)) for iv in W.closure().atoms]
    opened = [(Fraction(iv.lo), Fraction(iv.hi)) for iv in W.interior().atoms]
    d = eps_q / (len(closed) + 3 * len(opened))
    for (_, b), (a, _) in zip(closed, closed[1:]):
        d = min(d, (a - b) / 4)
    for a, b in opened:
        d = min(d, (b - a) / 5)

    up = []
    for a, b in closed:
        up += [(a - d, 0), (a, 1)] + ([(b, 1)] if b > a else []) + [(b + d, 0)]
    _check_float_knots(up, "upper weight")
    upper = PiecewiseLinear(tuple(up))
    if opened:
        lo = []
        for a, b in opened:
            lo += [(a + d, 0), (a + 2 * d, 1), (b - 2 * d, 1), (b - d, 0)]
        _check_float_knots(lo, "lower weight")
        lower = PiecewiseLinear(tuple(lo))
        inner = real_set(*[(a + 2 * d, b - 2 * d) for a, b in opened], bounds="[]")
    else:
        lower = StepWeight.indicator(SetDescriptor.empty(W.space))
        inner = SetDescriptor.empty(W.space)
    outer = real_set(*[(a - d, b + d) for a, b in closed], bounds="()")
    gap = upper.integral() - lower.integral()
    return RiemannSandwich(lower, upper, gap, W, inner, outer, d)


# ---------------------------------------------------------------------------
# certificates


@dataclass
class Certificate:
    mu_eps: PointMeasure
    nu_eps: PointMeasure
    lam: PointSet
    gamma: PointSet
    enclosing_window: SetDescriptor
    sandwich: RiemannSandwich
    certified_bound: float
    certified_bound_exact: object  # D_S * gap integral, exact
    empirical_mean_gap: MeanEstimate
    empirical_discrepancy_density: float
    horizon: int
    eps: Fraction
    ordering_ok: bool = True
    notes: list = field(default_factory=list)

    def bound_holds_exactly(self, eps=None) -> bool:
        return _exact_le(self.certified_bound_exact, self.eps if eps is None else _as_fraction(eps))

    def to_json(self) -> dict:
        return {
            "eps": float(self.eps),
            "certified_bound": self.certified_bound,
            "empirical_mean_gap": self.empirical_mean_gap.to_json(),
            "discrepancy_density": self.empirical_discrepancy_density,
            "horizon": self.horizon,
            "ordering_ok": self.ordering_ok,
            "sandwich_breakpoints": self.sandwich.breakpoints(),
            "margin": float(self.sandwich.margin),
            "counts": {"lambda": len(self.lam), "gamma": len(self.gamma), "mu_support": len(self.mu_eps),
                       "nu_support": len(self.nu_eps)},
        }


def _regularity_diagnostic(win: Window) -> str:
    bad = []
    if not win.interior_nonempty:
        bad.append("empty interior")
    if not win.closure_compact:
        bad.append("closure not compact")
    elif win.boundary_measure != 0:
        bad.append(f"boundary has measure {win.boundary_measure}")
    return ", ".join(bad)


def _dominated(a: PointMeasure, b: PointMeasure) -> bool:
    """a <= b pointwise, for nonnegative a."""
    if len(a) == 0:
        return True
    idx = np.searchsorted(b.points, a.points)
    idx = np.minimum(idx, max(len(b) - 1, 0))
    if len(b) == 0 or np.any(b.points[idx] != a.points):
        return False
    return bool(np.all(a.weights <= b.weights[idx]))


def _default_horizon(patch: SetDescriptor) -> int:
    lo, hi = patch.hull()
    n = math.floor(min(-lo, hi))
    if n < 1:
        raise PreconditionError("patch must contain [-1, 1] around the origin")
    return n


def gap_certificate(
    s: Scheme, W, eps, patch: SetDescriptor, v: VanHoveSpec | None = None, n_max: int | None = None
) -> Certificate:
    """Build ``mu_eps <= delta_Lambda <= nu_eps <= delta_Gamma`` with ``D_S * integral(g - f) <= eps / 2``.

    The sandwich is cut at eps / (2 D) for a rational D >= D_S, which also keeps the measure of
    the closed outer set minus the open inner set below eps / D_S.
    """
    win = _as_window(W)
    if not win.is_regular:
        raise PreconditionError(f"window is not regular: {_regularity_diagnostic(win)}")
    Wd = win.descriptor
    eps_q = _as_fraction(eps)
    if eps_q <= 0:
        raise PreconditionError("eps must be positive")
    if s.direct_space.kind not in (LINE, INTEGERS):
        raise UnsupportedError("certificates are built over one-dimensional direct spaces")
    D = s.density_exact()
    d_up = _rational_upper(D)
    sandwich = riemann_sandwich(Wd, eps_q / (2 * d_up) if Wd.space.kind == LINE else eps_q)
    if Wd.space.kind == LINE:
        m = sandwich.margin
        C = Wd.closure().minkowski(interval(-2 * m, 2 * m, "[]"))
    else:
        C = Wd

    lam = cut_and_project(s, Wd, patch)
    gamma = cut_and_project(s, C, patch)
    mu = omega_comb(s, sandwich.lower, patch)
    nu = omega_comb(s, sandwich.upper, patch)
    delta_lam = PointMeasure.dirac(lam)
    delta_gamma = PointMeasure.dirac(gamma)
    ok = (
        mu.positive
        and _dominated(mu, delta_lam)
        and _dominated(delta_lam, nu)
        and _dominated(nu, delta_gamma)
    )
    if not ok:
        raise InternalCheckError("certificate ordering mu <= delta_Lambda <= nu <= delta_Gamma failed")

    v = v or VanHoveSpec(s.direct_space)
    n_max = n_max or _default_horizon(patch)
    gap_est = mean_estimate(nu - mu, v, n_max)
    disc = uniform_upper_density(discrepancy_set(mu, nu), v, n_max)
    bound_exact = D * sandwich.gap_integral
    return Certificate(
        mu_eps=mu,
        nu_eps=nu,
        lam=lam,
        gamma=gamma,
        enclosing_window=C,
        sandwich=sandwich,
        certified_bound=float(bound_exact),
        certified_bound_exact=bound_exact,
        empirical_mean_gap=gap_est,
        empirical_discrepancy_density=disc,
        horizon=n_max,
        eps=eps_q,
        ordering_ok=ok,
    )


# ---------------------------------------------------------------------------
# the operator T


def min_gap(ps: PointSet):
    """Smallest distance between two points; any interval shorter than this holds at most one point."""
    pts = np.asarray(ps.points)
    if pts.ndim != 1:
        raise PreconditionError("min_gap is defined for point sets on the line or on Z")
    if len(pts) < 2:
        raise PreconditionError("min_gap needs at least two points")
    return np.min(np.diff(pts)).item()


def default_bump(gamma: PointSet) -> BumpFunction:
    return BumpFunction.tent(0.45 * min_gap(gamma))


def _eroded(patch: SetDescriptor, r) -> SetDescriptor:
    lo, hi = patch.hull()
    if patch.space.kind == INTEGERS:
        return integer_range(math.ceil(lo + r), math.floor(hi - r))
    return interval(lo + r, hi - r, "[]")


def t_operator(psi: BumpFunction, omega: PointMeasure, mu: PointMeasure, gamma: PointSet | None = None) -> PointMeasure:
    """``T(mu) = (psi * mu) . omega`` on the part of the patch where the convolution is complete.

    ``gamma`` is the uniformly discrete set carrying omega (the support of omega by default);
    psi must fit strictly inside half its minimal gap.
    """
    if not psi.is_unit_bump():
        raise PreconditionError("psi must satisfy 0 <= psi <= 1 and psi(0) = 1")
    g = gamma if gamma is not None else omega.support()
    r = psi.radius
    if len(g) >= 2:
        mg = min_gap(g)
        if not r < mg / 2:
            raise PreconditionError(f"psi radius {float(r)} must be below half the minimal gap {mg} of Gamma")
    if gamma is not None and len(omega) and not np.all(np.isin(omega.support().points, g.points)):
        raise PreconditionError("omega must be supported in Gamma")
    patch = _eroded(mu.patch.intersection(omega.patch), r)
    if len(omega) == 0 or patch.is_empty:
        return PointMeasure.zero(patch if not patch.is_empty else omega.patch)
    w = smooth_many(psi, mu, omega.points) * omega.weights
    inside = np.array([patch.contains(x) for x in omega.points.tolist()], dtype=bool)
    keep = inside & (w != 0)
    coords = None if omega.coords is None else omega.coords[keep]
    return PointMeasure(omega.points[keep], w[keep], patch, coords)


# ---------------------------------------------------------------------------
# reconstruction


@dataclass
class WindowReconstruction:
    window_estimate: SetDescriptor
    boundary_mass_estimate: float
    gap_threshold: float
    point_count: int
    depth: int | None = None  # residue depth used in Z_p
    stars: np.ndarray | None = None

    def to_json(self) -> dict:
        return {
            "window_estimate": self.window_estimate.to_json(),
            "boundary_mass_estimate": self.boundary_mass_estimate,
            "gap_threshold": self.gap_threshold,
            "point_count": self.point_count,
            "depth": self.depth,
        }


def _lattice_coords(s: Scheme, lam: PointSet) -> np.ndarray:
    pts = np.asarray(lam.points)
    if isinstance(s, QuadraticScheme):
        if lam.coords is None:
            raise PreconditionError("quadratic reconstruction needs the lattice coordinates of the points")
        coords = np.asarray(lam.coords, dtype=np.int64)
        back = s.direct_values(coords)
        bad = np.nonzero(np.abs(back - pts) > 1e-9 * (1 + np.abs(pts)))[0]
        if len(bad):
            i = int(bad[0])
            raise PreconditionError(f"point {pts[i]!r} is not the lattice point with coordinates {coords[i].tolist()}")
        return coords
    if isinstance(s, TrivialScheme) and s.over == "R":
        q = pts / float(s.spacing)
        c = np.round(q)
    elif isinstance(s, (PAdicScheme, CyclicScheme, TrivialScheme)):
        q = pts.astype(np.float64)
        c = np.round(q)
    else:
        raise UnsupportedError(f"window reconstruction is not modelled for {type(s).__name__}")
    bad = np.nonzero(np.abs(q - c) > 1e-9 * (1 + np.abs(q)))[0]
    if len(bad):
        raise PreconditionError(f"point {pts[int(bad[0])]!r} is not on the lattice")
    return c.astype(np.int64).reshape(-1, 1)


def _widen_until_contained(s: QuadraticScheme, coords, blocks) -> SetDescriptor:
    slack = 1e-12
    for _ in range(20):
        atoms = []
        for lo, hi in blocks:
            atoms.append((Fraction(lo) - Fraction(slack * (1 + abs(lo))), Fraction(hi) + Fraction(slack * (1 + abs(hi)))))
        est = real_set(*atoms, bounds="[]")
        if np.all(s.star_in(coords, est)):
            return est
        slack *= 16
    raise InternalCheckError("could not enclose the star values of the input")


def _reconstruct_line(s: QuadraticScheme, lam: PointSet, coords, threshold) -> WindowReconstruction:
    stars = s.star_values(coords)
    order = np.argsort(stars)
    st = stars[order]
    cuts = np.nonzero(np.diff(st) > threshold)[0]
    starts = np.concatenate([[0], cuts + 1])
    ends = np.concatenate([cuts, [len(st) - 1]])
    blocks = [(float(st[a]), float(st[b])) for a, b in zip(starts, ends)]
    est = _widen_until_contained(s, coords, blocks)

    # every lattice star of the patch near the hull, labelled in / out of the input
    lo, hi = float(st[0]), float(st[-1])
    w = max(hi - lo, threshold)
    near = cut_and_project(s, interval(lo - w, hi + w, "[]"), lam.patch)
    inside = {tuple(c) for c in coords.tolist()}
    label = np.array([tuple(c) in inside for c in near.coords.tolist()], dtype=bool)
    o = np.argsort(near.stars)
    ys, lab = near.stars[o], label[o]
    mixed = lab[1:] != lab[:-1]
    mass = float(np.sum(np.diff(ys)[mixed]))
    if lab[0]:
        mass += w
    if lab[-1]:
        mass += w
    return WindowReconstruction(est, mass, threshold, len(lam), None, stars)


def _reconstruct_discrete(s: Scheme, lam: PointSet, coords, gap_threshold) -> WindowReconstruction:
    universe = SetDescriptor.universe(s.internal_space)
    full = cut_and_project(s, universe, lam.patch)
    full_c = np.asarray(full.coords, dtype=np.int64)[:, 0]
    lam_c = coords[:, 0]
    if isinstance(s, PAdicScheme):
        if gap_threshold is None:
            gap_threshold = 5 / max(len(full), 1)
        j = 0
        while j < s.k and s.p ** (j + 1) * gap_threshold <= 1:
            j += 1
        q = s.p**j
    elif isinstance(s, CyclicScheme):
        j, q = None, s.m
        gap_threshold = gap_threshold if gap_threshold is not None else 1 / s.m
    else:
        j, q = None, 1
        gap_threshold = gap_threshold if gap_threshold is not None else 1.0
    hit = np.unique(lam_c % q)
    in_lam = np.isin(full_c, lam_c)
    classes = full_c % q
    mixed = np.intersect1d(np.unique(classes[in_lam]), np.unique(classes[~in_lam]))
    if isinstance(s, PAdicScheme):
        est = SetDescriptor(s.internal_space, tuple((int(r), j) for r in hit))
    elif isinstance(s, CyclicScheme):
        est = cyclic_set(s.m, hit.tolist())
    else:
        est = SetDescriptor.universe(s.internal_space)
    return WindowReconstruction(est, len(mixed) / q, float(gap_threshold), len(lam), j, lam_c % q)


def reconstruct_window(s: Scheme, lam: PointSet, gap_threshold=None) -> WindowReconstruction:
    """Estimate a window from the star values of a finite patch of a lattice subset.

    On the line, sorted star values are merged into closed blocks wherever consecutive values
    are at most ``gap_threshold`` apart (default 5 / point count). The boundary mass sums the
    star gaps between lattice points of the patch that lie on different sides of the input set,
    which is the part of the internal space the data cannot assign to W or to its complement.

    In Z_p the estimate is the union of residue classes mod p^j hit by the input, where p^-j is
    the largest class measure not below ``gap_threshold`` (default 5 / lattice points in the
    patch); the boundary mass is the total measure of classes holding both input points and
    other lattice points of the patch.
    """
    coords = _lattice_coords(s, lam)
    if len(coords) == 0:
        return WindowReconstruction(SetDescriptor.empty(s.internal_space), 0.0, float(gap_threshold or 0), 0)
    if isinstance(s, QuadraticScheme):
        threshold = float(gap_threshold) if gap_threshold is not None else 5 / len(coords)
        return _reconstruct_line(s, lam, coords, threshold)
    return _reconstruct_discrete(s, lam, coords, gap_threshold)


def weight_samples(s: Scheme, rho: PointMeasure) -> tuple[np.ndarray, np.ndarray]:
    """(x*, rho({x})) for every support point; these sample the weight h when rho = Omega(h)."""
    ps = PointSet(rho.points, rho.patch, rho.coords)
    coords = _lattice_coords(s, ps)
    return s.star_values(coords), rho.weights.copy()
