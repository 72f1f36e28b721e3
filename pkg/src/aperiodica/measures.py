"""Weighted Dirac combs on patches, smoothing, van Hove means and uniform upper densities.

Every limit quantity is reported at a finite horizon together with the sequence it was read
off from; nothing here claims a limit.
"""
from __future__ import annotations

import csv
import io
import itertools
import warnings
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property

import numpy as np

from .errors import PreconditionError
from .groups import INTEGERS, LINE, SetDescriptor, VanHoveSpec, integer_range, interval
from .pointset import PointSet

WEIGHT_TOL = 1e-12


@dataclass(frozen=True, eq=False)
class PointMeasure:
    """Finitely supported measure ``sum_x w_x delta_x`` valid on ``patch``."""

    points: np.ndarray
    weights: np.ndarray
    patch: SetDescriptor
    coords: np.ndarray | None = None

    def __post_init__(self):
        pts = np.asarray(self.points)
        w = np.asarray(self.weights)
        if pts.ndim != 1:
            raise PreconditionError("point measures live on one-dimensional direct spaces")
        if w.shape != pts.shape:
            raise PreconditionError("one weight per support point")
        order = np.argsort(pts, kind="stable")
        pts, w = pts[order], w[order]
        if len(pts) > 1 and np.any(pts[1:] == pts[:-1]):
            raise PreconditionError("support points must be pairwise distinct")
        object.__setattr__(self, "points", pts)
        object.__setattr__(self, "weights", w)
        if self.coords is not None:
            object.__setattr__(self, "coords", np.asarray(self.coords)[order])

    # -- constructors ------------------------------------------------------

    @classmethod
    def dirac(cls, ps: PointSet, weight=1.0) -> PointMeasure:
        w = np.full(len(ps), weight, dtype=np.result_type(weight, np.float64))
        return cls(ps.points, w, ps.patch, ps.coords)

    @classmethod
    def zero(cls, patch: SetDescriptor) -> PointMeasure:
        dtype = np.int64 if patch.space.kind == INTEGERS else np.float64
        return cls(np.zeros(0, dtype=dtype), np.zeros(0), patch)

    # -- properties --------------------------------------------------------

    def __len__(self) -> int:
        return len(self.points)

    @property
    def positive(self) -> bool:
        w = self.weights
        if np.iscomplexobj(w):
            return bool(np.all(w.imag == 0) and np.all(w.real >= 0))
        return bool(np.all(w >= 0))

    @cached_property
    def tb_bound(self) -> float:
        """Largest total |weight| in a half-open window of length 1."""
        if len(self.points) == 0:
            return 0.0
        cum = np.concatenate([[0.0], np.cumsum(np.abs(self.weights))])
        right = np.searchsorted(self.points, self.points + 1, side="left")
        return float(np.max(cum[right] - cum[np.arange(len(self.points))]))

    def support(self) -> PointSet:
        nz = np.abs(self.weights) > 0
        return PointSet(self.points[nz], self.patch, None if self.coords is None else self.coords[nz])

    def weight_at(self, x):
        i = np.searchsorted(self.points, x)
        if i < len(self.points) and self.points[i] == x:
            return self.weights[i]
        return 0.0

    def mass(self, lo, hi, lo_closed: bool = True, hi_closed: bool = False):
        """Total weight in the interval between lo and hi with the given end conventions."""
        i = np.searchsorted(self.points, lo, side="left" if lo_closed else "right")
        j = np.searchsorted(self.points, hi, side="right" if hi_closed else "left")
        return self.weights[i:j].sum() if j > i else self.weights.dtype.type(0)

    # -- algebra -----------------------------------------------------------

    def _combine(self, other: PointMeasure, a, b) -> PointMeasure:
        patch = self.patch
        if not self.patch.same_set(other.patch):
            patch = self.patch.intersection(other.patch)
        pts = np.union1d(self.points, other.points)
        dtype = np.result_type(self.weights, other.weights, np.asarray(a), np.asarray(b), np.float64)
        w = np.zeros(len(pts), dtype=dtype)
        w[np.searchsorted(pts, self.points)] += a * self.weights
        w[np.searchsorted(pts, other.points)] += b * other.weights
        out = PointMeasure(pts, w, patch)
        if patch is not self.patch:
            out = out.restrict(patch)
        return out

    def __add__(self, other: PointMeasure) -> PointMeasure:
        return self._combine(other, 1, 1)

    def __sub__(self, other: PointMeasure) -> PointMeasure:
        return self._combine(other, 1, -1)

    def __mul__(self, c) -> PointMeasure:
        return PointMeasure(self.points, self.weights * c, self.patch, self.coords)

    __rmul__ = __mul__

    def __neg__(self) -> PointMeasure:
        return self * -1

    def shifted(self, t) -> PointMeasure:
        return PointMeasure(self.points + t, self.weights, self.patch.translate(t), self.coords)

    def restrict(self, patch: SetDescriptor) -> PointMeasure:
        keep = np.array([patch.contains(x) for x in self.points.tolist()], dtype=bool)
        return PointMeasure(
            self.points[keep], self.weights[keep], patch, None if self.coords is None else self.coords[keep]
        )

    def to_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["x", "re_weight", "im_weight"])
        for x, c in zip(self.points.tolist(), self.weights.tolist()):
            c = complex(c)
            w.writerow([x if isinstance(x, int) else repr(float(x)), repr(c.real), repr(c.imag)])
        return buf.getvalue()


# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class BumpFunction:
    """Compactly supported piecewise-linear function, zero outside its knot range."""

    knots: tuple

    def __post_init__(self):
        xs = [k[0] for k in self.knots]
        if len(xs) < 2 or any(b <= a for a, b in zip(xs, xs[1:])):
            raise PreconditionError("bump knots must be strictly increasing, at least two")

    @classmethod
    def tent(cls, half_width, height=1) -> BumpFunction:
        return cls(((-half_width, 0), (0, height), (half_width, 0)))

    @property
    def radius(self):
        return max(abs(self.knots[0][0]), abs(self.knots[-1][0]))

    def _arrays(self):
        return (np.array([float(k[0]) for k in self.knots]), np.array([float(k[1]) for k in self.knots]))

    def __call__(self, x):
        if isinstance(x, (Fraction, int)) and not isinstance(x, bool):
            return self._exact(x)
        xs, vs = self._arrays()
        return np.interp(x, xs, vs, left=0.0, right=0.0)

    def _exact(self, x):
        for (x0, v0), (x1, v1) in zip(self.knots, self.knots[1:]):
            if x0 <= x <= x1:
                return v0 + (Fraction(v1) - v0) * (Fraction(x) - x0) / (Fraction(x1) - x0)
        return Fraction(0)

    def is_unit_bump(self) -> bool:
        """0 <= psi <= 1 and psi(0) == 1 (checked on knots; psi is linear in between)."""
        return all(0 <= v <= 1 for _, v in self.knots) and self._exact(0) == 1


@dataclass(frozen=True)
class Smoothed:
    value: complex | float
    truncated: bool


def _convolve_at(phi: BumpFunction, points: np.ndarray, weights: np.ndarray, xs: np.ndarray) -> np.ndarray:
    """(phi * mu)(x) for every x in xs."""
    xs = np.asarray(xs, dtype=np.float64)
    dtype = np.result_type(weights, np.float64)
    out = np.zeros(len(xs), dtype=dtype)
    if len(points) == 0 or len(xs) == 0:
        return out
    r = float(phi.radius)
    lo = np.searchsorted(points, xs - r, side="left")
    hi = np.searchsorted(points, xs + r, side="right")
    counts = hi - lo
    total = int(counts.sum())
    if total == 0:
        return out
    owner = np.repeat(np.arange(len(xs)), counts)
    starts = np.repeat(np.cumsum(counts) - counts, counts)
    idx = lo[owner] + (np.arange(total) - starts)
    vals = phi(xs[owner] - points[idx].astype(np.float64)) * weights[idx]
    if np.iscomplexobj(vals):
        out.real = np.bincount(owner, vals.real, minlength=len(xs))
        out.imag = np.bincount(owner, vals.imag, minlength=len(xs))
    else:
        out[:] = np.bincount(owner, vals, minlength=len(xs))
    return out


def _near_edge(patch: SetDescriptor, x, r) -> bool:
    if patch.space.kind == INTEGERS:
        window = integer_range(int(np.floor(x - r)), int(np.ceil(x + r)))
    else:
        window = interval(x - r, x + r, "[]")
    return not window.issubset(patch)


def smooth(phi: BumpFunction, mu: PointMeasure, x) -> Smoothed:
    """``(phi * mu)(x) = sum_t phi(x - t) w_t``; flags results whose bump pokes out of the patch."""
    truncated = _near_edge(mu.patch, x, phi.radius)
    if mu.points.dtype == object or isinstance(x, Fraction):
        value = sum((phi(x - t) * w for t, w in zip(mu.points.tolist(), mu.weights.tolist())), Fraction(0))
        return Smoothed(value, truncated)
    value = _convolve_at(phi, mu.points, mu.weights, np.array([x]))[0]
    return Smoothed(value.item(), truncated)


def smooth_many(phi: BumpFunction, mu: PointMeasure, xs) -> np.ndarray:
    return _convolve_at(phi, mu.points, mu.weights, np.asarray(xs, dtype=np.float64))


# ---------------------------------------------------------------------------


def _window_mass(mu: PointMeasure, center, n):
    if mu.patch.space.kind == INTEGERS:
        return mu.mass(center - n, center + n, True, True)
    return mu.mass(center - n, center + n, True, False)


def _ball_measure(space_kind: str, n) -> int:
    return 2 * n + 1 if space_kind == INTEGERS else 2 * n


def default_horizons(n_max: int) -> list[int]:
    ns = {n_max}
    for e in itertools.count():
        for base in (1, 2, 5):
            n = base * 10**e
            if n > n_max:
                return sorted(ns)
            ns.add(n)


@dataclass
class MeanEstimate:
    sequence: list  # (n, central average)
    value: float | complex
    spread: float
    horizon: int
    envelope: tuple
    spreads: list = field(default_factory=list)
    translates: list = field(default_factory=list)

    def to_json(self) -> dict:
        def enc(v):
            v = complex(v)
            return v.real if v.imag == 0 else [v.real, v.imag]

        return {
            "value": enc(self.value),
            "spread": float(self.spread),
            "horizon": self.horizon,
            "envelope": [enc(self.envelope[0]), enc(self.envelope[1])],
            "sequence": [[n, enc(v)] for n, v in self.sequence],
            "spreads": [[n, float(s)] for n, s in self.spreads],
            "translates": [float(t) for t in self.translates],
        }


def mean_estimate(mu: PointMeasure, v: VanHoveSpec, n_max: int, translates=(0,), ns=None) -> MeanEstimate:
    """Averages ``mu(x + A_n) / |A_n|`` along van Hove balls for every translate x."""
    if v.space != mu.patch.space or v.space.kind not in (LINE, INTEGERS):
        raise PreconditionError("mean_estimate works on measures over R or Z with a matching van Hove spec")
    translates = list(translates) or [0]
    for x in translates:
        need = v.set_at(n_max, x)
        if not need.issubset(mu.patch):
            lo = min(translates) - n_max
            hi = max(translates) + n_max
            raise PreconditionError(f"patch too small: need at least [{lo}, {hi}] to reach horizon {n_max}")
    ns = sorted(set(ns)) if ns is not None else default_horizons(n_max)
    seq, spreads = [], []
    for n in ns:
        vals = [_window_mass(mu, x, n) / _ball_measure(v.space.kind, n) for x in translates]
        seq.append((n, vals[0]))
        spread = max(abs(a - b) for a in vals for b in vals)
        spreads.append((n, float(spread)))
    tail = [np.real(val) for _, val in seq[-3:]]
    return MeanEstimate(
        sequence=seq,
        value=seq[-1][1],
        spread=spreads[-1][1],
        horizon=ns[-1],
        envelope=(min(tail), max(tail)),
        spreads=spreads,
        translates=translates,
    )


def _sup_window_count(points: np.ndarray, patch: SetDescriptor, n) -> float:
    """Exact sup over translates x (with x + A_n inside the patch) of card(points ∩ (x + A_n)) / |A_n|."""
    lo, hi = patch.hull()
    integer = patch.space.kind == INTEGERS
    length = 2 * n + 1 if integer else 2 * n
    last = (hi + 1 if integer else hi) - length
    if last < lo:
        raise PreconditionError(f"patch shorter than the averaging set at n={n}")
    # a window hanging past the far edge is dominated by the one flush with that edge
    anchors = np.clip(np.concatenate([[lo], points]), lo, last)
    right = np.searchsorted(points, anchors + length, side="left")
    left = np.searchsorted(points, anchors, side="left")
    return float(np.max(right - left)) / length


def uniform_upper_density(ps: PointSet, v: VanHoveSpec, n_max: int, ns=None) -> float:
    """Finite-horizon udens: largest window count per volume over a tail range of n up to n_max.

    The supremum over translates is taken exactly: a counting function on half-open windows is
    maximised by a window whose left end sits on a point or on a patch edge.
    """
    return max(udens_profile(ps, v, n_max, ns).values())


def udens_profile(ps: PointSet, v: VanHoveSpec, n_max: int, ns=None) -> dict:
    if v.space.kind not in (LINE, INTEGERS):
        raise PreconditionError("uniform upper density is computed over R or Z")
    if ns is None:
        ns = sorted({max(1, int(round(n_max * f))) for f in (0.5, 0.625, 0.75, 0.875, 1.0)})
    return {n: _sup_window_count(np.asarray(ps.points), ps.patch, n) for n in ns}


# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Samples:
    """Function values on the grid start + pitch * i."""

    pitch: float
    values: np.ndarray
    start: float = 0.0

    @classmethod
    def of(cls, phi: BumpFunction, mu: PointMeasure, lo, hi, pitch) -> Samples:
        grid = lo + pitch * np.arange(int(np.floor((hi - lo) / pitch)) + 1)
        return cls(pitch, smooth_many(phi, mu, grid), lo)


@dataclass
class AlmostPeriods:
    periods: list
    max_gap: float
    eps: float
    horizon: float


def almost_periods(f: Samples, eps: float, horizon: float) -> AlmostPeriods:
    """Grid shifts t in [0, horizon] with sup |f - f(. - t)| < eps over the overlap of the sample range.

    Shifts are screened on a strided subset of sample positions first; only the survivors are
    compared on the full overlap, so the answer is the same as the exhaustive scan.
    """
    n = len(f.values)
    k_max = int(np.floor(horizon / f.pitch + 1e-9))
    if k_max >= n - 1:
        raise PreconditionError("horizon exceeds the sampled range")
    vals = np.asarray(f.values)
    worst = np.zeros(k_max, dtype=np.float64)
    stride = max(1, (n - k_max) // 512)
    for i in range(0, n - k_max, stride):
        np.maximum(worst, np.abs(vals[i + 1 : i + k_max + 1] - vals[i]), out=worst)
    periods = [0.0]
    for k in (np.nonzero(worst < eps)[0] + 1).tolist():
        if np.max(np.abs(vals[k:] - vals[:-k])) < eps:
            periods.append(k * f.pitch)
    edges = periods + [k_max * f.pitch]
    max_gap = float(np.max(np.diff(edges))) if len(edges) > 1 else 0.0
    return AlmostPeriods(periods, max_gap, eps, horizon)


def discrepancy_set(mu: PointMeasure, nu: PointMeasure) -> PointSet:
    """Points where the two measures assign different mass (tolerance 1e-12)."""
    patch = mu.patch
    a, b = mu, nu
    if not mu.patch.same_set(nu.patch):
        patch = mu.patch.intersection(nu.patch)
        warnings.warn("measures live on different patches; comparing on their intersection", stacklevel=2)
        a, b = mu.restrict(patch), nu.restrict(patch)
    pts = np.union1d(a.points, b.points)
    wa = np.zeros(len(pts), dtype=np.result_type(a.weights, b.weights, np.float64))
    wb = wa.copy()
    wa[np.searchsorted(pts, a.points)] = a.weights
    wb[np.searchsorted(pts, b.points)] = b.weights
    diff = np.abs(wa - wb) > WEIGHT_TOL
    return PointSet(pts[diff], patch, meta={"restricted": patch is not mu.patch})
