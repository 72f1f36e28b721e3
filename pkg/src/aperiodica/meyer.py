"""Meyer-set predicates and the transcendental-base sets Lambda_theta, M_theta.

``lambda_theta(theta, bound)`` enumerates all finite sums of distinct powers of theta up to
``bound``; ``m_theta`` takes floors and floors + 1 of those. For theta > 3 both have uniform
density zero, while Z minus M_theta is relatively dense and differs from Z only on a set of
density zero.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .errors import PreconditionError
from .groups import INTEGERS, integer_range, interval
from .pointset import PointSet

__all__ = [
    "PointSet",
    "MeyerVerdict",
    "DensityBound",
    "discreteness_radius",
    "covering_radius",
    "meyer_test",
    "lambda_theta",
    "m_theta",
    "density_bound_check",
    "density_bound",
]


def _sorted_points(ps: PointSet) -> np.ndarray:
    pts = np.asarray(ps.points)
    if pts.ndim != 1:
        raise PreconditionError("Meyer predicates are implemented on one-dimensional direct spaces")
    return pts


def discreteness_radius(ps: PointSet) -> float:
    pts = _sorted_points(ps)
    if len(pts) < 2:
        return math.inf
    return float(np.min(np.diff(pts))) / 2


def covering_radius(ps: PointSet) -> float:
    """Half the largest gap between consecutive points (patch edges are ignored)."""
    pts = _sorted_points(ps)
    if len(pts) == 0:
        raise PreconditionError("covering radius of an empty set")
    if len(pts) == 1:
        return math.inf
    return float(np.max(np.diff(pts))) / 2


def _unique_tol(values: np.ndarray, tol: float) -> np.ndarray:
    if len(values) == 0:
        return values
    v = np.sort(values)
    keep = np.concatenate([[True], np.diff(v) > tol])
    return v[keep]


def _rounding_floor(pts: np.ndarray) -> float:
    """Spread of float error in a triple difference of these points."""
    scale = float(np.max(np.abs(pts))) if len(pts) else 1.0
    return 64 * np.finfo(float).eps * max(scale, 1.0)


def _triple_gap(pts: np.ndarray, lo: float, hi: float, budget: int = 4_000_000) -> float:
    """Minimal gap of (pts - pts - pts) ∩ [lo, hi].

    If the window holds more than ``budget`` distinct values it is narrowed around its centre
    until it fits; a narrower window can only overestimate the gap of the wider one by missing
    pairs, so the result stays a valid upper bound on the true minimal gap.
    """
    tol = _rounding_floor(pts)
    sums = _unique_tol((pts[:, None] + pts[None, :]).ravel(), tol)
    while True:
        found = np.zeros(0)
        buf: list[np.ndarray] = []
        size = 0
        overflow = False
        for x in pts:
            a = np.searchsorted(sums, x - hi, side="left")
            b = np.searchsorted(sums, x - lo, side="right")
            if b > a:
                buf.append(x - sums[a:b])
                size += b - a
            if size > budget:
                found = _unique_tol(np.concatenate([found, *buf]), tol)
                buf, size = [], 0
                if len(found) > budget:
                    overflow = True
                    break
        if not overflow:
            found = _unique_tol(np.concatenate([found, *buf]), tol) if buf else found
            break
        mid, half = (lo + hi) / 2, (hi - lo) / 4
        lo, hi = mid - half, mid + half
    if len(found) < 2:
        return math.inf
    return float(np.min(np.diff(found)))


@dataclass
class MeyerVerdict:
    verdict: str  # "meyer", "not-meyer", "inconclusive"
    uniformly_discrete: bool
    discreteness_radius: float
    relatively_dense: bool
    covering_radius: float
    triple_difference_gap: float
    triple_difference_gap_half_patch: float
    F_found: list | None
    uncovered_witness: float | None = None
    notes: list = field(default_factory=list)

    @property
    def is_meyer(self) -> bool:
        return self.verdict == "meyer"


def meyer_test(ps: PointSet, f_search_bound: int = 64) -> MeyerVerdict:
    """Patch-scale Meyer diagnostics.

    Triple differences are collected in the central third of the patch; the same quantity on
    the central half of the patch tells whether the minimal gap collapses with scale. The
    finite set F is searched greedily among d - x (d a difference, x a point) with
    |d - x| <= 4 * covering radius. Failing to find F is reported as inconclusive.
    """
    pts = _sorted_points(ps).astype(np.float64)
    if len(pts) < 2:
        raise PreconditionError("need at least two points")
    lo, hi = (float(t) for t in ps.patch.hull())
    length = hi - lo
    cov = covering_radius(ps)
    if length < 4 * cov:
        raise PreconditionError(f"patch length {length} is shorter than 4x the covering radius {cov}")
    center = (lo + hi) / 2
    gap = _triple_gap(pts, center - length / 6, center + length / 6)
    half = pts[(pts >= center - length / 4) & (pts <= center + length / 4)]
    gap_half = _triple_gap(half, center - length / 12, center + length / 12) if len(half) >= 2 else math.inf
    shrinking = gap < 16 * _rounding_floor(pts) or (math.isfinite(gap_half) and gap < gap_half / 2)

    # F search on differences near the patch centre offset
    diffs = _unique_tol((pts[:, None] - pts[None, :]).ravel(), _rounding_floor(pts))
    offset = center - lo if lo >= 0 else 0.0
    dc = diffs[np.abs(diffs - offset) <= length / 6]
    reach = 4 * cov
    cover: dict[float, set] = {}
    for i, d in enumerate(dc.tolist()):
        a = np.searchsorted(pts, d - reach, side="left")
        b = np.searchsorted(pts, d + reach, side="right")
        for x in pts[a:b].tolist():
            cover.setdefault(round(d - x, 9), set()).add(i)
    uncovered = set(range(len(dc)))
    F: list[float] = []
    while uncovered and len(F) < f_search_bound and cover:
        best = min(cover, key=lambda f: (-len(cover[f] & uncovered), abs(f), f))
        gain = cover[best] & uncovered
        if not gain:
            break
        F.append(best)
        uncovered -= gain
    F_found = sorted(f + 0.0 for f in F) if not uncovered else None
    witness = None if F_found is not None else float(dc[min(uncovered)])

    if shrinking:
        verdict = "not-meyer"
    elif F_found is not None:
        verdict = "meyer"
    else:
        verdict = "inconclusive"
    notes = []
    if shrinking:
        notes.append("triple-difference gap collapses when the patch doubles")
    return MeyerVerdict(
        verdict=verdict,
        uniformly_discrete=discreteness_radius(ps) > 0,
        discreteness_radius=discreteness_radius(ps),
        relatively_dense=math.isfinite(cov),
        covering_radius=cov,
        triple_difference_gap=gap,
        triple_difference_gap_half_patch=gap_half,
        F_found=F_found,
        uncovered_witness=witness,
        notes=notes,
    )


# ---------------------------------------------------------------------------


def lambda_theta(theta: float, bound: float) -> PointSet:
    """All sums of distinct powers theta^j that are <= bound, with their 0/1 digit vectors.

    ``coords[i, j]`` is the coefficient of theta^j in ``points[i]``.
    """
    if not theta > 3:
        raise PreconditionError("theta must exceed 3")
    if bound < 0:
        raise PreconditionError("bound must be non-negative")
    top = 0
    while theta ** (top + 1) <= bound:
        top += 1
    powers = [theta**j for j in range(top + 1)]
    values: list[float] = []
    digits: list[int] = []

    def dfs(j: int, partial: float, mask: int):
        if j < 0:
            values.append(partial)
            digits.append(mask)
            return
        dfs(j - 1, partial, mask)
        if partial + powers[j] <= bound:
            dfs(j - 1, partial + powers[j], mask | (1 << j))

    dfs(top, 0.0, 0)
    coords = np.array([[(m >> j) & 1 for j in range(top + 1)] for m in digits], dtype=np.int64)
    ps = PointSet(np.array(values), interval(-bound, bound, "[]"), coords)
    ps.meta.update(theta=theta, bound=bound, complete_up_to=bound)
    return ps


def m_theta(theta: float, bound: float, complete_only: bool = False) -> PointSet:
    """Integers floor(x) and floor(x) + 1 for x in Lambda_theta ∩ [0, bound].

    The result is exact on integers <= floor(bound) - 1 (recorded as ``meta['complete_up_to']``);
    with ``complete_only`` the set is cut to that range and its patch is [-ceil(bound), that].
    """
    lam = lambda_theta(theta, bound)
    fl = np.floor(lam.points).astype(np.int64)
    pts = np.unique(np.concatenate([fl, fl + 1]))
    upto = math.floor(bound) - 1
    lo = -math.ceil(bound)
    if complete_only:
        pts = pts[pts <= upto]
        patch = integer_range(lo, upto)
    else:
        patch = integer_range(lo, int(pts.max()) if len(pts) else upto)
    ps = PointSet(pts, patch)
    ps.meta.update(theta=theta, bound=bound, complete_up_to=upto)
    return ps


def density_bound(theta: float, n: float) -> float:
    """(9 n^{log_theta 3} + 1) / n."""
    return (9 * n ** (math.log(3) / math.log(theta)) + 1) / n


@dataclass
class DensityBound:
    t: float
    n: float
    count: int
    count_ratio: float
    bound: float
    ok: bool


def density_bound_check(theta: float, t: float, n: float, ps: PointSet) -> DensityBound:
    """card(Lambda_theta ∩ [t, t+n]) / n against the strict bound (9 n^{log_theta 3} + 1) / n."""
    complete = ps.meta.get("complete_up_to")
    if complete is None or complete < t + n:
        raise PreconditionError(f"enumeration is complete up to {complete}, need {t + n}")
    pts = np.asarray(ps.points)
    count = int(np.searchsorted(pts, t + n, side="right") - np.searchsorted(pts, t, side="left"))
    ratio = count / n
    b = density_bound(theta, n)
    return DensityBound(t, n, count, ratio, b, ratio < b)
