"""Finite point patches in the direct space."""
from __future__ import annotations

import csv
import io
from dataclasses import dataclass, field

import numpy as np

from .groups import SetDescriptor


@dataclass(frozen=True, eq=False)
class PointSet:
    """Strictly increasing points of a discrete set restricted to ``patch``.

    ``coords`` holds integer lattice coordinates (one row per point) when the set came out of a
    cut-and-project scheme; ``stars`` holds the matching internal-space values.
    For product direct spaces ``points`` has shape (N, 2) and is sorted lexicographically.
    """

    points: np.ndarray
    patch: SetDescriptor
    coords: np.ndarray | None = None
    stars: np.ndarray | None = None
    meta: dict = field(default_factory=dict)

    def __post_init__(self):
        pts = np.asarray(self.points)
        if pts.ndim == 1:
            order = np.argsort(pts, kind="stable")
        else:
            order = np.lexsort(pts.T[::-1])
        object.__setattr__(self, "points", pts[order])
        if self.coords is not None:
            object.__setattr__(self, "coords", np.asarray(self.coords)[order])
        if self.stars is not None:
            object.__setattr__(self, "stars", np.asarray(self.stars)[order])

    def __len__(self) -> int:
        return len(self.points)

    def __iter__(self):
        return iter(self.points.tolist())

    @property
    def is_integer(self) -> bool:
        return np.issubdtype(self.points.dtype, np.integer)

    def as_set(self) -> set:
        if self.points.ndim == 1:
            return set(self.points.tolist())
        return set(map(tuple, self.points.tolist()))

    def restrict(self, patch: SetDescriptor) -> PointSet:
        keep = np.array([patch.contains(x) for x in self.points.tolist()], dtype=bool)
        return PointSet(
            self.points[keep],
            patch,
            None if self.coords is None else self.coords[keep],
            None if self.stars is None else self.stars[keep],
            dict(self.meta),
        )

    def gaps(self) -> np.ndarray:
        return np.diff(self.points)

    def to_csv(self) -> str:
        """CSV text with columns m, n, x, x_star (empty cells where not applicable)."""
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["m", "n", "x", "x_star"])
        for i, x in enumerate(self.points.tolist()):
            c = [] if self.coords is None else [int(v) for v in self.coords[i]]
            m = c[0] if len(c) > 0 else ""
            n = c[1] if len(c) > 1 else ""
            s = "" if self.stars is None else _fmt(self.stars[i])
            w.writerow([m, n, _fmt(x), s])
        return buf.getvalue()


def _fmt(v) -> str:
    if isinstance(v, (list, tuple)):
        return " ".join(_fmt(t) for t in v)
    if isinstance(v, (np.integer, int)):
        return str(int(v))
    if isinstance(v, np.ndarray):
        return " ".join(_fmt(t) for t in v.tolist())
    return repr(float(v))
