"""Cut-and-project schemes with exact lattice coordinates.

Catalogue:

* ``QuadraticScheme`` -- G = H = R, lattice {(m + n a, m + n a') : m, n in Z} for a quadratic
  irrational a = (u + v sqrt(d)) / c with Galois conjugate a'. Default is the golden ratio.
* ``PAdicScheme`` -- G = Z, H = Z_p (residues mod p^k), lattice {(n, n)}.
* ``CyclicScheme`` -- G = Z, H = Z/mZ, lattice {(n, n mod m)}.
* ``TrivialScheme`` -- G = Z or the lattice sZ in R, H = {0}.
* ``ProductScheme`` -- product of two of the above.

Membership tests on the line are exact: a float fast path decides everything that is not
within rounding distance of an endpoint, the rest is settled in Z[sqrt d] with integers.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Any

import numpy as np

from .errors import PreconditionError, UnsupportedError
from .groups import (
    CYCLIC,
    INF,
    INTEGERS,
    LINE,
    PADIC,
    PRODUCT,
    SetDescriptor,
    SpaceDescriptor,
    box,
)
from .measures import PointMeasure
from .pointset import PointSet


# ---------------------------------------------------------------------------
# exact arithmetic in Q(sqrt d)


def _sign_surd(A: int, B: int, d: int) -> int:
    """Sign of A + B sqrt(d) for integers A, B and non-square d > 0."""
    if B == 0:
        return (A > 0) - (A < 0)
    if A == 0:
        return (B > 0) - (B < 0)
    if (A > 0) == (B > 0):
        return 1 if A > 0 else -1
    if A * A > B * B * d:
        return 1 if A > 0 else -1
    return 1 if B > 0 else -1


@dataclass(frozen=True)
class QuadraticNumber:
    """a + b sqrt(d) with rational a, b."""

    a: Fraction
    b: Fraction
    d: int

    def __post_init__(self):
        object.__setattr__(self, "a", Fraction(self.a))
        object.__setattr__(self, "b", Fraction(self.b))

    def _lift(self, other) -> QuadraticNumber:
        if isinstance(other, QuadraticNumber):
            if other.d != self.d:
                raise ValueError("different quadratic fields")
            return other
        return QuadraticNumber(Fraction(other), 0, self.d)

    def __add__(self, other):
        o = self._lift(other)
        return QuadraticNumber(self.a + o.a, self.b + o.b, self.d)

    __radd__ = __add__

    def __neg__(self):
        return QuadraticNumber(-self.a, -self.b, self.d)

    def __sub__(self, other):
        return self + (-self._lift(other))

    def __rsub__(self, other):
        return self._lift(other) - self

    def __mul__(self, other):
        o = self._lift(other)
        return QuadraticNumber(self.a * o.a + self.b * o.b * self.d, self.a * o.b + self.b * o.a, self.d)

    __rmul__ = __mul__

    def conjugate(self) -> QuadraticNumber:
        return QuadraticNumber(self.a, -self.b, self.d)

    def __truediv__(self, other):
        o = self._lift(other)
        norm = o.a * o.a - o.b * o.b * self.d
        return self * QuadraticNumber(o.a / norm, -o.b / norm, self.d)

    def sign(self) -> int:
        den = math.lcm(self.a.denominator, self.b.denominator)
        return _sign_surd(int(self.a * den), int(self.b * den), self.d)

    def is_rational_integer(self) -> bool:
        return self.b == 0 and self.a.denominator == 1

    def __float__(self) -> float:
        return float(self.a) + float(self.b) * math.sqrt(self.d)

    def __lt__(self, other):
        return (self - other).sign() < 0

    def __le__(self, other):
        return (self - other).sign() <= 0

    def __gt__(self, other):
        return (self - other).sign() > 0

    def __ge__(self, other):
        return (self - other).sign() >= 0


# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class LatticePoint:
    coords: tuple
    direct_value: Any
    star_value: Any


@dataclass(frozen=True)
class Window:
    descriptor: SetDescriptor

    @property
    def interior_nonempty(self) -> bool:
        return not self.descriptor.interior().is_empty

    @property
    def closure_compact(self) -> bool:
        return self.descriptor.is_bounded

    @property
    def boundary_measure(self):
        d = self.descriptor
        return d.closure().difference(d.interior()).measure()

    @property
    def is_regular(self) -> bool:
        return self.interior_nonempty and self.closure_compact and self.boundary_measure == 0


def _as_window(W) -> Window:
    return W if isinstance(W, Window) else Window(W)


class Scheme:
    """Common surface of all schemes; subclasses fill in the coordinate-level methods."""

    direct_space: SpaceDescriptor
    internal_space: SpaceDescriptor
    coord_dim: int

    def point(self, coords) -> LatticePoint:
        c = np.atleast_2d(np.asarray(coords, dtype=np.int64))
        return LatticePoint(tuple(int(v) for v in c[0]), self.direct_values(c)[0], self.star_values(c)[0])

    def star_exact(self, coords):
        raise NotImplementedError

    def direct_values(self, coords: np.ndarray) -> np.ndarray:
        raise NotImplementedError

    def star_values(self, coords: np.ndarray) -> np.ndarray:
        raise NotImplementedError

    def star_in(self, coords: np.ndarray, s: SetDescriptor) -> np.ndarray:
        raise NotImplementedError

    def direct_in(self, coords: np.ndarray, patch: SetDescriptor) -> np.ndarray:
        raise NotImplementedError

    def candidates(self, window: SetDescriptor, patch: SetDescriptor) -> np.ndarray:
        """A superset of the lattice coordinates with direct value in patch and star in window."""
        raise NotImplementedError

    def density_exact(self):
        raise NotImplementedError

    def to_json(self) -> dict:
        raise NotImplementedError


def _require_bounded_line(s: SetDescriptor, what: str):
    if s.is_empty:
        return None
    lo, hi = s.hull()
    if lo in (-INF, INF) or hi in (-INF, INF):
        raise PreconditionError(f"{what} is unbounded")
    return lo, hi


def _interval_mask(cmp_lo: np.ndarray, cmp_hi: np.ndarray, iv) -> np.ndarray:
    above = (cmp_lo > 0) | ((cmp_lo == 0) & iv.lo_closed)
    below = (cmp_hi < 0) | ((cmp_hi == 0) & iv.hi_closed)
    return above & below


GOLDEN = (1, 1, 5, 2)
NAMED_ALPHAS = {"golden": GOLDEN, "silver": (1, 1, 2, 1), "bronze": (3, 1, 13, 2)}


@dataclass(frozen=True)
class QuadraticScheme(Scheme):
    """alpha = (u + v sqrt(d)) / c, alpha' = (u - v sqrt(d)) / c; coords (m, n)."""

    u: int = 1
    v: int = 1
    d: int = 5
    c: int = 2
    name: str = "golden"

    direct_space = SpaceDescriptor.line()
    internal_space = SpaceDescriptor.line()
    coord_dim = 2

    def __post_init__(self):
        if self.v <= 0 or self.c <= 0:
            raise PreconditionError("need v > 0 and c > 0 so that alpha > alpha'")
        if self.d <= 1 or math.isqrt(self.d) ** 2 == self.d:
            # a rational alpha makes the projection to G non-injective on the lattice
            raise PreconditionError(f"d={self.d} must be a non-square > 1")

    @classmethod
    def named(cls, name: str) -> QuadraticScheme:
        u, v, d, c = NAMED_ALPHAS[name]
        return cls(u, v, d, c, name)

    @property
    def alpha_exact(self) -> QuadraticNumber:
        return QuadraticNumber(Fraction(self.u, self.c), Fraction(self.v, self.c), self.d)

    @property
    def alpha(self) -> float:
        return float(self.alpha_exact)

    @property
    def alpha_conj(self) -> float:
        return float(self.alpha_exact.conjugate())

    def star_exact(self, coords) -> QuadraticNumber:
        m, n = (int(t) for t in coords)
        return m + n * self.alpha_exact.conjugate()

    def direct_exact(self, coords) -> QuadraticNumber:
        m, n = (int(t) for t in coords)
        return m + n * self.alpha_exact

    def direct_values(self, coords):
        coords = np.asarray(coords)
        return coords[:, 0] + coords[:, 1] * self.alpha

    def star_values(self, coords):
        coords = np.asarray(coords)
        return coords[:, 0] + coords[:, 1] * self.alpha_conj

    def _cmp(self, coords: np.ndarray, r, conj: bool) -> np.ndarray:
        """Exact sign of (m + n q) - r with q = alpha' (conj) or alpha."""
        n_pts = len(coords)
        if r == INF:
            return -np.ones(n_pts, dtype=np.int8)
        if r == -INF:
            return np.ones(n_pts, dtype=np.int8)
        m = coords[:, 0].astype(np.float64)
        n = coords[:, 1].astype(np.float64)
        q = self.alpha_conj if conj else self.alpha
        rf = float(r)
        val = m + n * q - rf
        tol = 1e-14 * (np.abs(m) + np.abs(n) * abs(q) + abs(rf) + 1.0)
        out = np.sign(val).astype(np.int8)
        amb = np.nonzero(np.abs(val) <= tol)[0]
        if len(amb):
            fr = Fraction(r)
            num, den = fr.numerator, fr.denominator
            s = -1 if conj else 1
            for i in amb.tolist():
                mi, ni = int(coords[i, 0]), int(coords[i, 1])
                A = (mi * self.c + ni * self.u) * den - num * self.c
                B = s * ni * self.v * den
                out[i] = _sign_surd(A, B, self.d)
        return out

    def star_cmp(self, coords, r) -> np.ndarray:
        return self._cmp(np.asarray(coords), r, conj=True)

    def _in_line_set(self, coords, s: SetDescriptor, conj: bool) -> np.ndarray:
        coords = np.asarray(coords)
        mask = np.zeros(len(coords), dtype=bool)
        for iv in s.atoms:
            mask |= _interval_mask(self._cmp(coords, iv.lo, conj), self._cmp(coords, iv.hi, conj), iv)
        return mask

    def star_in(self, coords, s):
        return self._in_line_set(coords, s, conj=True)

    def direct_in(self, coords, patch):
        return self._in_line_set(coords, patch, conj=False)

    def candidates(self, window, patch):
        wb = _require_bounded_line(window, "window closure")
        pb = _require_bounded_line(patch, "patch")
        if wb is None or pb is None:
            return np.zeros((0, 2), dtype=np.int64)
        (y0, y1), (x0, x1) = (tuple(map(float, wb)), tuple(map(float, pb)))
        a, ac = self.alpha, self.alpha_conj
        delta = a - ac
        ns = np.arange(math.floor((x0 - y1) / delta) - 1, math.ceil((x1 - y0) / delta) + 2, dtype=np.int64)
        mlo = np.floor(np.maximum(x0 - ns * a, y0 - ns * ac)).astype(np.int64) - 1
        mhi = np.ceil(np.minimum(x1 - ns * a, y1 - ns * ac)).astype(np.int64) + 1
        counts = np.maximum(mhi - mlo + 1, 0)
        total = int(counts.sum())
        n_col = np.repeat(ns, counts)
        m_col = np.repeat(mlo, counts) + (np.arange(total) - np.repeat(np.cumsum(counts) - counts, counts))
        return np.stack([m_col, n_col], axis=1)

    def density_exact(self) -> QuadraticNumber:
        # 1 / |det [[1, alpha], [1, alpha']]| = c / (2 v sqrt d)
        return QuadraticNumber(0, Fraction(self.c, 2 * self.v * self.d), self.d)

    def to_json(self):
        if self.name in NAMED_ALPHAS and NAMED_ALPHAS[self.name] == (self.u, self.v, self.d, self.c):
            return {"type": "quadratic", "alpha": self.name}
        return {"type": "quadratic", "alpha": {"u": self.u, "v": self.v, "d": self.d, "c": self.c}}


def _progression(residue: int, modulus: int, patch: SetDescriptor) -> np.ndarray:
    parts = []
    for iv in patch.atoms:
        lo, hi = iv.lo, iv.hi
        if lo == -INF or hi == INF:
            raise PreconditionError("patch is unbounded")
        first = lo + ((residue - lo) % modulus)
        parts.append(np.arange(first, hi, modulus, dtype=np.int64))
    return np.concatenate(parts) if parts else np.zeros(0, dtype=np.int64)


@dataclass(frozen=True)
class PAdicScheme(Scheme):
    p: int = 2
    k: int = 20

    direct_space = SpaceDescriptor.integers()
    coord_dim = 1

    def __post_init__(self):
        object.__setattr__(self, "internal_space", SpaceDescriptor.padic(self.p, self.k))

    @property
    def modulus(self) -> int:
        return self.p**self.k

    def star_exact(self, coords) -> int:
        return int(np.ravel(coords)[0]) % self.modulus

    def direct_values(self, coords):
        return np.asarray(coords)[:, 0].astype(np.int64)

    def star_values(self, coords):
        return np.asarray(coords)[:, 0].astype(np.int64) % self.modulus

    def star_in(self, coords, s):
        n = np.asarray(coords)[:, 0].astype(np.int64)
        mask = np.zeros(len(n), dtype=bool)
        for r, j in s.atoms:
            mask |= (n % self.p**j) == r
        return mask

    def direct_in(self, coords, patch):
        n = np.asarray(coords)[:, 0]
        mask = np.zeros(len(n), dtype=bool)
        for iv in patch.atoms:
            mask |= (n >= iv.lo) & (n < iv.hi)
        return mask

    def candidates(self, window, patch):
        pts = [_progression(r, self.p**j, patch) for r, j in window.atoms]
        flat = np.concatenate(pts) if pts else np.zeros(0, dtype=np.int64)
        return flat.reshape(-1, 1)

    def density_exact(self):
        return Fraction(1)

    def to_json(self):
        return {"type": "padic", "p": self.p, "k": self.k}


@dataclass(frozen=True)
class CyclicScheme(Scheme):
    m: int = 2

    direct_space = SpaceDescriptor.integers()
    coord_dim = 1

    def __post_init__(self):
        object.__setattr__(self, "internal_space", SpaceDescriptor.cyclic(self.m))

    def star_exact(self, coords) -> int:
        return int(np.ravel(coords)[0]) % self.m

    def direct_values(self, coords):
        return np.asarray(coords)[:, 0].astype(np.int64)

    def star_values(self, coords):
        return np.asarray(coords)[:, 0].astype(np.int64) % self.m

    def star_in(self, coords, s):
        return np.isin(self.star_values(coords), np.array(s.atoms, dtype=np.int64))

    def direct_in(self, coords, patch):
        return PAdicScheme.direct_in(self, coords, patch)

    def candidates(self, window, patch):
        pts = [_progression(r, self.m, patch) for r in window.atoms]
        flat = np.concatenate(pts) if pts else np.zeros(0, dtype=np.int64)
        return flat.reshape(-1, 1)

    def density_exact(self):
        return Fraction(1, self.m)

    def to_json(self):
        return {"type": "cyclic", "m": self.m}


@dataclass(frozen=True)
class TrivialScheme(Scheme):
    """H = {0}; L = Z (over="Z") or L = spacing * Z inside R (over="R")."""

    over: str = "Z"
    spacing: Any = 1

    internal_space = SpaceDescriptor.trivial()
    coord_dim = 1

    def __post_init__(self):
        if self.over not in ("Z", "R"):
            raise PreconditionError("TrivialScheme is over 'Z' or 'R'")
        if self.over == "Z" and self.spacing != 1:
            raise PreconditionError("over Z the lattice is Z itself")
        if self.spacing <= 0:
            raise PreconditionError("spacing must be positive")
        object.__setattr__(
            self, "direct_space", SpaceDescriptor.integers() if self.over == "Z" else SpaceDescriptor.line()
        )

    def star_exact(self, coords) -> int:
        return 0

    def direct_values(self, coords):
        c = np.asarray(coords)[:, 0]
        if self.over == "Z":
            return c.astype(np.int64)
        return c * float(self.spacing)

    def star_values(self, coords):
        return np.zeros(len(coords), dtype=np.int64)

    def star_in(self, coords, s):
        return np.full(len(coords), s.contains(0), dtype=bool)

    def direct_in(self, coords, patch):
        c = np.asarray(coords)[:, 0].tolist()
        sp = Fraction(self.spacing)
        vals = c if self.over == "Z" else [t * sp for t in c]
        return np.array([patch.contains(x) for x in vals], dtype=bool)

    def candidates(self, window, patch):
        if not window.contains(0) or patch.is_empty:
            return np.zeros((0, 1), dtype=np.int64)
        if self.over == "Z":
            return _progression(0, 1, patch).reshape(-1, 1)
        lo, hi = _require_bounded_line(patch, "patch")
        sp = Fraction(self.spacing)
        t = np.arange(math.floor(Fraction(lo) / sp), math.ceil(Fraction(hi) / sp) + 1, dtype=np.int64)
        return t.reshape(-1, 1)

    def density_exact(self):
        return Fraction(1) / Fraction(self.spacing)

    def to_json(self):
        from .groups import encode_number

        return {"type": "trivial", "over": self.over, "spacing": encode_number(Fraction(self.spacing))}


@dataclass(frozen=True)
class ProductScheme(Scheme):
    left: Scheme = None
    right: Scheme = None

    def __post_init__(self):
        object.__setattr__(self, "direct_space", SpaceDescriptor.product(self.left.direct_space, self.right.direct_space))
        object.__setattr__(
            self, "internal_space", SpaceDescriptor.product(self.left.internal_space, self.right.internal_space)
        )
        object.__setattr__(self, "coord_dim", self.left.coord_dim + self.right.coord_dim)

    def _split(self, coords):
        coords = np.asarray(coords)
        return coords[:, : self.left.coord_dim], coords[:, self.left.coord_dim :]

    def star_exact(self, coords):
        c = np.ravel(coords)
        return (self.left.star_exact(c[: self.left.coord_dim]), self.right.star_exact(c[self.left.coord_dim :]))

    def direct_values(self, coords):
        a, b = self._split(coords)
        return np.stack([self.left.direct_values(a), self.right.direct_values(b)], axis=1)

    def star_values(self, coords):
        a, b = self._split(coords)
        return np.stack([self.left.star_values(a), self.right.star_values(b)], axis=1)

    def _box_mask(self, coords, s, left_fn, right_fn):
        a, b = self._split(coords)
        mask = np.zeros(len(a), dtype=bool)
        for l, r in s.atoms:
            mask |= left_fn(a, l) & right_fn(b, r)
        return mask

    def star_in(self, coords, s):
        return self._box_mask(coords, s, self.left.star_in, self.right.star_in)

    def direct_in(self, coords, patch):
        return self._box_mask(coords, patch, self.left.direct_in, self.right.direct_in)

    def candidates(self, window, patch):
        rows = []
        for wl, wr in window.atoms:
            for pl, pr in patch.atoms:
                ca = self.left.candidates(wl, pl)
                cb = self.right.candidates(wr, pr)
                if len(ca) and len(cb):
                    ia, ib = np.meshgrid(np.arange(len(ca)), np.arange(len(cb)), indexing="ij")
                    rows.append(np.concatenate([ca[ia.ravel()], cb[ib.ravel()]], axis=1))
        if not rows:
            return np.zeros((0, self.coord_dim), dtype=np.int64)
        return np.unique(np.concatenate(rows), axis=0)

    def density_exact(self):
        return self.left.density_exact() * self.right.density_exact()

    def to_json(self):
        return {"type": "product", "left": self.left.to_json(), "right": self.right.to_json()}


def scheme_from_json(d: dict) -> Scheme:
    t = d.get("type")
    if t == "quadratic":
        alpha = d.get("alpha", "golden")
        if isinstance(alpha, str):
            if alpha not in NAMED_ALPHAS:
                raise PreconditionError(f"unknown named alpha {alpha!r}")
            return QuadraticScheme.named(alpha)
        return QuadraticScheme(int(alpha["u"]), int(alpha["v"]), int(alpha["d"]), int(alpha["c"]), "custom")
    if t == "padic":
        return PAdicScheme(int(d["p"]), int(d.get("k", 20)))
    if t == "cyclic":
        return CyclicScheme(int(d["m"]))
    if t == "trivial":
        return TrivialScheme(d.get("over", "Z"), Fraction(str(d.get("spacing", 1))))
    if t == "product":
        return ProductScheme(scheme_from_json(d["left"]), scheme_from_json(d["right"]))
    raise PreconditionError(f"unknown scheme type {t!r}")


# ---------------------------------------------------------------------------
# weight functions on the internal space


@dataclass(frozen=True)
class StepWeight:
    """Finite sum of value * indicator(set); locally constant on Z_p and Z/mZ."""

    pieces: tuple  # ((SetDescriptor, value), ...)

    @classmethod
    def indicator(cls, s: SetDescriptor, value=1) -> StepWeight:
        return cls(((s, value),))

    def support(self) -> SetDescriptor:
        sets = [s.closure() for s, v in self.pieces if v != 0]
        if not sets:
            return SetDescriptor.empty(self.pieces[0][0].space) if self.pieces else None
        out = sets[0]
        for s in sets[1:]:
            out = out.union(s)
        return out

    def integral(self):
        return sum((v * s.measure() for s, v in self.pieces), 0)

    def evaluate(self, scheme: Scheme, coords) -> np.ndarray:
        out = np.zeros(len(coords), dtype=np.result_type(*[np.asarray(v) for _, v in self.pieces], np.float64))
        for s, v in self.pieces:
            out[scheme.star_in(coords, s)] += v
        return out

    def __call__(self, y):
        return sum(v for s, v in self.pieces if s.contains(y))


@dataclass(frozen=True)
class PiecewiseLinear:
    """Continuous piecewise-linear weight on the line; zero outside [first knot, last knot]."""

    knots: tuple  # ((y, value), ...)

    def __post_init__(self):
        ys = [k[0] for k in self.knots]
        if len(ys) < 2 or any(b <= a for a, b in zip(ys, ys[1:])):
            raise PreconditionError("knots must be strictly increasing (at least two)")

    def support(self) -> SetDescriptor:
        from .groups import interval

        return interval(self.knots[0][0], self.knots[-1][0], "[]")

    def integral(self):
        q = [tuple(t if isinstance(t, float) else Fraction(t) for t in k) for k in self.knots]
        return sum(((y1 - y0) * (v0 + v1) / 2 for (y0, v0), (y1, v1) in zip(q, q[1:])), Fraction(0))

    def __call__(self, y):
        ys = np.array([float(k[0]) for k in self.knots])
        vs = np.array([float(k[1]) for k in self.knots])
        return np.interp(y, ys, vs, left=0.0, right=0.0)

    def evaluate(self, scheme: Scheme, coords) -> np.ndarray:
        """Exact knot location via the scheme; constant pieces and knot hits are returned exactly."""
        coords = np.asarray(coords)
        if len(coords) == 0:
            return np.zeros(0)
        cmps = np.stack([scheme.star_cmp(coords, y) for y, _ in self.knots], axis=1)
        vals = np.array([float(v) for _, v in self.knots])
        out = self(scheme.star_values(coords))
        seg = (cmps >= 0).sum(axis=1) - 1  # index of last knot <= star
        inside = (seg >= 0) & (seg < len(self.knots) - 1)
        flat = np.zeros(len(coords), dtype=bool)
        flat[inside] = vals[seg[inside]] == vals[seg[inside] + 1]
        out[flat] = vals[seg[flat]]
        hit = cmps == 0
        on_knot = hit.any(axis=1)
        out[on_knot] = vals[np.argmax(hit[on_knot], axis=1)]
        out[~inside & ~on_knot] = 0.0
        return out


@dataclass(frozen=True)
class TensorWeight:
    left: Any
    right: Any

    def support(self) -> SetDescriptor:
        return box(self.left.support(), self.right.support())

    def integral(self):
        return self.left.integral() * self.right.integral()

    def evaluate(self, scheme: ProductScheme, coords) -> np.ndarray:
        a, b = scheme._split(coords)
        return self.left.evaluate(scheme.left, a) * self.right.evaluate(scheme.right, b)


@dataclass(frozen=True)
class SumWeight:
    terms: tuple

    def support(self) -> SetDescriptor:
        out = self.terms[0].support()
        for t in self.terms[1:]:
            out = out.union(t.support())
        return out

    def integral(self):
        return sum((t.integral() for t in self.terms), 0)

    def evaluate(self, scheme, coords) -> np.ndarray:
        return sum(t.evaluate(scheme, coords) for t in self.terms)


# ---------------------------------------------------------------------------
# operations


def star(scheme: Scheme, x):
    """Exact star image of a lattice point (LatticePoint or coordinate tuple)."""
    coords = x.coords if isinstance(x, LatticePoint) else x
    return scheme.star_exact(coords)


def cut_and_project(scheme: Scheme, W, patch: SetDescriptor) -> PointSet:
    """All lattice points with direct value in ``patch`` and star in ``W`` (complete enumeration)."""
    W = _as_window(W).descriptor
    if W.space != scheme.internal_space:
        raise PreconditionError(f"window lives in {W.space}, scheme internal space is {scheme.internal_space}")
    if patch.space != scheme.direct_space:
        raise PreconditionError(f"patch lives in {patch.space}, scheme direct space is {scheme.direct_space}")
    if not patch.is_empty and not patch.is_bounded:
        raise PreconditionError("patch is unbounded")
    if W.is_empty or patch.is_empty:
        coords = np.zeros((0, scheme.coord_dim), dtype=np.int64)
    else:
        coords = scheme.candidates(W, patch)
        if len(coords):
            coords = coords[scheme.direct_in(coords, patch) & scheme.star_in(coords, W)]
    return PointSet(scheme.direct_values(coords), patch, coords, scheme.star_values(coords))


def omega_comb(scheme: Scheme, h, patch: SetDescriptor) -> PointMeasure:
    """``sum_x h(x*) delta_x`` over lattice points in the patch (zero weights dropped)."""
    supp = h.support()
    if supp is None or supp.is_empty:
        return PointMeasure.zero(patch)
    if not supp.is_bounded:
        raise PreconditionError("weight function must have compact support")
    ps = cut_and_project(scheme, supp, patch)
    w = h.evaluate(scheme, ps.coords)
    keep = w != 0
    return PointMeasure(ps.points[keep], w[keep], patch, ps.coords[keep])


def density_constant(scheme: Scheme) -> float:
    return float(scheme.density_exact())


@dataclass
class LiftCheck:
    max_deviation: float
    passed: bool
    coord_bound: int


def dual_frequencies(scheme: QuadraticScheme, k: int, l: int):
    """(beta, gamma) with beta - gamma = k and beta alpha - gamma alpha' = l, exactly."""
    a = scheme.alpha_exact
    ac = a.conjugate()
    beta = (l - k * ac) / (a - ac)
    gamma = (l - k * a) / (a - ac)
    return beta, gamma


def character_lift_check(scheme: Scheme, beta, gamma, coord_bound: int = 1000, tol: float = 1e-9) -> LiftCheck:
    """max |exp(2 pi i beta x) - exp(2 pi i gamma x*)| over lattice coords |m|, |n| <= coord_bound."""
    if not isinstance(scheme, QuadraticScheme):
        raise UnsupportedError("character lifts are implemented for Euclidean internal spaces only")
    beta, gamma = float(beta), float(gamma)
    ms = np.arange(-coord_bound, coord_bound + 1, dtype=np.float64)
    worst = 0.0
    for n in range(-coord_bound, coord_bound + 1):
        x = ms + n * scheme.alpha
        y = ms + n * scheme.alpha_conj
        dev = np.abs(np.exp(2j * np.pi * beta * x) - np.exp(2j * np.pi * gamma * y))
        worst = max(worst, float(dev.max()))
    return LiftCheck(worst, worst <= tol, coord_bound)
