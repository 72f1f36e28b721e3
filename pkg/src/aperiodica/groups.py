"""Ambient groups, set descriptors with exact Haar measure, K-boundaries and van Hove sequences.

Supported groups: the real line, the integers, the p-adic integers truncated at depth k,
finite cyclic groups and binary products of those (the Euclidean plane is the product of
two lines). Sets are finite unions of atoms: intervals with explicit open/closed ends on the
line, integer ranges on Z, residue classes ``r + p^j Z_p`` and arbitrary subsets of Z/mZ.
All set algebra is exact; endpoints may be ints, Fractions or floats (floats are compared as
the binary rationals they are).
"""
from __future__ import annotations

import functools
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Any, Iterable

from .errors import DomainMismatchError, MeasureInfiniteError, PreconditionError

INF = math.inf

LINE = "EuclideanLine"
INTEGERS = "Integers"
PADIC = "PAdic"
CYCLIC = "Cyclic"
PRODUCT = "Product"


def is_prime(p: int) -> bool:
    if p < 2:
        return False
    return all(p % q for q in range(2, math.isqrt(p) + 1))


@dataclass(frozen=True)
class SpaceDescriptor:
    kind: str
    p: int = 0
    k: int = 0
    m: int = 0
    left: SpaceDescriptor | None = None
    right: SpaceDescriptor | None = None

    def __post_init__(self):
        if self.kind == PADIC:
            if not is_prime(self.p):
                raise PreconditionError(f"p={self.p} is not prime")
            if self.k < 1:
                raise PreconditionError(f"precision depth k={self.k} must be >= 1")
        elif self.kind == CYCLIC:
            if self.m < 1:
                raise PreconditionError(f"cyclic order m={self.m} must be >= 1")
        elif self.kind == PRODUCT:
            if self.left is None or self.right is None:
                raise PreconditionError("product space needs two factors")
            if self.depth > 2:
                raise PreconditionError("product nesting depth is limited to 2")
        elif self.kind not in (LINE, INTEGERS):
            raise PreconditionError(f"unknown space kind {self.kind!r}")

    @classmethod
    def line(cls) -> SpaceDescriptor:
        return cls(LINE)

    @classmethod
    def plane(cls) -> SpaceDescriptor:
        return cls.product(cls.line(), cls.line())

    @classmethod
    def integers(cls) -> SpaceDescriptor:
        return cls(INTEGERS)

    @classmethod
    def padic(cls, p: int, k: int) -> SpaceDescriptor:
        return cls(PADIC, p=p, k=k)

    @classmethod
    def cyclic(cls, m: int) -> SpaceDescriptor:
        return cls(CYCLIC, m=m)

    @classmethod
    def trivial(cls) -> SpaceDescriptor:
        """The one-point group {0}, realised as Z/1Z."""
        return cls(CYCLIC, m=1)

    @classmethod
    def product(cls, left: SpaceDescriptor, right: SpaceDescriptor) -> SpaceDescriptor:
        return cls(PRODUCT, left=left, right=right)

    @property
    def depth(self) -> int:
        if self.kind != PRODUCT:
            return 0
        return 1 + max(self.left.depth, self.right.depth)

    @property
    def haar_normalization(self) -> str:
        return {
            LINE: "lebesgue",
            INTEGERS: "counting",
            CYCLIC: "counting",
            PADIC: "total-mass-1",
            PRODUCT: "product",
        }[self.kind]

    @property
    def is_discrete(self) -> bool:
        if self.kind == PRODUCT:
            return self.left.is_discrete and self.right.is_discrete
        return self.kind in (INTEGERS, CYCLIC)

    @property
    def is_compact(self) -> bool:
        if self.kind == PRODUCT:
            return self.left.is_compact and self.right.is_compact
        return self.kind in (PADIC, CYCLIC)

    @property
    def is_euclidean(self) -> bool:
        if self.kind == PRODUCT:
            return self.left.is_euclidean and self.right.is_euclidean
        return self.kind == LINE

    def to_json(self) -> dict:
        if self.kind == PADIC:
            return {"kind": PADIC, "p": self.p, "k": self.k}
        if self.kind == CYCLIC:
            return {"kind": CYCLIC, "m": self.m}
        if self.kind == PRODUCT:
            return {"kind": PRODUCT, "left": self.left.to_json(), "right": self.right.to_json()}
        return {"kind": self.kind}

    @classmethod
    def from_json(cls, d: dict) -> SpaceDescriptor:
        kind = d["kind"]
        if kind == "EuclideanPlane":
            return cls.plane()
        if kind == PADIC:
            return cls.padic(int(d["p"]), int(d["k"]))
        if kind == CYCLIC:
            return cls.cyclic(int(d["m"]))
        if kind == PRODUCT:
            return cls.product(cls.from_json(d["left"]), cls.from_json(d["right"]))
        return cls(kind)

    def __str__(self) -> str:
        if self.kind == PADIC:
            return f"Z_{self.p} (depth {self.k})"
        if self.kind == CYCLIC:
            return f"Z/{self.m}Z"
        if self.kind == PRODUCT:
            return f"({self.left} x {self.right})"
        return {LINE: "R", INTEGERS: "Z"}[self.kind]


@dataclass(frozen=True)
class Interval:
    """Interval atom. On Z it is always stored as the half-open integer range [lo, hi)."""

    lo: Any
    hi: Any
    lo_closed: bool = True
    hi_closed: bool = False

    def bounds(self) -> str:
        return ("[" if self.lo_closed else "(") + (("]" if self.hi_closed else ")"))


def _num(x):
    if isinstance(x, str):
        if x in ("inf", "+inf"):
            return INF
        if x == "-inf":
            return -INF
        f = Fraction(x)
        return f.numerator if f.denominator == 1 else f
    if isinstance(x, Fraction) and x.denominator == 1:
        return x.numerator
    return x


def encode_number(x) -> Any:
    if isinstance(x, Fraction):
        return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"
    if isinstance(x, float) and math.isinf(x):
        return "inf" if x > 0 else "-inf"
    return x


# ---------------------------------------------------------------------------
# per-kind algebra; atoms are canonical tuples


class _RealAlgebra:
    def universe(self):
        return (Interval(-INF, INF, False, False),)

    @staticmethod
    def _clean(iv: Interval) -> Interval | None:
        lo, hi = _num(iv.lo), _num(iv.hi)
        lc = iv.lo_closed and lo != -INF
        hc = iv.hi_closed and hi != INF
        if lo > hi or (lo == hi and not (lc and hc)) or lo == INF or hi == -INF:
            return None
        return Interval(lo, hi, lc, hc)

    def normalize(self, atoms):
        ivs = [c for c in (self._clean(a) for a in atoms) if c is not None]
        ivs.sort(key=lambda a: (a.lo, not a.lo_closed))
        out: list[Interval] = []
        for iv in ivs:
            if out:
                cur = out[-1]
                if iv.lo < cur.hi or (iv.lo == cur.hi and (cur.hi_closed or iv.lo_closed)):
                    if iv.hi > cur.hi:
                        out[-1] = Interval(cur.lo, iv.hi, cur.lo_closed, iv.hi_closed)
                    elif iv.hi == cur.hi and iv.hi_closed and not cur.hi_closed:
                        out[-1] = Interval(cur.lo, cur.hi, cur.lo_closed, True)
                    continue
            out.append(iv)
        return tuple(out)

    def complement(self, atoms):
        gaps = []
        prev, left_closed = -INF, False
        for a in atoms:
            gaps.append(Interval(prev, a.lo, left_closed, not a.lo_closed))
            prev, left_closed = a.hi, not a.hi_closed
        gaps.append(Interval(prev, INF, left_closed, False))
        return self.normalize(gaps)

    def union(self, a, b):
        return self.normalize(a + b)

    def intersection(self, a, b):
        return self.complement(self.union(self.complement(a), self.complement(b)))

    def minkowski(self, a, b):
        return self.normalize(
            Interval(x.lo + y.lo, x.hi + y.hi, x.lo_closed and y.lo_closed, x.hi_closed and y.hi_closed)
            for x in a
            for y in b
        )

    def neg(self, a):
        return self.normalize(Interval(-x.hi, -x.lo, x.hi_closed, x.lo_closed) for x in a)

    def translate(self, a, t):
        t = _num(t)
        return self.normalize(Interval(x.lo + t, x.hi + t, x.lo_closed, x.hi_closed) for x in a)

    def interior(self, a):
        return self.normalize(Interval(x.lo, x.hi, False, False) for x in a)

    def closure(self, a):
        return self.normalize(Interval(x.lo, x.hi, True, True) for x in a)

    def measure(self, a):
        total = 0
        for x in a:
            if x.lo == -INF or x.hi == INF:
                raise MeasureInfiniteError("unbounded interval has infinite Lebesgue measure")
            total += x.hi - x.lo
        return total

    def contains(self, a, x) -> bool:
        for iv in a:
            if (iv.lo < x or (iv.lo_closed and iv.lo == x)) and (x < iv.hi or (iv.hi_closed and x == iv.hi)):
                return True
        return False

    def atom_json(self, a):
        return {"lo": encode_number(a.lo), "hi": encode_number(a.hi), "bounds": a.bounds()}

    def atom_from_json(self, d):
        b = d.get("bounds", "[)")
        return Interval(_num(d["lo"]), _num(d["hi"]), b[0] == "[", b[1] == "]")


def _ceil(x):
    return x if x in (INF, -INF) else math.ceil(x)


def _floor(x):
    return x if x in (INF, -INF) else math.floor(x)


class _IntAlgebra(_RealAlgebra):
    """Integer sets as unions of half-open ranges [lo, hi)."""

    def universe(self):
        return (Interval(-INF, INF, True, False),)

    def normalize(self, atoms):
        ranges = []
        for a in atoms:
            lo, hi = _num(a.lo), _num(a.hi)
            lo = _ceil(lo) if a.lo_closed else _floor(lo) + 1
            hi = _floor(hi) + 1 if a.hi_closed else _ceil(hi)
            if lo < hi:
                ranges.append((lo, hi))
        ranges.sort()
        out: list[list] = []
        for lo, hi in ranges:
            if out and lo <= out[-1][1]:
                out[-1][1] = max(out[-1][1], hi)
            else:
                out.append([lo, hi])
        return tuple(Interval(lo, hi, True, False) for lo, hi in out)

    def complement(self, atoms):
        gaps, prev = [], -INF
        for a in atoms:
            gaps.append(Interval(prev, a.lo))
            prev = a.hi
        gaps.append(Interval(prev, INF))
        return self.normalize(gaps)

    def minkowski(self, a, b):
        return self.normalize(Interval(x.lo + y.lo, x.hi + y.hi - 1) for x in a for y in b)

    def neg(self, a):
        return self.normalize(Interval(1 - x.hi, 1 - x.lo) for x in a)

    def interior(self, a):
        return a

    def closure(self, a):
        return a

    def contains(self, a, x) -> bool:
        if x != math.floor(x):
            return False
        return any(iv.lo <= x < iv.hi for iv in a)

    def atom_json(self, a):
        return {"lo": encode_number(a.lo), "hi": encode_number(a.hi), "bounds": "[)"}


class _PAdicAlgebra:
    """Unions of residue classes (r, j) = r + p^j Z_p with 0 <= j <= k."""

    def __init__(self, p: int, k: int):
        self.p, self.k = p, k

    def universe(self):
        return ((0, 0),)

    def _covered(self, classes: set, r: int, j: int) -> bool:
        p = self.p
        return any((r % p**i, i) in classes for i in range(j + 1))

    def normalize(self, atoms):
        p, k = self.p, self.k
        raw = set()
        for r, j in atoms:
            if not 0 <= j <= k:
                raise PreconditionError(f"residue depth {j} outside 0..{k}")
            raw.add((r % p**j, j))
        kept: set = set()
        for r, j in sorted(raw, key=lambda c: (c[1], c[0])):
            if not self._covered(kept, r, j):
                kept.add((r, j))
        for j in range(k, 0, -1):
            children: dict = {}
            for r, jj in kept:
                if jj == j:
                    children.setdefault(r % p ** (j - 1), []).append((r, jj))
            for parent, kids in children.items():
                if len(kids) == p:
                    kept.difference_update(kids)
                    kept.add((parent, j - 1))
        return tuple(sorted(kept, key=lambda c: (c[1], c[0])))

    def complement(self, atoms):
        p = self.p
        classes = set(atoms)
        prefixes = set()
        for r, j in atoms:
            for i in range(j + 1):
                prefixes.add((r % p**i, i))
        out = []
        stack = [(0, 0)]
        while stack:
            r, j = stack.pop()
            if self._covered(classes, r, j):
                continue
            if (r, j) not in prefixes:
                out.append((r, j))
                continue
            stack.extend((r + t * p**j, j + 1) for t in range(p))
        return self.normalize(out)

    def union(self, a, b):
        return self.normalize(a + b)

    def intersection(self, a, b):
        sa, sb = set(a), set(b)
        keep = [c for c in a if self._covered(sb, *c)] + [c for c in b if self._covered(sa, *c)]
        return self.normalize(keep)

    def minkowski(self, a, b):
        p = self.p
        out = []
        for r1, j1 in a:
            for r2, j2 in b:
                j = min(j1, j2)
                out.append(((r1 + r2) % p**j, j))
        return self.normalize(out)

    def neg(self, a):
        return self.normalize(((-r) % self.p**j, j) for r, j in a)

    def translate(self, a, t):
        return self.normalize(((r + int(t)) % self.p**j, j) for r, j in a)

    def interior(self, a):
        return a

    def closure(self, a):
        return a

    def measure(self, a):
        return sum((Fraction(1, self.p**j) for _, j in a), Fraction(0))

    def contains(self, a, x) -> bool:
        x = int(x)
        return any(x % self.p**j == r for r, j in a)

    def atom_json(self, a):
        return {"residue": a[0], "depth": a[1]}

    def atom_from_json(self, d):
        return (int(d["residue"]), int(d["depth"]))


class _CyclicAlgebra:
    def __init__(self, m: int):
        self.m = m

    def universe(self):
        return tuple(range(self.m))

    def normalize(self, atoms):
        return tuple(sorted({int(x) % self.m for x in atoms}))

    def complement(self, a):
        s = set(a)
        return tuple(x for x in range(self.m) if x not in s)

    def union(self, a, b):
        return self.normalize(a + b)

    def intersection(self, a, b):
        return tuple(sorted(set(a) & set(b)))

    def minkowski(self, a, b):
        return self.normalize(x + y for x in a for y in b)

    def neg(self, a):
        return self.normalize(-x for x in a)

    def translate(self, a, t):
        return self.normalize(x + int(t) for x in a)

    def interior(self, a):
        return a

    def closure(self, a):
        return a

    def measure(self, a):
        return len(a)

    def contains(self, a, x) -> bool:
        return int(x) % self.m in a

    def atom_json(self, a):
        return a

    def atom_from_json(self, d):
        return int(d)


class _ProductAlgebra:
    """Finite unions of boxes (left, right) of factor descriptors.

    Interior and closure act box by box; for unions of boxes sharing a face this is exact
    only up to Haar-null sets, which is all that K-boundary measures need.
    """

    def __init__(self, space: SpaceDescriptor):
        self.space = space

    def universe(self):
        return ((SetDescriptor.universe(self.space.left), SetDescriptor.universe(self.space.right)),)

    @staticmethod
    def _refine(sets: list[SetDescriptor], universe: SetDescriptor | None) -> list[SetDescriptor]:
        pieces: list[SetDescriptor] = [universe] if universe is not None else []
        for s in sets:
            new: list[SetDescriptor] = []
            rest = s
            for piece in pieces:
                inside = piece.intersection(s)
                outside = piece.difference(s)
                if not inside.is_empty:
                    new.append(inside)
                if not outside.is_empty:
                    new.append(outside)
                rest = rest.difference(piece)
            if not rest.is_empty:
                new.append(rest)
            pieces = new
        return pieces

    def _cells(self, boxes, with_universe: bool):
        sp = self.space
        lefts = self._refine([b[0] for b in boxes], SetDescriptor.universe(sp.left) if with_universe else None)
        rights = self._refine([b[1] for b in boxes], SetDescriptor.universe(sp.right) if with_universe else None)
        covered = set()
        for bl, br in boxes:
            li = [i for i, piece in enumerate(lefts) if not piece.intersection(bl).is_empty]
            ri = [j for j, piece in enumerate(rights) if not piece.intersection(br).is_empty]
            covered.update((i, j) for i in li for j in ri)
        return lefts, rights, covered

    def _assemble(self, lefts, rights, cells):
        by_left: dict[int, frozenset] = {}
        for i in range(len(lefts)):
            js = frozenset(j for j in range(len(rights)) if (i, j) in cells)
            if js:
                by_left[i] = js
        groups: dict[frozenset, list[int]] = {}
        for i, js in by_left.items():
            groups.setdefault(js, []).append(i)
        boxes = []
        for js, idx in groups.items():
            left = functools.reduce(SetDescriptor.union, (lefts[i] for i in idx))
            right = functools.reduce(SetDescriptor.union, (rights[j] for j in sorted(js)))
            boxes.append((left, right))
        boxes.sort(key=lambda b: (repr(b[0].atoms), repr(b[1].atoms)))
        return tuple(boxes)

    def normalize(self, atoms):
        boxes = [(l, r) for l, r in atoms if not l.is_empty and not r.is_empty]
        if not boxes:
            return ()
        lefts, rights, cells = self._cells(boxes, with_universe=False)
        return self._assemble(lefts, rights, cells)

    def complement(self, a):
        if not a:
            return self.universe()
        lefts, rights, cells = self._cells(list(a), with_universe=True)
        missing = {(i, j) for i in range(len(lefts)) for j in range(len(rights))} - cells
        return self._assemble(lefts, rights, missing)

    def union(self, a, b):
        return self.normalize(a + b)

    def intersection(self, a, b):
        return self.normalize((l1.intersection(l2), r1.intersection(r2)) for l1, r1 in a for l2, r2 in b)

    def minkowski(self, a, b):
        return self.normalize((l1.minkowski(l2), r1.minkowski(r2)) for l1, r1 in a for l2, r2 in b)

    def neg(self, a):
        return self.normalize((l.neg(), r.neg()) for l, r in a)

    def translate(self, a, t):
        return self.normalize((l.translate(t[0]), r.translate(t[1])) for l, r in a)

    def interior(self, a):
        return self.normalize((l.interior(), r.interior()) for l, r in a)

    def closure(self, a):
        return self.normalize((l.closure(), r.closure()) for l, r in a)

    def measure(self, a):
        total = 0
        for l, r in a:
            ml, mr = _safe_measure(l), _safe_measure(r)
            if ml == 0 or mr == 0:
                continue
            if ml == INF or mr == INF:
                raise MeasureInfiniteError("unbounded box has infinite product measure")
            total += ml * mr
        return total

    def contains(self, a, x) -> bool:
        return any(l.contains(x[0]) and r.contains(x[1]) for l, r in a)

    def atom_json(self, a):
        return {"left": [a[0].algebra.atom_json(t) for t in a[0].atoms], "right": [a[1].algebra.atom_json(t) for t in a[1].atoms]}

    def atom_from_json(self, d):
        left = SetDescriptor(self.space.left, tuple(_algebra(self.space.left).atom_from_json(t) for t in d["left"]))
        right = SetDescriptor(self.space.right, tuple(_algebra(self.space.right).atom_from_json(t) for t in d["right"]))
        return (left, right)


def _safe_measure(s: SetDescriptor):
    try:
        return s.measure()
    except MeasureInfiniteError:
        return INF


@functools.lru_cache(maxsize=None)
def _algebra(space: SpaceDescriptor):
    if space.kind == LINE:
        return _RealAlgebra()
    if space.kind == INTEGERS:
        return _IntAlgebra()
    if space.kind == PADIC:
        return _PAdicAlgebra(space.p, space.k)
    if space.kind == CYCLIC:
        return _CyclicAlgebra(space.m)
    return _ProductAlgebra(space)


# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class SetDescriptor:
    """A set in ``space`` given by canonical, pairwise disjoint atoms."""

    space: SpaceDescriptor
    atoms: tuple = ()

    def __post_init__(self):
        object.__setattr__(self, "atoms", _algebra(self.space).normalize(tuple(self.atoms)))

    @property
    def algebra(self):
        return _algebra(self.space)

    @classmethod
    def universe(cls, space: SpaceDescriptor) -> SetDescriptor:
        return cls(space, _algebra(space).universe())

    @classmethod
    def empty(cls, space: SpaceDescriptor) -> SetDescriptor:
        return cls(space, ())

    def _check(self, other: SetDescriptor):
        if self.space != other.space:
            raise DomainMismatchError(f"{self.space} vs {other.space}")

    def _new(self, atoms) -> SetDescriptor:
        return SetDescriptor(self.space, atoms)

    @property
    def is_empty(self) -> bool:
        return not self.atoms

    def union(self, other: SetDescriptor) -> SetDescriptor:
        self._check(other)
        return self._new(self.algebra.union(self.atoms, other.atoms))

    def intersection(self, other: SetDescriptor) -> SetDescriptor:
        self._check(other)
        return self._new(self.algebra.intersection(self.atoms, other.atoms))

    def complement(self) -> SetDescriptor:
        return self._new(self.algebra.complement(self.atoms))

    def difference(self, other: SetDescriptor) -> SetDescriptor:
        self._check(other)
        return self.intersection(other.complement())

    def minkowski(self, other: SetDescriptor) -> SetDescriptor:
        """Minkowski sum ``self + other``."""
        self._check(other)
        return self._new(self.algebra.minkowski(self.atoms, other.atoms))

    def neg(self) -> SetDescriptor:
        return self._new(self.algebra.neg(self.atoms))

    def translate(self, t) -> SetDescriptor:
        return self._new(self.algebra.translate(self.atoms, t))

    def interior(self) -> SetDescriptor:
        return self._new(self.algebra.interior(self.atoms))

    def closure(self) -> SetDescriptor:
        return self._new(self.algebra.closure(self.atoms))

    def measure(self):
        return self.algebra.measure(self.atoms)

    def contains(self, x) -> bool:
        return self.algebra.contains(self.atoms, x)

    def issubset(self, other: SetDescriptor) -> bool:
        return self.difference(other).is_empty

    def same_set(self, other: SetDescriptor) -> bool:
        return self.issubset(other) and other.issubset(self)

    def hull(self) -> tuple:
        """(inf, sup) of a set on the line or on Z."""
        if self.space.kind not in (LINE, INTEGERS):
            raise PreconditionError("hull is defined for subsets of R and Z only")
        if self.is_empty:
            raise PreconditionError("empty set has no hull")
        lo, hi = self.atoms[0].lo, self.atoms[-1].hi
        if self.space.kind == INTEGERS and hi != INF:
            hi -= 1
        return lo, hi

    @property
    def is_bounded(self) -> bool:
        try:
            self.closure().measure()
        except MeasureInfiniteError:
            return False
        if self.space.kind == PRODUCT:
            return all(l.is_bounded and r.is_bounded for l, r in self.atoms)
        return True

    def to_json(self) -> dict:
        return {"space": self.space.to_json(), "atoms": [self.algebra.atom_json(a) for a in self.atoms]}

    @classmethod
    def from_json(cls, d: dict) -> SetDescriptor:
        space = SpaceDescriptor.from_json(d["space"])
        alg = _algebra(space)
        return cls(space, tuple(alg.atom_from_json(a) for a in d["atoms"]))


# convenience constructors


def interval(lo, hi, bounds: str = "[)") -> SetDescriptor:
    return SetDescriptor(SpaceDescriptor.line(), (Interval(_num(lo), _num(hi), bounds[0] == "[", bounds[1] == "]"),))


def real_set(*pairs, bounds: str = "[)") -> SetDescriptor:
    atoms = tuple(Interval(_num(a), _num(b), bounds[0] == "[", bounds[1] == "]") for a, b in pairs)
    return SetDescriptor(SpaceDescriptor.line(), atoms)


def integer_range(lo: int, hi: int) -> SetDescriptor:
    """The integers lo, lo+1, ..., hi (both ends included)."""
    return SetDescriptor(SpaceDescriptor.integers(), (Interval(lo, hi, True, True),))


def integer_points(points: Iterable[int]) -> SetDescriptor:
    return SetDescriptor(SpaceDescriptor.integers(), tuple(Interval(int(x), int(x) + 1) for x in points))


def residue_class(r: int, j: int, p: int, k: int) -> SetDescriptor:
    return SetDescriptor(SpaceDescriptor.padic(p, k), ((r, j),))


def cyclic_set(m: int, elements: Iterable[int]) -> SetDescriptor:
    return SetDescriptor(SpaceDescriptor.cyclic(m), tuple(elements))


def box(left: SetDescriptor, right: SetDescriptor) -> SetDescriptor:
    return SetDescriptor(SpaceDescriptor.product(left.space, right.space), ((left, right),))


# ---------------------------------------------------------------------------
# operations


def haar_measure(s: SetDescriptor):
    """Haar measure of a descriptor under the fixed normalisation of its space."""
    return s.measure()


def k_boundary(a: SetDescriptor, K: SetDescriptor) -> SetDescriptor:
    """``((A+K) ∩ (G∖A°)) ∪ ((−K + closure(G∖A)) ∩ A)``."""
    a._check(K)
    outer = a.minkowski(K).intersection(a.interior().complement())
    inner = K.neg().minkowski(a.complement().closure()).intersection(a)
    return outer.union(inner)


@dataclass(frozen=True)
class VanHoveSpec:
    """Centred balls of radius n; compact groups use the whole group at every n."""

    space: SpaceDescriptor
    shape: str = "ball"

    def set_at(self, n, center=None) -> SetDescriptor:
        if n < 1:
            raise PreconditionError("van Hove index starts at 1")
        s = _ball(self.space, n)
        return s if center is None else s.translate(center)

    def measure(self, n):
        return haar_measure(self.set_at(n))


def _ball(space: SpaceDescriptor, n) -> SetDescriptor:
    if space.kind == LINE:
        return SetDescriptor(space, (Interval(-n, n, True, False),))
    if space.kind == INTEGERS:
        return SetDescriptor(space, (Interval(-n, n, True, True),))
    if space.kind == PRODUCT:
        return SetDescriptor(space, ((_ball(space.left, n), _ball(space.right, n)),))
    return SetDescriptor.universe(space)


def van_hove_ratio(v: VanHoveSpec, K: SetDescriptor, n) -> Fraction | float:
    """``|∂^K A_n| / |A_n|``."""
    a = v.set_at(n)
    num = haar_measure(k_boundary(a, K))
    den = haar_measure(a)
    if isinstance(num, float) or isinstance(den, float):
        return num / den
    return Fraction(num, 1) / den
