"""Simplices, filtered simplicial complexes, and Vietoris-Rips filtrations."""

from __future__ import annotations

import math
from bisect import bisect_right
from dataclasses import dataclass, field
from typing import Iterable, Sequence

import numpy as np


class Simplex(tuple):
    """Strictly increasing tuple of non-negative vertex ids."""

    __slots__ = ()

    def __new__(cls, vertices: Iterable[int]):
        vs = sorted(vertices)
        if not vs:
            raise ValueError("a simplex needs at least one vertex")
        for v in vs:
            if not isinstance(v, (int, np.integer)) or v < 0:
                raise ValueError(f"vertex ids must be non-negative integers, got {v!r}")
        for a, b in zip(vs, vs[1:]):
            if a == b:
                raise ValueError(f"duplicate vertex id {a} in simplex")
        return tuple.__new__(cls, (int(v) for v in vs))

    def __getnewargs__(self):
        return (tuple(self),)

    @property
    def dim(self) -> int:
        return len(self) - 1

    def face(self, i: int) -> "Simplex":
        """The i-th face: drop the vertex at position i."""
        if self.dim == 0:
            raise ValueError("a vertex has no faces")
        if not 0 <= i <= self.dim:
            raise IndexError(f"face index {i} out of range for dim {self.dim}")
        return Simplex(self[:i] + self[i + 1:])

    def faces(self):
        """All codimension-1 faces, in face-index order."""
        return [self.face(i) for i in range(len(self))]

    def __repr__(self):
        return f"<{','.join(map(str, self))}>"


@dataclass(frozen=True)
class PointCloud:
    """Points in a fixed-dimension Euclidean space, optionally labeled."""

    points: np.ndarray
    labels: tuple[str, ...] | None = None

    def __post_init__(self):
        pts = np.asarray(self.points, dtype=float)
        if pts.ndim != 2 or pts.shape[0] < 1:
            raise ValueError("point cloud needs at least one point with uniform arity")
        object.__setattr__(self, "points", pts)
        if self.labels is not None:
            labels = tuple(self.labels)
            if len(labels) != pts.shape[0]:
                raise ValueError("label count does not match point count")
            object.__setattr__(self, "labels", labels)

    def __len__(self) -> int:
        return self.points.shape[0]

    @property
    def dim(self) -> int:
        return self.points.shape[1]

    def distance(self, i: int, j: int) -> float:
        return math.dist(self.points[i], self.points[j])


class FilteredComplex:
    """A finite simplicial complex with a monotone filtration value per simplex.

    Simplices are kept in the fixed total order (value, dimension, vertex
    lexicographic), so within each dimension the simplices of any sublevel
    complex form a prefix of that dimension's list.
    """

    def __init__(self, items: Iterable[tuple[Sequence[int], float]]):
        value_of: dict[Simplex, float] = {}
        for spec, val in items:
            s = spec if isinstance(spec, Simplex) else Simplex(spec)
            v = float(val)
            if s in value_of:
                raise ValueError(f"duplicate simplex {s}")
            value_of[s] = v
        for s, v in value_of.items():
            if s.dim == 0:
                continue
            for f in s.faces():
                fv = value_of.get(f)
                if fv is None:
                    raise ValueError(f"complex not closed under faces: {f} missing (face of {s})")
                if fv > v:
                    raise ValueError(
                        f"filtration not monotone: value({f})={fv} > value({s})={v}"
                    )
        ordered = sorted(value_of.items(), key=lambda kv: (kv[1], kv[0].dim, kv[0]))
        self._items: tuple[tuple[Simplex, float], ...] = tuple(ordered)
        max_dim = max((s.dim for s, _ in ordered), default=-1)
        self._simplices: list[tuple[Simplex, ...]] = []
        self._values: list[tuple[float, ...]] = []
        self._index: dict[Simplex, int] = {}
        for n in range(max_dim + 1):
            level = [(s, v) for s, v in ordered if s.dim == n]
            self._simplices.append(tuple(s for s, _ in level))
            self._values.append(tuple(v for _, v in level))
            for k, (s, _) in enumerate(level):
                self._index[s] = k
        self.critical_values: tuple[float, ...] = tuple(sorted({v for _, v in ordered}))
        # per-level sublevel sizes, indexed [level][dimension]
        self._counts = [
            tuple(bisect_right(self._values[n], cv) for n in range(max_dim + 1))
            for cv in self.critical_values
        ]

    # -- basic queries --------------------------------------------------
    @property
    def max_dim(self) -> int:
        return len(self._simplices) - 1

    @property
    def num_levels(self) -> int:
        return len(self.critical_values)

    def __len__(self) -> int:
        return len(self._items)

    def items(self) -> tuple[tuple[Simplex, float], ...]:
        return self._items

    def simplices(self, n: int) -> tuple[Simplex, ...]:
        if 0 <= n <= self.max_dim:
            return self._simplices[n]
        return ()

    def values(self, n: int) -> tuple[float, ...]:
        if 0 <= n <= self.max_dim:
            return self._values[n]
        return ()

    def index(self, simplex: Simplex) -> int:
        """Position of a simplex within its dimension's ordering."""
        return self._index[simplex]

    def level_of(self, a: float) -> int:
        """Index of the largest critical value <= a (-1 if a precedes all)."""
        if math.isnan(a):
            raise ValueError("filtration parameter is NaN")
        return bisect_right(self.critical_values, a) - 1

    def count(self, n: int, level: int | None = None) -> int:
        """Number of n-simplices at a sublevel (by critical-value index)."""
        if n < 0 or n > self.max_dim:
            return 0
        if level is None:
            return len(self._simplices[n])
        if level < 0:
            return 0
        return self._counts[min(level, self.num_levels - 1)][n]

    def counts_at(self, a: float) -> tuple[int, ...]:
        """Per-dimension simplex counts of the sublevel complex at value a."""
        level = self.level_of(a)
        if level < 0:
            return (0,) * (self.max_dim + 1)
        return self._counts[level]

    def __eq__(self, other):
        return isinstance(other, FilteredComplex) and self._items == other._items

    def __hash__(self):
        return hash(self._items)

    def __repr__(self):
        sizes = "+".join(str(len(s)) for s in self._simplices)
        return f"FilteredComplex({sizes} simplices, {self.num_levels} critical values)"


def sublevel_sizes(K: FilteredComplex, a: float) -> tuple[int, ...]:
    """Per-dimension counts of simplices with filtration value <= a."""
    return K.counts_at(a)


def vr_filtration(
    cloud: PointCloud,
    max_dim: int = 3,
    max_radius: float | None = None,
) -> FilteredComplex:
    """Vietoris-Rips filtration of a point cloud.

    A simplex enters at its Euclidean diameter (the largest pairwise distance
    among its vertices); vertices enter at 0.  Only simplices of dimension
    <= max_dim and diameter <= max_radius are kept.
    """
    if max_dim < 0:
        raise ValueError("max_dim must be >= 0")
    if max_radius is not None and max_radius < 0:
        raise ValueError("max_radius must be non-negative")
    pts = cloud.points
    n = len(pts)
    dist = [[0.0] * n for _ in range(n)]
    for i in range(n):
        for j in range(i + 1, n):
            d = math.dist(pts[i], pts[j])
            dist[i][j] = d
            dist[j][i] = d
    items: list[tuple[tuple[int, ...], float]] = [((v,), 0.0) for v in range(n)]
    if max_dim == 0:
        return FilteredComplex(items)
    nbrs = [
        [u for u in range(v + 1, n) if max_radius is None or dist[v][u] <= max_radius]
        for v in range(n)
    ]

    def expand(simplex: tuple[int, ...], value: float, cands: list[int]):
        for idx, u in enumerate(cands):
            d = max(dist[w][u] for w in simplex)
            val = value if value >= d else d
            new = simplex + (u,)
            items.append((new, val))
            if len(new) <= max_dim:
                rest = [
                    w
                    for w in cands[idx + 1:]
                    if max_radius is None or dist[u][w] <= max_radius
                ]
                if rest:
                    expand(new, val, rest)

    for v in range(n):
        if nbrs[v]:
            expand((v,), 0.0, nbrs[v])
    return FilteredComplex(items)
