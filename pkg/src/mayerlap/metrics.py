"""Wasserstein and bottleneck distances between persistence diagrams.

Finite points are matched optimally with diagonal projections allowed;
points with infinite death are matched to each other by sorted birth and
contribute |birth - birth'|, with mismatched counts giving an infinite
distance.  Families collect the stages q = 1 .. N-1 of one dimension and
aggregate per-stage distances by r-norm (Wasserstein) or supremum
(bottleneck).
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.optimize import linear_sum_assignment

from .chain import PersistenceDiagram, persistence_diagram
from .simplicial import FilteredComplex

INF = math.inf


def _split(diagram) -> tuple[list[tuple[float, float]], list[float]]:
    """Expand multiplicities; return (finite points, essential births)."""
    finite: list[tuple[float, float]] = []
    essential: list[float] = []
    for birth, death, mult in diagram:
        if math.isinf(death):
            essential.extend([birth] * mult)
        else:
            finite.extend([(birth, death)] * mult)
    return finite, sorted(essential)


def _point_cost(x: tuple[float, float], y: tuple[float, float], s: float) -> float:
    db, dd = abs(x[0] - y[0]), abs(x[1] - y[1])
    if s == INF:
        return max(db, dd)
    return (db ** s + dd ** s) ** (1.0 / s)


def _diagonal_cost(x: tuple[float, float], s: float) -> float:
    half = (x[1] - x[0]) / 2.0
    if s == INF:
        return half
    return half * 2.0 ** (1.0 / s)


def _essential_costs(e1: list[float], e2: list[float]) -> list[float] | None:
    if len(e1) != len(e2):
        return None
    return [abs(a - b) for a, b in zip(e1, e2)]


def wasserstein(d1, d2, r: float = 2.0, s: float = INF) -> float:
    """Order-r Wasserstein distance with ground metric L_s on the plane.

    Computed exactly by the Hungarian algorithm on the standard augmented
    square cost matrix in which every point may also match its diagonal
    projection.  r = inf delegates to the bottleneck distance.
    """
    if r < 1 or s < 1:
        raise ValueError("wasserstein orders must satisfy r >= 1 and s >= 1")
    if r == INF:
        return bottleneck(d1, d2)
    f1, e1 = _split(d1)
    f2, e2 = _split(d2)
    ecosts = _essential_costs(e1, e2)
    if ecosts is None:
        return INF
    m, k = len(f1), len(f2)
    total = sum(c ** r for c in ecosts)
    if m or k:
        size = m + k
        cost = np.zeros((size, size))
        for i, x in enumerate(f1):
            for j, y in enumerate(f2):
                cost[i, j] = _point_cost(x, y, s) ** r
            cost[i, k:] = _diagonal_cost(x, s) ** r
        for j, y in enumerate(f2):
            cost[m:, j] = _diagonal_cost(y, s) ** r
        rows, cols = linear_sum_assignment(cost)
        total += float(cost[rows, cols].sum())
    return total ** (1.0 / r)


def _perfect_matching_exists(adj: list[list[int]], n_right: int) -> bool:
    """Kuhn's augmenting-path test for a perfect matching, left side first."""
    match_right = [-1] * n_right

    def augment(u: int, seen: list[bool]) -> bool:
        for v in adj[u]:
            if not seen[v]:
                seen[v] = True
                if match_right[v] < 0 or augment(match_right[v], seen):
                    match_right[v] = u
                    return True
        return False

    for u in range(len(adj)):
        if not augment(u, [False] * n_right):
            return False
    return True


def bottleneck(d1, d2) -> float:
    """Bottleneck distance (L_inf ground metric, diagonal allowed).

    Binary search over the finite candidate set of pairwise and diagonal
    costs, testing feasibility with a bipartite matching, so the result is
    exact on that set.
    """
    f1, e1 = _split(d1)
    f2, e2 = _split(d2)
    ecosts = _essential_costs(e1, e2)
    if ecosts is None:
        return INF
    base = max(ecosts, default=0.0)
    m, k = len(f1), len(f2)
    if m == 0 and k == 0:
        return base
    diag1 = [_diagonal_cost(x, INF) for x in f1]
    diag2 = [_diagonal_cost(y, INF) for y in f2]
    pair = [[_point_cost(x, y, INF) for y in f2] for x in f1]
    candidates = sorted(
        {0.0, *diag1, *diag2, *(c for row in pair for c in row)}
    )

    def feasible(t: float) -> bool:
        size = m + k
        adj: list[list[int]] = []
        for i in range(m):
            row = [j for j in range(k) if pair[i][j] <= t]
            if diag1[i] <= t:
                row.extend(range(k, size))
            adj.append(row)
        ghost_row = list(range(k, size))
        for j in range(k):
            row = list(ghost_row)
            if diag2[j] <= t:
                row.append(j)
            adj.append(row)
        return _perfect_matching_exists(adj, size)

    lo, hi = 0, len(candidates) - 1
    if not feasible(candidates[hi]):  # cannot happen: everything fits at max cost
        raise RuntimeError("bottleneck feasibility failed at maximal candidate")
    while lo < hi:
        mid = (lo + hi) // 2
        if feasible(candidates[mid]):
            hi = mid
        else:
            lo = mid + 1
    return max(base, candidates[lo])


@dataclass(frozen=True)
class DiagramFamily:
    """The N-1 stage diagrams of one homological dimension."""

    N: int
    n: int
    diagrams: tuple

    def __post_init__(self):
        if len(self.diagrams) != self.N - 1:
            raise ValueError(
                f"a family for N={self.N} needs exactly {self.N - 1} diagrams, "
                f"got {len(self.diagrams)}"
            )
        object.__setattr__(self, "diagrams", tuple(self.diagrams))

    def __iter__(self):
        return iter(self.diagrams)


def _check_family_channels(F: DiagramFamily, G: DiagramFamily) -> None:
    if F.N != G.N or F.n != G.n:
        raise ValueError(
            f"family channel mismatch: (N={F.N}, n={F.n}) vs (N={G.N}, n={G.n})"
        )


def family_wasserstein(F: DiagramFamily, G: DiagramFamily, r: float = 2.0) -> float:
    """r-norm aggregation of per-stage Wasserstein distances."""
    _check_family_channels(F, G)
    if r == INF:
        return family_bottleneck(F, G)
    parts = [wasserstein(d, d2, r=r) for d, d2 in zip(F, G)]
    if any(math.isinf(p) for p in parts):
        return INF
    return sum(p ** r for p in parts) ** (1.0 / r)


def family_bottleneck(F: DiagramFamily, G: DiagramFamily) -> float:
    """Supremum over stages of per-stage bottleneck distances."""
    _check_family_channels(F, G)
    return max(bottleneck(d, d2) for d, d2 in zip(F, G))


def mayer_family(K: FilteredComplex, n: int, N: int) -> DiagramFamily:
    """All stage diagrams of dimension n for the given complex."""
    return DiagramFamily(
        N, n, tuple(persistence_diagram(K, n, q, N) for q in range(1, N))
    )
