"""Independent oracles used by the test suite.

Everything here is deliberately written against plain rational/float
linear algebra with the classical signed boundary, separate from the
package's cyclotomic machinery, so agreement is meaningful.
"""

from __future__ import annotations

import itertools
import math
from fractions import Fraction

import numpy as np


# -- classical (signed) boundary over Q ------------------------------------

def classical_boundary(K, n, level=None):
    """Rows = (n-1)-simplices, cols = n-simplices, signs (-1)^i, as Fractions."""
    rows = list(K.simplices(n - 1)) if n >= 1 else []
    cols = list(K.simplices(n))
    if level is not None:
        rows = rows[: K.count(n - 1, level)] if n >= 1 else []
        cols = cols[: K.count(n, level)]
    ridx = {s: i for i, s in enumerate(rows)}
    mat = [[Fraction(0)] * len(cols) for _ in rows]
    for j, s in enumerate(cols):
        if s.dim == 0:
            continue
        for i in range(len(s)):
            f = s.face(i)
            mat[ridx[f]][j] = Fraction((-1) ** i)
    return mat


def rational_rank(mat) -> int:
    """Exact Gaussian elimination rank over Q."""
    m = [row[:] for row in mat]
    if not m or not m[0]:
        return 0
    n_rows, n_cols = len(m), len(m[0])
    rank = 0
    for col in range(n_cols):
        piv = next((r for r in range(rank, n_rows) if m[r][col] != 0), None)
        if piv is None:
            continue
        m[rank], m[piv] = m[piv], m[rank]
        pv = m[rank][col]
        m[rank] = [x / pv for x in m[rank]]
        for r in range(n_rows):
            if r != rank and m[r][col] != 0:
                f = m[r][col]
                m[r] = [x - f * y for x, y in zip(m[r], m[rank])]
        rank += 1
        if rank == n_rows:
            break
    return rank


def rational_kernel(mat, n_cols):
    """Basis of the right kernel over Q as a list of coefficient lists."""
    m = [row[:] for row in mat]
    n_rows = len(m)
    pivots = {}
    row = 0
    for col in range(n_cols):
        piv = next((r for r in range(row, n_rows) if m[r][col] != 0), None)
        if piv is None:
            continue
        m[row], m[piv] = m[piv], m[row]
        pv = m[row][col]
        m[row] = [x / pv for x in m[row]]
        for r in range(n_rows):
            if r != row and m[r][col] != 0:
                f = m[r][col]
                m[r] = [x - f * y for x, y in zip(m[r], m[row])]
        pivots[col] = row
        row += 1
    basis = []
    free = [c for c in range(n_cols) if c not in pivots]
    for fc in free:
        vec = [Fraction(0)] * n_cols
        vec[fc] = Fraction(1)
        for pc, pr in pivots.items():
            vec[pc] = -m[pr][fc]
        basis.append(vec)
    return basis


def classical_betti(K, n, level=None) -> int:
    """beta_n = dim C_n - rank d_n - rank d_(n+1), exactly over Q."""
    cn = K.count(n, level) if level is not None else K.count(n)
    if cn == 0:
        return 0
    down = rational_rank(classical_boundary(K, n, level)) if n >= 1 else 0
    up = rational_rank(classical_boundary(K, n + 1, level))
    return cn - down - up


def classical_persistent_betti(K, n, a, b) -> int:
    """Rank of H_n(K_a) -> H_n(K_b) via kernel/image intersection over Q."""
    la, lb = K.level_of(a), K.level_of(b)
    if la < 0:
        return 0
    cn_a = K.count(n, la)
    if cn_a == 0:
        return 0
    cn_b = K.count(n, lb)
    down = classical_boundary(K, n, la) if n >= 1 else []
    kernel = rational_kernel(down, cn_a)
    up = classical_boundary(K, n + 1, lb)
    up_cols = K.count(n + 1, lb)
    stacked = []
    for r in range(cn_b):
        row = []
        for vec in kernel:
            row.append(vec[r] if r < cn_a else Fraction(0))
        for j in range(up_cols):
            row.append(up[r][j] if up else Fraction(0))
        stacked.append(row)
    rank_both = rational_rank(stacked)
    rank_up = rational_rank(up)
    return rank_both - rank_up


def classical_laplacian(K, n, level=None) -> np.ndarray:
    """Combinatorial Hodge Laplacian with +-1 signs, as floats."""
    cn = K.count(n, level) if level is not None else K.count(n)
    down = np.array(classical_boundary(K, n, level), float) if n >= 1 else np.zeros((0, cn))
    up = np.array(classical_boundary(K, n + 1, level), float)
    if down.size == 0:
        down = down.reshape(0, cn)
    if up.size == 0:
        up = up.reshape(cn, 0)
    return down.T @ down + up @ up.T


def classical_persistent_laplacian_schur(K, n, a, b) -> np.ndarray:
    """Persistent Laplacian via Schur complement of the up-Laplacian at b."""
    la, lb = K.level_of(a), K.level_of(b)
    cn_a = K.count(n, la)
    down = np.array(classical_boundary(K, n, la), float) if n >= 1 else np.zeros((0, cn_a))
    if down.size == 0:
        down = down.reshape(0, cn_a)
    cn_b = K.count(n, lb)
    up = np.array(classical_boundary(K, n + 1, lb), float)
    if up.size == 0:
        up = up.reshape(cn_b, 0)
    L = up @ up.T
    A = L[:cn_a, :cn_a]
    if cn_b > cn_a:
        B = L[:cn_a, cn_a:]
        C = L[cn_a:, cn_a:]
        A = A - B @ np.linalg.pinv(C) @ B.T
    return down.T @ down + A


# -- other small oracles -----------------------------------------------------

def connected_components(points, radius) -> int:
    """Union-find component count of the distance graph at the given radius."""
    n = len(points)
    parent = list(range(n))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for i in range(n):
        for j in range(i + 1, n):
            if math.dist(points[i], points[j]) <= radius:
                ri, rj = find(i), find(j)
                if ri != rj:
                    parent[ri] = rj
    return len({find(i) for i in range(n)})


def vr_membership(points, simplex, eps) -> bool:
    """Direct check: every pair of vertices within eps."""
    return all(
        math.dist(points[u], points[v]) <= eps
        for u, v in itertools.combinations(simplex, 2)
    )


def brute_force_wasserstein(d1, d2, r, s=math.inf) -> float:
    """Enumerate all matchings (diagonal allowed) for tiny diagrams."""
    def expand(diag):
        pts = []
        for b, d, m in diag:
            if math.isinf(d):
                raise ValueError("finite points only")
            pts.extend([(b, d)] * m)
        return pts

    P, Q = expand(d1), expand(d2)

    def pcost(x, y):
        db, dd = abs(x[0] - y[0]), abs(x[1] - y[1])
        return max(db, dd) if s == math.inf else (db ** s + dd ** s) ** (1 / s)

    def dcost(x):
        h = (x[1] - x[0]) / 2
        return h if s == math.inf else h * 2 ** (1 / s)

    best = math.inf
    m, k = len(P), len(Q)
    for sub in range(min(m, k) + 1):
        for ps in itertools.combinations(range(m), sub):
            for qs in itertools.permutations(range(k), sub):
                costs = [pcost(P[i], Q[j]) for i, j in zip(ps, qs)]
                costs += [dcost(P[i]) for i in range(m) if i not in ps]
                costs += [dcost(Q[j]) for j in range(k) if j not in set(qs)]
                if r == math.inf:
                    tot = max(costs, default=0.0)
                else:
                    tot = sum(c ** r for c in costs) ** (1 / r)
                best = min(best, tot)
    return best
