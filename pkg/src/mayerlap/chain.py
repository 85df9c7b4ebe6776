"""The N-differential on simplicial chains and Mayer (persistent) homology.

The degree-(-1) map sends an n-simplex to the sum of its faces weighted by
powers of the primitive N-th root of unity: face i carries xi^i.  Its q-fold
compositions M_{n,q} feed an exact rank formula for the Mayer Betti numbers

    beta_{n,q} = dim C_n - rank M_{n,q} - rank M_{n+N-q,N-q}

and, through kernel/image intersections, the persistent variants.

Matrices follow the column convention: D_n has one column per n-simplex and
one row per (n-1)-simplex, in the complex's fixed order, so sublevel
restrictions are leading blocks.
"""

from __future__ import annotations

import math
import threading
import weakref
from dataclasses import dataclass

from .cyclotomic import (
    ColumnReducer,
    CycMatrix,
    CyclotomicNumber,
    is_prime,
    root_of_unity,
)
from .simplicial import FilteredComplex

INF = math.inf


class ConsistencyError(RuntimeError):
    """An exact invariant failed; indicates a rank computation bug."""


def _check_channel(N: int, q: int, n: int | None = None) -> None:
    if not is_prime(N):
        raise ValueError(f"N must be prime, got {N}")
    if not 1 <= q <= N - 1:
        raise ValueError(f"stage q must satisfy 1 <= q <= N-1, got q={q}, N={N}")
    if n is not None and n < 0:
        raise ValueError(f"dimension must be >= 0, got {n}")


class MayerBoundary:
    """Boundary matrices D_n over Q(xi_N) for one complex, with caches.

    Holds sparse columns of each D_n and of each composition M_{n,q}, plus
    per-sublevel rank profiles.  All caches are guarded by a lock so the
    object can be shared across worker threads.
    """

    def __init__(self, K: FilteredComplex, N: int):
        if not is_prime(N):
            raise ValueError(f"N must be prime, got {N}")
        self.K = K
        self.N = N
        self._xi = [root_of_unity(N, i) for i in range(N)]
        self._lock = threading.RLock()
        self._dcols: dict[int, list[dict]] = {}
        self._mcols: dict[tuple[int, int], list[dict]] = {}
        self._rank_profiles: dict[tuple[int, int], list[int]] = {}
        self._kernels: dict[tuple[int, int, int], list[dict]] = {}

    # -- sparse columns --------------------------------------------------
    def boundary_columns(self, n: int) -> list[dict]:
        """Columns of D_n as {row_index: coefficient}; empty rows for n=0."""
        with self._lock:
            cols = self._dcols.get(n)
            if cols is not None:
                return cols
        K = self.K
        cols = []
        if 1 <= n <= K.max_dim:
            index = K.index
            xi = self._xi
            N = self.N
            for s in K.simplices(n):
                cols.append({index(f): xi[i % N] for i, f in enumerate(s.faces())})
        else:
            cols = [{} for _ in range(K.count(n))]
        with self._lock:
            return self._dcols.setdefault(n, cols)

    def composed_columns(self, n: int, q: int) -> list[dict]:
        """Columns of M_{n,q} = D_{n-q+1} ... D_n (zero map when n < q)."""
        _check_channel(self.N, q, n)
        key = (n, q)
        with self._lock:
            cols = self._mcols.get(key)
            if cols is not None:
                return cols
        ncols = self.K.count(n)
        if n - q < 0 or n > self.K.max_dim:
            cols = [{} for _ in range(ncols)]
        elif q == 1:
            cols = self.boundary_columns(n)
        else:
            prev = self.composed_columns(n, q - 1)
            dk = self.boundary_columns(n - q + 1)
            cols = []
            for col in prev:
                out: dict = {}
                for j, c in col.items():
                    for r, d in dk[j].items():
                        cur = out.get(r)
                        w = c * d if cur is None else cur + c * d
                        if w:
                            out[r] = w
                        elif cur is not None:
                            del out[r]
                cols.append(out)
        with self._lock:
            return self._mcols.setdefault(key, cols)

    # -- dense matrices ----------------------------------------------------
    def matrix(self, n: int, a: float | None = None) -> CycMatrix:
        """D_n as a dense CycMatrix, restricted to the sublevel at a."""
        return self._dense(self.boundary_columns(n), n, max(n - 1, -1), a)

    def composed(self, n: int, q: int, a: float | None = None) -> CycMatrix:
        """M_{n,q} as a dense CycMatrix, restricted to the sublevel at a."""
        rows_dim = n - q if n - q >= 0 else -1
        return self._dense(self.composed_columns(n, q), n, rows_dim, a)

    def _dense(self, cols: list[dict], col_dim: int, row_dim: int, a: float | None) -> CycMatrix:
        K = self.K
        if a is None:
            nc = K.count(col_dim)
            nr = K.count(row_dim) if row_dim >= 0 else 0
        else:
            level = K.level_of(a)
            nc = K.count(col_dim, level)
            nr = K.count(row_dim, level) if row_dim >= 0 else 0
        return CycMatrix.from_columns(self.N, cols[:nc], nr)

    # -- exact ranks ---------------------------------------------------------
    def rank_profile(self, n: int, q: int) -> list[int]:
        """rank of M_{n,q} at every critical level, via one elimination pass.

        Sublevel matrices are leading blocks and their columns only touch
        rows already present, so feeding columns in filtration order gives
        every sublevel rank along the way.
        """
        key = (n, q)
        with self._lock:
            prof = self._rank_profiles.get(key)
            if prof is not None:
                return prof
        K = self.K
        cols = self.composed_columns(n, q)
        red = ColumnReducer(self.N)
        prof = []
        j = 0
        for level in range(K.num_levels):
            stop = K.count(n, level)
            while j < stop:
                red.add_column(cols[j])
                j += 1
            prof.append(red.rank)
        with self._lock:
            return self._rank_profiles.setdefault(key, prof)

    def rank(self, n: int, q: int, level: int | None = None) -> int:
        if level is not None and level < 0:
            return 0
        prof = self.rank_profile(n, q)
        if not prof:
            return 0
        return prof[-1] if level is None else prof[min(level, len(prof) - 1)]

    def kernel_columns(self, n: int, q: int, level: int) -> list[dict]:
        """Basis of ker M_{n,q} on the sublevel complex, as sparse columns.

        Row indices are positions of n-simplices in the full dimension-n
        order; the basis only involves positions below the sublevel count.
        """
        key = (n, q, level)
        with self._lock:
            ker = self._kernels.get(key)
            if ker is not None:
                return ker
        if level < 0:
            ker: list[dict] = []
        else:
            nc = self.K.count(n, level)
            cols = self.composed_columns(n, q)
            red = ColumnReducer(self.N, track_kernel=True)
            for j in range(nc):
                red.add_column(cols[j])
            ker = red.kernel_combinations
        with self._lock:
            return self._kernels.setdefault(key, ker)


_ENGINES: "weakref.WeakKeyDictionary[FilteredComplex, dict[int, MayerBoundary]]"
_ENGINES = weakref.WeakKeyDictionary()
_ENGINES_LOCK = threading.Lock()


def get_boundary(K: FilteredComplex, N: int) -> MayerBoundary:
    """Shared per-(complex, N) boundary engine; caches survive across calls."""
    with _ENGINES_LOCK:
        per_k = _ENGINES.get(K)
        if per_k is None:
            per_k = {}
            _ENGINES[K] = per_k
        eng = per_k.get(N)
        if eng is None:
            eng = MayerBoundary(K, N)
            per_k[N] = eng
    return eng


def boundary_matrix(K: FilteredComplex, n: int, N: int, a: float | None = None) -> CycMatrix:
    """Matrix of the N-differential d_n in the fixed simplex order."""
    if n < 0:
        raise ValueError("dimension must be >= 0")
    return get_boundary(K, N).matrix(n, a)


def composed_boundary(
    K: FilteredComplex, n: int, q: int, N: int, a: float | None = None
) -> CycMatrix:
    """Matrix of the composition M_{n,q} = D_{n-q+1} ... D_n."""
    _check_channel(N, q, n)
    return get_boundary(K, N).composed(n, q, a)


def mayer_betti(K: FilteredComplex, n: int, q: int, N: int, a: float | None = None) -> int:
    """beta_{n,q} of the (sublevel) complex, exactly."""
    _check_channel(N, q, n)
    eng = get_boundary(K, N)
    level = None if a is None else K.level_of(a)
    cn = K.count(n, level)
    if cn == 0:
        return 0
    down = eng.rank(n, q, level)
    up = eng.rank(n + N - q, N - q, level)
    return cn - down - up


def betti_curve(K: FilteredComplex, n: int, q: int, N: int) -> list[tuple[float, int]]:
    """(critical value, beta^{r,r}_{n,q}) at every critical value."""
    _check_channel(N, q, n)
    eng = get_boundary(K, N)
    down = eng.rank_profile(n, q)
    up = eng.rank_profile(n + N - q, N - q)
    out = []
    for level, r in enumerate(K.critical_values):
        out.append((r, K.count(n, level) - down[level] - up[level]))
    return out


def persistent_betti(K: FilteredComplex, n: int, q: int, N: int, a: float, b: float) -> int:
    """Rank of the map H_{n,q}(K_a) -> H_{n,q}(K_b) induced by inclusion.

    Computed as rank([Z^a | B^b]) - rank(B^b), where Z^a is a kernel basis
    of M^a_{n,q} zero-padded into C^b_n and B^b is the column space of
    M^b_{n+N-q,N-q}; both live in the full row space, so the concatenated
    rank realizes dim(Z^a + B^b).
    """
    _check_channel(N, q, n)
    if a > b:
        raise ValueError(f"persistence parameters must satisfy a <= b, got {a} > {b}")
    eng = get_boundary(K, N)
    la, lb = K.level_of(a), K.level_of(b)
    if la < 0:
        return 0
    kernel = eng.kernel_columns(n, q, la)
    if not kernel:
        return 0
    red = ColumnReducer(N)
    for col in kernel:
        red.add_column(col)
    up_cols = eng.composed_columns(n + N - q, N - q)
    for j in range(K.count(n + N - q, lb)):
        red.add_column(up_cols[j])
    return red.rank - eng.rank(n + N - q, N - q, lb)


@dataclass(frozen=True)
class PersistenceDiagram:
    """Multiset of (birth, death, multiplicity) for one (n, q, N) channel."""

    n: int
    q: int
    N: int
    points: tuple[tuple[float, float, int], ...]

    def __post_init__(self):
        for birth, death, mult in self.points:
            if not birth < death:
                raise ValueError(f"diagram point must have birth < death, got {(birth, death)}")
            if mult < 1:
                raise ValueError("multiplicities must be >= 1")

    def total_alive(self, r: float) -> int:
        """Sum of multiplicities of classes alive at r (birth <= r < death)."""
        return sum(m for b, d, m in self.points if b <= r < d)

    def essential_count(self) -> int:
        return sum(m for _, d, m in self.points if math.isinf(d))

    def __iter__(self):
        return iter(self.points)

    def __len__(self):
        return len(self.points)


def _persistent_betti_grid(K: FilteredComplex, n: int, q: int, N: int) -> list[list[int]]:
    """beta^{i,j} for all critical levels i <= j; one elimination per row."""
    eng = get_boundary(K, N)
    m = K.num_levels
    up_cols = eng.composed_columns(n + N - q, N - q)
    up_rank = eng.rank_profile(n + N - q, N - q)
    grid = [[0] * m for _ in range(m)]
    for i in range(m):
        kernel = eng.kernel_columns(n, q, i)
        if not kernel:
            continue
        red = ColumnReducer(N)
        for col in kernel:
            red.add_column(col)
        j = 0
        for lb in range(m):
            stop = K.count(n + N - q, lb)
            while j < stop:
                red.add_column(up_cols[j])
                j += 1
            if lb >= i:
                grid[i][lb] = red.rank - up_rank[lb]
    return grid


def persistence_diagram(K: FilteredComplex, n: int, q: int, N: int) -> PersistenceDiagram:
    """Extract (birth, death, multiplicity) points from the persistent grid.

    With critical values r_1 < ... < r_m, the finite multiplicity at
    (r_i, r_j) is mu_ij = (beta^{i,j-1} - beta^{i,j}) - (beta^{i-1,j-1} -
    beta^{i-1,j}) and the essential multiplicity at (r_i, inf) is
    beta^{i,m} - beta^{i-1,m}.  A negative multiplicity is a hard error.
    """
    _check_channel(N, q, n)
    m = K.num_levels
    if m == 0:
        return PersistenceDiagram(n, q, N, ())
    grid = _persistent_betti_grid(K, n, q, N)

    def beta(i: int, j: int) -> int:  # 1-indexed with beta^{0,.} = 0
        if i == 0:
            return 0
        return grid[i - 1][j - 1]

    points = []
    for i in range(1, m + 1):
        for j in range(i + 1, m + 1):
            mu = (beta(i, j - 1) - beta(i, j)) - (beta(i - 1, j - 1) - beta(i - 1, j))
            if mu < 0:
                raise ConsistencyError(
                    f"negative multiplicity {mu} at levels ({i},{j}) for channel "
                    f"(n={n}, q={q}, N={N})"
                )
            if mu:
                points.append((K.critical_values[i - 1], K.critical_values[j - 1], mu))
        ess = beta(i, m) - beta(i - 1, m)
        if ess < 0:
            raise ConsistencyError(
                f"negative essential multiplicity {ess} at level {i} for channel "
                f"(n={n}, q={q}, N={N})"
            )
        if ess:
            points.append((K.critical_values[i - 1], INF, ess))
    points.sort(key=lambda p: (p[0], p[1]))
    return PersistenceDiagram(n, q, N, tuple(points))


def count_variations(curve, tol: float = 0.0) -> int:
    """Number of consecutive pairs in a curve whose values differ.

    Accepts either a plain sequence of values or (parameter, value) pairs.
    """
    vals = [c[1] if isinstance(c, tuple) else c for c in curve]
    return sum(1 for x, y in zip(vals, vals[1:]) if abs(y - x) > tol)
