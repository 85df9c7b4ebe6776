"""Mayer Laplacians, persistent Mayer Laplacians, and Hermitian spectra.

In the column convention the Laplacian of channel (n, q) is

    L_{n,q} = M_down^H M_down + M_up M_up^H,

with M_down = M_{n,q} and M_up = M_{n+N-q,N-q} embedded into complex floats.
The persistent version restricts the up map to chains of the larger complex
whose q-fold boundary already lies in the smaller one; that restriction is
realized through an exact kernel of the rows outside the smaller complex,
so floats only enter at the final eigenproblem.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .chain import _check_channel, get_boundary
from .cyclotomic import ColumnReducer
from .simplicial import FilteredComplex

try:
    from numba import njit as _njit
except ImportError:  # pragma: no cover - numba is an optional speedup
    _njit = None


class PairingError(RuntimeError):
    """Doubled eigenvalues of the real embedding failed to pair up."""


class NotPositiveSemidefinite(RuntimeError):
    """A Laplacian produced an eigenvalue below -tolerance."""


class HermitianMatrix:
    """Dense complex Hermitian matrix; symmetrized on construction."""

    __slots__ = ("order", "entries")

    def __init__(self, entries):
        m = np.asarray(entries, dtype=complex)
        if m.ndim != 2 or m.shape[0] != m.shape[1]:
            raise ValueError(f"expected a square matrix, got shape {m.shape}")
        scale = max(1.0, float(np.abs(m).max()) if m.size else 0.0)
        skew = float(np.abs(m - m.conj().T).max()) if m.size else 0.0
        if skew > 1e-9 * scale:
            raise ValueError(f"matrix is not Hermitian (max deviation {skew:.3e})")
        self.order = m.shape[0]
        self.entries = (m + m.conj().T) / 2.0

    def __getitem__(self, ij):
        return self.entries[ij]

    def frobenius(self) -> float:
        return float(np.linalg.norm(self.entries)) if self.order else 0.0

    def trace(self) -> float:
        return float(self.entries.trace().real) if self.order else 0.0

    def __repr__(self):
        return f"HermitianMatrix(order={self.order})"


def _complex_block(cols, n_rows: int, n_cols: int) -> np.ndarray:
    """First n_cols sparse columns as dense complex floats, rows >= n_rows dropped."""
    out = np.zeros((n_rows, n_cols), dtype=complex)
    for j in range(n_cols):
        for r, v in cols[j].items():
            if r < n_rows:
                out[r, j] = v.to_complex()
    return out


def laplacian_matrix(
    K: FilteredComplex, n: int, q: int, N: int, a: float | None = None
) -> HermitianMatrix:
    """Mayer Laplacian L_{n,q} of the (sublevel) complex."""
    _check_channel(N, q, n)
    eng = get_boundary(K, N)
    level = None if a is None else K.level_of(a)
    cn = K.count(n, level)
    L = np.zeros((cn, cn), dtype=complex)
    if cn:
        rows_down = K.count(n - q, level) if n - q >= 0 else 0
        down = _complex_block(eng.composed_columns(n, q), rows_down, cn)
        up = _complex_block(eng.composed_columns(n + N - q, N - q), cn,
                            K.count(n + N - q, level))
        L = down.conj().T @ down + up @ up.conj().T
    return HermitianMatrix(L)


def _orthonormal_columns(A: np.ndarray) -> np.ndarray:
    """Modified Gram-Schmidt with one re-orthogonalization pass."""
    if A.size == 0:
        return A.reshape(A.shape[0], 0)
    Q = np.empty_like(A)
    k = 0
    scale = float(np.abs(A).max())
    for j in range(A.shape[1]):
        v = A[:, j].astype(complex).copy()
        for _ in range(2):
            for i in range(k):
                v -= (Q[:, i].conj() @ v) * Q[:, i]
        nrm = np.linalg.norm(v)
        if nrm <= 1e-12 * max(1.0, scale):
            raise RuntimeError("kernel basis columns degenerated during orthonormalization")
        Q[:, k] = v / nrm
        k += 1
    return Q[:, :k]


def persistent_laplacian(
    K: FilteredComplex, a: float, b: float, n: int, q: int, N: int
) -> HermitianMatrix:
    """Persistent Mayer Laplacian on the n-chains of the sublevel at a.

    The up term uses only those (n+N-q)-chains of the sublevel at b whose
    composed boundary stays inside the sublevel at a: the rows of the up
    matrix outside K_a are killed by an exact kernel computation, the kernel
    is orthonormalized in floats, and the surviving map is compressed back
    onto K_a.
    """
    _check_channel(N, q, n)
    if a > b:
        raise ValueError(f"persistence parameters must satisfy a <= b, got {a} > {b}")
    eng = get_boundary(K, N)
    la, lb = K.level_of(a), K.level_of(b)
    cn_a = K.count(n, la)
    L = np.zeros((cn_a, cn_a), dtype=complex)
    if cn_a == 0:
        return HermitianMatrix(L)
    rows_down = K.count(n - q, la) if n - q >= 0 else 0
    down = _complex_block(eng.composed_columns(n, q), rows_down, cn_a)
    L += down.conj().T @ down

    up_dim = n + N - q
    cols_b = K.count(up_dim, lb)
    cn_b = K.count(n, lb)
    if cols_b:
        up_cols = eng.composed_columns(up_dim, N - q)
        if cn_b == cn_a:
            A = _complex_block(up_cols, cn_a, cols_b)
        else:
            # rows outside K_a, reindexed from 0
            red = ColumnReducer(N, track_kernel=True)
            for j in range(cols_b):
                red.add_column(
                    {r - cn_a: v for r, v in up_cols[j].items() if r >= cn_a}
                )
            kernel = red.kernel_combinations
            if kernel:
                Z = np.zeros((cols_b, len(kernel)), dtype=complex)
                for j, comb in enumerate(kernel):
                    for i, v in comb.items():
                        Z[i, j] = v.to_complex()
                Zo = _orthonormal_columns(Z)
                R = _complex_block(up_cols, cn_a, cols_b)
                A = R @ Zo
            else:
                A = np.zeros((cn_a, 0), dtype=complex)
        L += A @ A.conj().T
    return HermitianMatrix(L)


# -- Hermitian eigenvalues via real-symmetric embedding + cyclic Jacobi ------

def _jacobi_core(M, elem_tol, max_sweeps):
    n = M.shape[0]
    for sweep in range(max_sweeps):
        rotated = 0
        for p in range(n - 1):
            for r in range(p + 1, n):
                apq = M[p, r]
                if abs(apq) <= elem_tol:
                    continue
                rotated += 1
                theta = (M[r, r] - M[p, p]) / (2.0 * apq)
                if theta >= 0.0:
                    t = 1.0 / (theta + math.sqrt(1.0 + theta * theta))
                else:
                    t = -1.0 / (-theta + math.sqrt(1.0 + theta * theta))
                c = 1.0 / math.sqrt(1.0 + t * t)
                s = t * c
                app = M[p, p]
                arr = M[r, r]
                M[p, p] = app - t * apq
                M[r, r] = arr + t * apq
                M[p, r] = 0.0
                M[r, p] = 0.0
                for k in range(n):
                    if k != p and k != r:
                        akp = M[k, p]
                        akr = M[k, r]
                        M[k, p] = c * akp - s * akr
                        M[p, k] = M[k, p]
                        M[k, r] = c * akr + s * akp
                        M[r, k] = M[k, r]
        if rotated == 0:
            return sweep + 1
    return -1


if _njit is not None:
    _jacobi_core = _njit(cache=True)(_jacobi_core)


def hermitian_eigenvalues(H: HermitianMatrix) -> list[float]:
    """All eigenvalues with multiplicity, ascending.

    The n x n complex Hermitian matrix A + iB embeds into the real symmetric
    [[A, -B], [B, A]], whose spectrum is that of H doubled; cyclic Jacobi
    sweeps run until the off-diagonal mass is negligible, and the doubled
    values are paired off and averaged.
    """
    n = H.order
    if n == 0:
        return []
    A = np.ascontiguousarray(H.entries.real, dtype=float)
    B = np.ascontiguousarray(H.entries.imag, dtype=float)
    norm = H.frobenius()
    if norm == 0.0:
        return [0.0] * n
    M = np.block([[A, -B], [B, A]])
    # per-element threshold chosen so a quiet sweep implies
    # off-diagonal Frobenius norm < 1e-12 * ||H||
    elem_tol = 1e-12 * norm / (2.0 * n)
    sweeps = _jacobi_core(M, elem_tol, 100)
    if sweeps < 0:
        raise PairingError("Jacobi iteration did not converge in 100 sweeps")
    doubled = np.sort(np.diag(M))
    pair_tol = 1e-6 * max(1.0, norm)
    out = []
    for k in range(n):
        lo, hi = doubled[2 * k], doubled[2 * k + 1]
        if hi - lo > pair_tol:
            raise PairingError(
                f"doubled eigenvalues failed to pair: {lo!r} vs {hi!r}"
            )
        out.append(float((lo + hi) / 2.0))
    return out


@dataclass(frozen=True)
class SpectrumReport:
    """Summary statistics of one (persistent) Mayer Laplacian spectrum."""

    eigenvalues: tuple[float, ...]
    zero_count: int
    lambda1: float | None
    lambda_max: float
    mean_positive: float | None
    tolerance_used: float
    channel: tuple | None = None
    expected_zero: int | None = None
    crosscheck_ok: bool = True


def spectral_summary(
    eigenvalues,
    expected_zero: int | None = None,
    channel: tuple | None = None,
    tol_factor: float = 1e-8,
) -> SpectrumReport:
    """Split a sorted spectrum into harmonic and positive parts.

    The zero threshold is tol_factor * max(1, largest eigenvalue).  When an
    exact Betti number is supplied and disagrees with the zero count, the
    report carries a cross-check failure flag instead of raising.
    """
    eigs = [float(x) for x in eigenvalues]
    if any(y < x for x, y in zip(eigs, eigs[1:])):
        raise ValueError("eigenvalues must be ascending")
    lam_max = eigs[-1] if eigs else 0.0
    tol = tol_factor * max(1.0, lam_max)
    if eigs and eigs[0] < -tol:
        raise NotPositiveSemidefinite(
            f"eigenvalue {eigs[0]!r} below -{tol!r}; Laplacian assembly is broken"
        )
    zero_count = sum(1 for x in eigs if x <= tol)
    positives = [x for x in eigs if x > tol]
    return SpectrumReport(
        eigenvalues=tuple(eigs),
        zero_count=zero_count,
        lambda1=positives[0] if positives else None,
        lambda_max=lam_max,
        mean_positive=sum(positives) / len(positives) if positives else None,
        tolerance_used=tol,
        channel=channel,
        expected_zero=expected_zero,
        crosscheck_ok=(expected_zero is None or expected_zero == zero_count),
    )
