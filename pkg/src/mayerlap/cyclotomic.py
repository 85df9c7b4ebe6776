"""Exact arithmetic over the cyclotomic field Q(xi_N), N prime.

Numbers are stored in the power basis {1, xi, ..., xi^(N-2)} with rational
coefficients, reduced eagerly through xi^(N-1) = -(1 + xi + ... + xi^(N-2)).
For prime N this quotient is a field, so Gaussian elimination ranks and
kernels computed here are exact.
"""

from __future__ import annotations

import cmath
from fractions import Fraction
from functools import lru_cache

try:  # gmpy2 rationals are a drop-in and considerably faster
    from gmpy2 import mpq as _Q
except ImportError:  # pragma: no cover - exercised only without gmpy2
    _Q = Fraction

_ZERO = _Q(0)
_ONE = _Q(1)


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n < 4:
        return True
    if n % 2 == 0:
        return False
    f = 3
    while f * f <= n:
        if n % f == 0:
            return False
        f += 2
    return True


def _check_modulus(N: int) -> None:
    if not isinstance(N, int) or N < 2 or not is_prime(N):
        raise ValueError(f"root-of-unity order must be a prime >= 2, got {N!r}")


@lru_cache(maxsize=None)
def _xi_powers(N: int) -> tuple[complex, ...]:
    xi = cmath.exp(2j * cmath.pi / N)
    return tuple(xi ** k for k in range(N - 1))


class CyclotomicNumber:
    """Element of Q(xi_N); canonical, immutable, hashable."""

    __slots__ = ("N", "coeffs")

    def __init__(self, N: int, coeffs=()):
        _check_modulus(N)
        cs = [_Q(c) for c in coeffs]
        if len(cs) > N - 1:
            raise ValueError("coefficient sequence longer than N-1; pass reduced coefficients")
        cs.extend([_ZERO] * (N - 1 - len(cs)))
        object.__setattr__(self, "N", N)
        object.__setattr__(self, "coeffs", tuple(cs))

    def __setattr__(self, name, value):
        raise AttributeError("CyclotomicNumber is immutable")

    # -- constructors -------------------------------------------------
    @classmethod
    def zero(cls, N: int) -> "CyclotomicNumber":
        return cls(N)

    @classmethod
    def one(cls, N: int) -> "CyclotomicNumber":
        return cls(N, (_ONE,))

    @classmethod
    def from_rational(cls, N: int, value) -> "CyclotomicNumber":
        return cls(N, (_Q(value),))

    @classmethod
    def _raw(cls, N: int, coeffs: tuple) -> "CyclotomicNumber":
        self = object.__new__(cls)
        object.__setattr__(self, "N", N)
        object.__setattr__(self, "coeffs", coeffs)
        return self

    # -- helpers ------------------------------------------------------
    def _coerce(self, other):
        if isinstance(other, CyclotomicNumber):
            if other.N != self.N:
                raise ValueError(f"mixed root orders: {self.N} vs {other.N}")
            return other
        if isinstance(other, (int, Fraction)) or type(other) is type(_ONE):
            return CyclotomicNumber(self.N, (other,))
        return None

    def is_zero(self) -> bool:
        return all(c == 0 for c in self.coeffs)

    def is_rational(self) -> bool:
        return all(c == 0 for c in self.coeffs[1:])

    # -- ring/field operations ----------------------------------------
    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return CyclotomicNumber._raw(
            self.N, tuple(a + b for a, b in zip(self.coeffs, o.coeffs))
        )

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return CyclotomicNumber._raw(
            self.N, tuple(a - b for a, b in zip(self.coeffs, o.coeffs))
        )

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o - self

    def __neg__(self):
        return CyclotomicNumber._raw(self.N, tuple(-c for c in self.coeffs))

    def __mul__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        n = self.N
        a, b = self.coeffs, o.coeffs
        # convolution; exponents run 0 .. 2N-4
        conv = [_ZERO] * (2 * n - 3) if n > 2 else [_ZERO]
        for i, ai in enumerate(a):
            if ai == 0:
                continue
            for j, bj in enumerate(b):
                if bj == 0:
                    continue
                conv[i + j] += ai * bj
        return CyclotomicNumber._raw(n, _reduce_power_coeffs(n, conv))

    __rmul__ = __mul__

    def inverse(self) -> "CyclotomicNumber":
        if self.is_zero():
            raise ZeroDivisionError("inverse of zero cyclotomic number")
        if self.is_rational():
            return CyclotomicNumber._raw(
                self.N, (_ONE / self.coeffs[0],) + (_ZERO,) * (self.N - 2)
            )
        return _inverse_by_solve(self)

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self * o.inverse()

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o * self.inverse()

    def conjugate(self) -> "CyclotomicNumber":
        """Complex conjugate: the substitution xi -> xi^(N-1)."""
        n = self.N
        conv = [_ZERO] * (2 * n - 3) if n > 2 else [_ZERO] * 2
        for k, c in enumerate(self.coeffs):
            if c != 0:
                # conj(xi^k) = xi^(N-k) for k >= 1
                conv[(n - k) % n if k else 0] += c
        return CyclotomicNumber._raw(n, _reduce_power_coeffs(n, conv))

    # -- conversions, comparisons --------------------------------------
    def to_complex(self) -> complex:
        pows = _xi_powers(self.N)
        return sum((float(c) * pows[k] for k, c in enumerate(self.coeffs) if c != 0), 0j)

    def __complex__(self) -> complex:
        return self.to_complex()

    def __eq__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self.coeffs == o.coeffs

    def __hash__(self):
        return hash((self.N, self.coeffs))

    def __bool__(self):
        return not self.is_zero()

    def __repr__(self):
        terms = []
        for k, c in enumerate(self.coeffs):
            if c == 0:
                continue
            if k == 0:
                terms.append(str(c))
            else:
                mag = "" if c == 1 else ("-" if c == -1 else f"{c}*")
                terms.append(f"{mag}xi^{k}" if k > 1 else f"{mag}xi")
        body = " + ".join(terms) if terms else "0"
        return f"Cyc[{self.N}]({body})"

    def __reduce__(self):
        return (_unpickle_cyc, (self.N, tuple(str(c) for c in self.coeffs)))


def _unpickle_cyc(N, strs):
    return CyclotomicNumber(N, tuple(Fraction(s) for s in strs))


def _reduce_power_coeffs(n: int, conv: list) -> tuple:
    """Reduce coefficients indexed by powers 0..len-1 into the canonical basis."""
    out = list(conv[: n - 1])
    out.extend([_ZERO] * (n - 1 - len(out)))
    # fold xi^e for e >= N via xi^N = 1, then eliminate xi^(N-1)
    high = _ZERO
    for e in range(n - 1, len(conv)):
        c = conv[e]
        if c == 0:
            continue
        r = e % n
        if r == n - 1:
            high += c
        else:
            out[r] += c
    if high != 0:
        # xi^(N-1) = -(1 + xi + ... + xi^(N-2))
        for k in range(n - 1):
            out[k] -= high
    return tuple(out)


def root_of_unity(N: int, i: int) -> CyclotomicNumber:
    """Canonical xi^(i mod N) in Q(xi_N)."""
    _check_modulus(N)
    k = i % N
    if k == N - 1:
        return CyclotomicNumber(N, (-_ONE,) * (N - 1))
    coeffs = [_ZERO] * (N - 1)
    coeffs[k] = _ONE
    return CyclotomicNumber(N, coeffs)


def _inverse_by_solve(a: CyclotomicNumber) -> CyclotomicNumber:
    """Invert by solving the (N-1)x(N-1) rational system a*x = 1."""
    n = a.N
    m = n - 1
    # column j of the multiplication matrix = coefficients of a * xi^j
    cols = []
    cur = a
    xi = root_of_unity(n, 1)
    for _ in range(m):
        cols.append(cur.coeffs)
        cur = cur * xi
    aug = [[cols[j][i] for j in range(m)] + [(_ONE if i == 0 else _ZERO)] for i in range(m)]
    # exact Gaussian elimination with first-nonzero pivoting
    row = 0
    piv_cols = []
    for col in range(m):
        sel = next((r for r in range(row, m) if aug[r][col] != 0), None)
        if sel is None:
            continue
        aug[row], aug[sel] = aug[sel], aug[row]
        pv = aug[row][col]
        aug[row] = [v / pv for v in aug[row]]
        for r in range(m):
            if r != row and aug[r][col] != 0:
                f = aug[r][col]
                aug[r] = [v - f * w for v, w in zip(aug[r], aug[row])]
        piv_cols.append(col)
        row += 1
        if row == m:
            break
    if row < m:
        raise ZeroDivisionError("zero divisor encountered; N must be prime")
    x = [_ZERO] * m
    for r, col in enumerate(piv_cols):
        x[col] = aug[r][m]
    return CyclotomicNumber(n, x)


class CycMatrix:
    """Dense matrix over Q(xi_N), row-major."""

    __slots__ = ("N", "rows", "cols", "entries")

    def __init__(self, N: int, rows: int, cols: int, entries=None):
        _check_modulus(N)
        if rows < 0 or cols < 0:
            raise ValueError("negative matrix dimensions")
        if entries is None:
            z = CyclotomicNumber.zero(N)
            entries = [z] * (rows * cols)
        else:
            entries = list(entries)
            if len(entries) != rows * cols:
                raise ValueError("entry count does not match rows*cols")
            for e in entries:
                if not isinstance(e, CyclotomicNumber) or e.N != N:
                    raise ValueError("entries must be CyclotomicNumber over the same N")
        self.N = N
        self.rows = rows
        self.cols = cols
        self.entries = entries

    @classmethod
    def identity(cls, N: int, n: int) -> "CycMatrix":
        m = cls(N, n, n)
        one = CyclotomicNumber.one(N)
        for i in range(n):
            m.entries[i * n + i] = one
        return m

    @classmethod
    def from_rows(cls, N: int, rows_of_entries) -> "CycMatrix":
        rows = [list(r) for r in rows_of_entries]
        nr = len(rows)
        nc = len(rows[0]) if rows else 0
        flat = [e for r in rows for e in r]
        return cls(N, nr, nc, flat)

    @classmethod
    def from_columns(cls, N: int, columns, rows: int) -> "CycMatrix":
        """Build from sparse columns given as dicts {row_index: value}."""
        columns = list(columns)
        m = cls(N, rows, len(columns))
        for j, col in enumerate(columns):
            for i, v in col.items():
                m.entries[i * len(columns) + j] = v
        return m

    def __getitem__(self, ij):
        i, j = ij
        if not (0 <= i < self.rows and 0 <= j < self.cols):
            raise IndexError(ij)
        return self.entries[i * self.cols + j]

    def __setitem__(self, ij, value):
        i, j = ij
        if not isinstance(value, CyclotomicNumber) or value.N != self.N:
            raise ValueError("value must be a CyclotomicNumber over the same N")
        self.entries[i * self.cols + j] = value

    def column(self, j: int) -> dict:
        return {
            i: self.entries[i * self.cols + j]
            for i in range(self.rows)
            if self.entries[i * self.cols + j]
        }

    def columns(self):
        return [self.column(j) for j in range(self.cols)]

    def conjugate_transpose(self) -> "CycMatrix":
        out = CycMatrix(self.N, self.cols, self.rows)
        for i in range(self.rows):
            for j in range(self.cols):
                out.entries[j * self.rows + i] = self.entries[i * self.cols + j].conjugate()
        return out

    def __matmul__(self, other: "CycMatrix") -> "CycMatrix":
        if not isinstance(other, CycMatrix):
            return NotImplemented
        if self.N != other.N or self.cols != other.rows:
            raise ValueError("incompatible matrix product")
        out = CycMatrix(self.N, self.rows, other.cols)
        for i in range(self.rows):
            for k in range(self.cols):
                a = self.entries[i * self.cols + k]
                if not a:
                    continue
                for j in range(other.cols):
                    b = other.entries[k * other.cols + j]
                    if b:
                        out.entries[i * other.cols + j] = (
                            out.entries[i * other.cols + j] + a * b
                        )
        return out

    def to_complex(self):
        import numpy as np

        out = np.zeros((self.rows, self.cols), dtype=complex)
        for i in range(self.rows):
            base = i * self.cols
            for j in range(self.cols):
                e = self.entries[base + j]
                if e:
                    out[i, j] = e.to_complex()
        return out

    def is_zero(self) -> bool:
        return all(not e for e in self.entries)

    def __eq__(self, other):
        return (
            isinstance(other, CycMatrix)
            and self.N == other.N
            and self.rows == other.rows
            and self.cols == other.cols
            and self.entries == other.entries
        )

    def __repr__(self):
        return f"CycMatrix(N={self.N}, {self.rows}x{self.cols})"


def _axpy(target: dict, factor: CyclotomicNumber, source: dict) -> None:
    """target -= factor * source, dropping entries that cancel to zero."""
    for r, v in source.items():
        cur = target.get(r)
        if cur is None:
            target[r] = -(factor * v)
        else:
            w = cur - factor * v
            if w:
                target[r] = w
            else:
                del target[r]


class ColumnReducer:
    """Incremental Gaussian elimination over Q(xi_N) on sparse columns.

    Maintains a mutually reduced pivot set; feeding columns left to right
    with topmost-nonzero pivoting makes every intermediate rank exact and
    the whole process deterministic.  Optionally tracks the combination of
    input columns reducing to zero, which yields a right-kernel basis.
    """

    def __init__(self, N: int, track_kernel: bool = False):
        _check_modulus(N)
        self.N = N
        self.track_kernel = track_kernel
        self._pivots: dict[int, tuple[dict, dict | None]] = {}
        self._kernel: list[dict] = []
        self._ncols = 0
        self._one = CyclotomicNumber.one(N)

    @property
    def rank(self) -> int:
        return len(self._pivots)

    @property
    def ncols(self) -> int:
        return self._ncols

    @property
    def kernel_combinations(self) -> list[dict]:
        return self._kernel

    def add_column(self, column: dict) -> bool:
        """Feed one column; returns True iff the rank increased."""
        col = {r: v for r, v in column.items() if v}
        idx = self._ncols
        self._ncols += 1
        comb = {idx: self._one} if self.track_kernel else None
        pivots = self._pivots
        if col:
            for r in sorted(k for k in col.keys() if k in pivots):
                if r not in col:
                    continue
                pcol, pcomb = pivots[r]
                f = col[r]
                _axpy(col, f, pcol)
                if comb is not None:
                    _axpy(comb, f, pcomb)
        if not col:
            if comb is not None:
                self._kernel.append(comb)
            return False
        r0 = min(col)
        inv = col[r0].inverse()
        if inv != self._one:
            col = {r: v * inv for r, v in col.items()}
            if comb is not None:
                comb = {r: v * inv for r, v in comb.items()}
        for c2, m2 in pivots.values():
            f = c2.get(r0)
            if f is not None:
                _axpy(c2, f, col)
                if m2 is not None and comb is not None:
                    _axpy(m2, f, comb)
        pivots[r0] = (col, comb)
        return True


def exact_rank(M: CycMatrix) -> int:
    """Rank over Q(xi_N) by exact elimination; empty matrices have rank 0."""
    if M.rows == 0 or M.cols == 0:
        return 0
    red = ColumnReducer(M.N)
    for j in range(M.cols):
        red.add_column(M.column(j))
    return red.rank


def exact_kernel_basis(M: CycMatrix) -> CycMatrix:
    """Columns spanning the right null space {x : M x = 0}, exactly."""
    red = ColumnReducer(M.N, track_kernel=True)
    for j in range(M.cols):
        red.add_column(M.column(j))
    return CycMatrix.from_columns(M.N, red.kernel_combinations, M.cols)
