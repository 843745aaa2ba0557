"""Prime-field arithmetic and dense linear algebra over GF(q).

Matrices are stored as numpy arrays. For ``q < 2**31`` the backing dtype is
``int64`` (every product of two reduced elements fits below ``2**62``); for
larger primes the arrays hold Python ints (``dtype=object``) so arithmetic
stays exact for any 64-bit modulus.

Matrix indices are 0-based throughout this module.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

from .errors import InvalidField, NoSolution, Underdetermined

MERSENNE_31 = 2**31 - 1
DEFAULT_Q = MERSENNE_31

# deterministic Miller-Rabin witnesses for n < 3.3e24
_MR_BASES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)
_SMALL_DTYPE_LIMIT = 2**31


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    for p in _MR_BASES:
        if n % p == 0:
            return n == p
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in _MR_BASES:
        x = pow(a, d, n)
        if x == 1 or x == n - 1:
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def _inverse(x: int, q: int) -> int:
    """Inverse of x mod q by the extended Euclidean algorithm."""
    r0, r1 = q, x % q
    s0, s1 = 0, 1
    while r1:
        quot = r0 // r1
        r0, r1 = r1, r0 - quot * r1
        s0, s1 = s1, s0 - quot * s1
    if r0 != 1:
        raise ZeroDivisionError(f"{x} is not invertible mod {q}")
    return s0 % q


@dataclass(frozen=True)
class Field:
    """The prime field GF(q)."""

    q: int

    def __post_init__(self):
        if not isinstance(self.q, (int, np.integer)) or isinstance(self.q, bool):
            raise InvalidField(f"modulus must be an integer, got {self.q!r}")
        if self.q < 2 or not is_prime(int(self.q)):
            raise InvalidField(f"{self.q} is not prime")
        object.__setattr__(self, "q", int(self.q))

    @property
    def dtype(self):
        return np.int64 if self.q < _SMALL_DTYPE_LIMIT else object

    def __repr__(self) -> str:
        return f"GF({self.q})"

    def inv(self, x: int) -> int:
        return _inverse(int(x), self.q)

    def array(self, data) -> np.ndarray:
        """Reduce arbitrary integer data into a fresh backing array."""
        if self.dtype is object:
            a = np.array(data, dtype=object)
            if a.size:
                a = np.vectorize(lambda v: int(v) % self.q, otypes=[object])(a)
            return a
        a = np.asarray(data)
        if a.dtype == object:
            a = np.vectorize(lambda v: int(v) % self.q, otypes=[np.int64])(a) if a.size else a.astype(np.int64)
        return np.mod(a.astype(np.int64, copy=True), self.q)

    def matrix(self, rows: Sequence[Sequence[int]] | np.ndarray, shape: tuple[int, int] | None = None) -> "FieldMatrix":
        a = self.array(rows)
        if shape is not None:
            a = a.reshape(shape)
        if a.ndim != 2:
            if a.size == 0 and shape is None:
                a = a.reshape(0, 0)
            else:
                raise ValueError("matrix data must be two-dimensional")
        return FieldMatrix(self, a)

    def vector(self, values: Iterable[int]) -> np.ndarray:
        return self.array(list(values)).reshape(-1)

    def zeros(self, rows: int, cols: int) -> "FieldMatrix":
        return FieldMatrix(self, np.zeros((rows, cols), dtype=self.dtype))

    def identity(self, n: int) -> "FieldMatrix":
        return self.matrix(np.eye(n, dtype=np.int64))

    def random_matrix(self, rows: int, cols: int, rng, nonzero: bool = False) -> "FieldMatrix":
        """Uniform random matrix drawn from a ``random.Random``-like ``rng``."""
        lo = 1 if nonzero else 0
        vals = [[rng.randrange(lo, self.q) for _ in range(cols)] for _ in range(rows)]
        return self.matrix(vals, shape=(rows, cols))


def field_new(q: int) -> Field:
    return Field(q)


class FieldMatrix:
    """Immutable dense matrix over a prime field."""

    __slots__ = ("field", "_a")

    def __init__(self, field: Field, data: np.ndarray):
        if data.ndim != 2:
            raise ValueError("FieldMatrix needs a 2-d array")
        a = data if data.dtype == field.dtype else data.astype(field.dtype)
        a = a.view()
        a.flags.writeable = False
        self.field = field
        self._a = a

    @property
    def rows(self) -> int:
        return self._a.shape[0]

    @property
    def cols(self) -> int:
        return self._a.shape[1]

    @property
    def shape(self) -> tuple[int, int]:
        return self._a.shape

    @property
    def entries(self) -> tuple[int, ...]:
        return tuple(int(v) for v in self._a.reshape(-1))

    @property
    def array(self) -> np.ndarray:
        """Read-only view of the backing array."""
        return self._a

    def copy_array(self) -> np.ndarray:
        return self._a.copy()

    def tolist(self) -> list[list[int]]:
        return [[int(v) for v in row] for row in self._a]

    @property
    def T(self) -> "FieldMatrix":
        return FieldMatrix(self.field, self._a.T.copy())

    def __getitem__(self, idx):
        return self._a[idx]

    def __eq__(self, other) -> bool:
        if not isinstance(other, FieldMatrix):
            return NotImplemented
        return (self.field == other.field and self.shape == other.shape
                and bool(np.all(self._a == other._a)))

    __hash__ = None

    def __repr__(self) -> str:
        return f"FieldMatrix({self.field!r}, {self.tolist()})"

    def __matmul__(self, other: "FieldMatrix") -> "FieldMatrix":
        _same_field(self, other)
        return FieldMatrix(self.field, matmul(self._a, other._a, self.field.q))

    def kron(self, other: "FieldMatrix") -> "FieldMatrix":
        _same_field(self, other)
        return FieldMatrix(self.field, np.kron(self._a, other._a) % self.field.q)

    def dot_vector(self, v) -> np.ndarray:
        """M @ v for a column vector v."""
        col = self.field.array(v).reshape(-1, 1)
        return matmul(self._a, col, self.field.q).reshape(-1)

    def vector_dot(self, v) -> np.ndarray:
        """v @ M for a row vector v."""
        row = self.field.array(v).reshape(1, -1)
        return matmul(row, self._a, self.field.q).reshape(-1)


def _same_field(x: FieldMatrix, y: FieldMatrix) -> None:
    if x.field != y.field:
        raise ValueError(f"field mismatch: {x.field!r} vs {y.field!r}")


def matmul(a: np.ndarray, b: np.ndarray, q: int) -> np.ndarray:
    """Exact (a @ b) mod q for reduced operands."""
    if a.shape[1] != b.shape[0]:
        raise ValueError(f"shape mismatch {a.shape} @ {b.shape}")
    if a.dtype == object or b.dtype == object:
        return (a.astype(object) @ b.astype(object)) % q
    if a.shape[1] == 0:
        return np.zeros((a.shape[0], b.shape[1]), dtype=np.int64)
    if a.shape[1] > 2**15:
        return ((a.astype(object) @ b.astype(object)) % q).astype(np.int64)
    # split b into 16-bit halves so each partial sum stays below 2**63
    lo = b & 0xFFFF
    hi = b >> 16
    r_lo = (a @ lo) % q
    r_hi = (a @ hi) % q
    return (r_hi * 65536 + r_lo) % q


def _reduce(a: np.ndarray, q: int, ncols: int | None = None, full: bool = True):
    """Gaussian elimination in place on ``a`` over GF(q).

    Pivot search is by first nonzero entry at or below the current row.
    Only the first ``ncols`` columns are used for pivots. With ``full`` the
    result is in reduced row-echelon form, otherwise plain echelon form.

    Returns (pivot_columns, row_order) where ``row_order[i]`` is the original
    index of the row now at position i.
    """
    rows, cols = a.shape
    limit = cols if ncols is None else ncols
    order = np.arange(rows)
    pivots: list[int] = []
    r = 0
    for c in range(limit):
        if r == rows:
            break
        nz = np.flatnonzero(a[r:, c])
        if nz.size == 0:
            continue
        p = r + int(nz[0])
        if p != r:
            a[[r, p]] = a[[p, r]]
            order[[r, p]] = order[[p, r]]
        piv = int(a[r, c])
        if piv != 1:
            a[r] = a[r] * _inverse(piv, q) % q
        start = 0 if full else r + 1
        col = a[start:, c].copy()
        if full:
            col[r] = 0
        hit = np.flatnonzero(col)
        if hit.size:
            idx = hit + start
            a[idx] = (a[idx] - np.outer(col[hit], a[r])) % q
        pivots.append(c)
        r += 1
    return pivots, order


def rank(M: FieldMatrix) -> int:
    if M.rows == 0 or M.cols == 0:
        return 0
    a = M.copy_array()
    if a.shape[0] > a.shape[1]:
        a = np.ascontiguousarray(a.T)
    pivots, _ = _reduce(a, M.field.q, full=False)
    return len(pivots)


def rank_of_array(a: np.ndarray, q: int) -> int:
    """Rank of a raw reduced array; the array is not modified."""
    if a.size == 0:
        return 0
    work = np.array(a.T if a.shape[0] > a.shape[1] else a, copy=True)
    pivots, _ = _reduce(work, q, full=False)
    return len(pivots)


def rref(M: FieldMatrix) -> tuple[FieldMatrix, list[int]]:
    a = M.copy_array()
    pivots, _ = _reduce(a, M.field.q)
    return FieldMatrix(M.field, a), pivots


def det(M: FieldMatrix) -> int:
    if M.rows != M.cols:
        raise ValueError("determinant of a non-square matrix")
    q = M.field.q
    a = M.copy_array()
    n = M.rows
    result = 1
    for c in range(n):
        nz = np.flatnonzero(a[c:, c])
        if nz.size == 0:
            return 0
        p = c + int(nz[0])
        if p != c:
            a[[c, p]] = a[[p, c]]
            result = -result
        piv = int(a[c, c])
        result = result * piv % q
        inv = _inverse(piv, q)
        col = a[c + 1:, c] * inv % q
        hit = np.flatnonzero(col)
        if hit.size:
            idx = hit + c + 1
            a[idx] = (a[idx] - np.outer(col[hit], a[c])) % q
    return result % q


def solve(A: FieldMatrix, y) -> np.ndarray:
    """Solve A x = y over GF(q).

    Raises NoSolution when the system is inconsistent (``err.row`` names an
    offending equation) and Underdetermined when A lacks full column rank.
    """
    field = A.field
    y = field.vector(y)
    if y.shape[0] != A.rows:
        raise ValueError(f"right-hand side has length {y.shape[0]}, expected {A.rows}")
    aug = np.concatenate([A.copy_array(), y.reshape(-1, 1).astype(A.array.dtype)], axis=1)
    pivots, order = _reduce(aug, field.q, ncols=A.cols)
    r = len(pivots)
    bad = np.flatnonzero(aug[r:, -1])
    if bad.size:
        offenders = order[r + bad]
        raise NoSolution("inconsistent linear system", row=int(offenders.min()))
    if r < A.cols:
        raise Underdetermined(f"rank {r} < {A.cols} unknowns")
    x = np.zeros(A.cols, dtype=aug.dtype)
    for i, c in enumerate(pivots):
        x[c] = aug[i, -1]
    return x


def nullspace(M: FieldMatrix) -> FieldMatrix:
    """Basis (as rows) of {v : M v = 0}."""
    q = M.field.q
    red, pivots = rref(M)
    a = red.array
    free = [c for c in range(M.cols) if c not in set(pivots)]
    basis = np.zeros((len(free), M.cols), dtype=a.dtype)
    for k, f in enumerate(free):
        basis[k, f] = 1
        for i, c in enumerate(pivots):
            basis[k, c] = (-a[i, f]) % q
    return FieldMatrix(M.field, basis)


def submatrix(M: FieldMatrix, rowset: Sequence[int] | None, colset: Sequence[int] | None) -> FieldMatrix:
    """Order-preserving restriction to the given 0-based row/column indices.

    ``None`` keeps every index on that axis.
    """
    rows = range(M.rows) if rowset is None else sorted(set(int(i) for i in rowset))
    cols = range(M.cols) if colset is None else sorted(set(int(j) for j in colset))
    for i in rows:
        if not 0 <= i < M.rows:
            raise IndexError(f"row index {i} out of range for {M.rows} rows")
    for j in cols:
        if not 0 <= j < M.cols:
            raise IndexError(f"column index {j} out of range for {M.cols} columns")
    a = M.array[np.ix_(list(rows), list(cols))] if len(rows) and len(cols) else \
        np.zeros((len(rows), len(cols)), dtype=M.array.dtype)
    return FieldMatrix(M.field, np.array(a, copy=True))
