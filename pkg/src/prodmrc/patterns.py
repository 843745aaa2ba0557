"""Topologies, erasure patterns and the combinatorial tests on them.

Cells are 1-based ``(row, column)`` pairs, as in the grid pictures the
package is usually checked against. A pattern's bitmask form puts cell
``(i, j)`` at bit ``(i - 1) * n + (j - 1)``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from typing import Iterable, Sequence

import numpy as np

from .errors import (
    EmptyPattern,
    NotIrreducible,
    NotRegular,
    PatternFormatError,
    PreconditionFailed,
    ReplicationBound,
)


@dataclass(frozen=True)
class Topology:
    """Product topology T_{m,n}(a, b, 0): ``a`` parities per column, ``b`` per row."""

    m: int
    n: int
    a: int
    b: int

    def __post_init__(self):
        for name in ("m", "n", "a", "b"):
            v = getattr(self, name)
            if not isinstance(v, (int, np.integer)) or isinstance(v, bool):
                raise ValueError(f"{name} must be an integer")
        if not 1 <= self.a < self.m:
            raise ValueError(f"need 1 <= a < m, got a={self.a}, m={self.m}")
        if not 1 <= self.b < self.n:
            raise ValueError(f"need 1 <= b < n, got b={self.b}, n={self.n}")

    @property
    def k(self) -> int:
        """Dimension of any code instantiating the topology with full-rank factors."""
        return (self.m - self.a) * (self.n - self.b)

    @property
    def size(self) -> int:
        return self.m * self.n

    def cell_index(self, i: int, j: int) -> int:
        """0-based column of cell (i, j) in a generator matrix (row-major Vec)."""
        return (i - 1) * self.n + (j - 1)

    def with_a(self, a: int) -> "Topology":
        return Topology(self.m, self.n, a, self.b)

    def __str__(self) -> str:
        return f"T_{{{self.m},{self.n}}}({self.a},{self.b},0)"


@dataclass(frozen=True)
class Grid:
    """A subgrid U x V of [m] x [n] (1-based labels)."""

    rows: frozenset[int]
    cols: frozenset[int]

    @property
    def u(self) -> int:
        return len(self.rows)

    @property
    def v(self) -> int:
        return len(self.cols)

    def __str__(self) -> str:
        return f"U={_fmt_set(self.rows)} V={_fmt_set(self.cols)}"


@dataclass(frozen=True)
class RowProfile:
    row: int
    support: tuple[int, ...]
    excess: int


@dataclass(frozen=True)
class ErasurePattern:
    topology: Topology
    erased: frozenset[tuple[int, int]] = field(default_factory=frozenset)

    def __post_init__(self):
        cells = frozenset((int(i), int(j)) for i, j in self.erased)
        t = self.topology
        for i, j in cells:
            if not (1 <= i <= t.m and 1 <= j <= t.n):
                raise ValueError(f"cell ({i},{j}) outside the {t.m}x{t.n} grid")
        object.__setattr__(self, "erased", cells)

    # construction helpers
    @classmethod
    def from_rows(cls, topology: Topology, rows: dict[int, Iterable[int]]) -> "ErasurePattern":
        """Build from a mapping row -> erased columns."""
        return cls(topology, frozenset((i, j) for i, cols in rows.items() for j in cols))

    @classmethod
    def from_mask(cls, topology: Topology, mask) -> "ErasurePattern":
        mask = np.asarray(mask, dtype=bool)
        if mask.shape != (topology.m, topology.n):
            raise ValueError(f"mask shape {mask.shape} != {(topology.m, topology.n)}")
        ii, jj = np.nonzero(mask)
        return cls(topology, frozenset(zip((ii + 1).tolist(), (jj + 1).tolist())))

    @classmethod
    def from_bits(cls, topology: Topology, bits: int) -> "ErasurePattern":
        n = topology.n
        cells = []
        idx = 0
        while bits:
            if bits & 1:
                cells.append((idx // n + 1, idx % n + 1))
            bits >>= 1
            idx += 1
        return cls(topology, frozenset(cells))

    # views
    @property
    def mask(self) -> np.ndarray:
        m = np.zeros((self.topology.m, self.topology.n), dtype=bool)
        for i, j in self.erased:
            m[i - 1, j - 1] = True
        return m

    @property
    def bits(self) -> int:
        n = self.topology.n
        out = 0
        for i, j in self.erased:
            out |= 1 << ((i - 1) * n + (j - 1))
        return out

    def __len__(self) -> int:
        return len(self.erased)

    def __contains__(self, cell) -> bool:
        return tuple(cell) in self.erased

    def is_empty(self) -> bool:
        return not self.erased

    def row_support(self, i: int) -> tuple[int, ...]:
        return tuple(sorted(j for r, j in self.erased if r == i))

    def row_counts(self) -> list[int]:
        counts = [0] * self.topology.m
        for i, _ in self.erased:
            counts[i - 1] += 1
        return counts

    def col_counts(self) -> list[int]:
        counts = [0] * self.topology.n
        for _, j in self.erased:
            counts[j - 1] += 1
        return counts

    def nonempty_rows(self) -> list[int]:
        return sorted({i for i, _ in self.erased})

    def nonempty_cols(self) -> list[int]:
        return sorted({j for _, j in self.erased})

    def surviving_cells(self) -> list[tuple[int, int]]:
        t = self.topology
        return [(i, j) for i in range(1, t.m + 1) for j in range(1, t.n + 1) if (i, j) not in self.erased]

    def surviving_columns(self) -> list[int]:
        """0-based generator-matrix columns of the surviving cells."""
        t = self.topology
        return [t.cell_index(i, j) for i, j in self.surviving_cells()]

    def restrict_rows(self, rows: Iterable[int]) -> "ErasurePattern":
        keep = set(rows)
        return ErasurePattern(self.topology, frozenset(c for c in self.erased if c[0] in keep))

    def retopologize(self, topology: Topology) -> "ErasurePattern":
        """Same cells viewed under another topology of the same grid size or larger."""
        return ErasurePattern(topology, self.erased)

    def __str__(self) -> str:
        return format_pattern(self)


# enclosing grid, irreducibility, reduction

def enclosing_grid(E: ErasurePattern) -> Grid:
    if E.is_empty():
        raise EmptyPattern("the empty pattern has no enclosing grid")
    return Grid(frozenset(E.nonempty_rows()), frozenset(E.nonempty_cols()))


def is_row_irreducible(E: ErasurePattern) -> bool:
    b = E.topology.b
    return all(c == 0 or c >= b + 1 for c in E.row_counts())


def is_col_irreducible(E: ErasurePattern) -> bool:
    a = E.topology.a
    return all(c == 0 or c >= a + 1 for c in E.col_counts())


def is_irreducible(E: ErasurePattern) -> bool:
    return is_row_irreducible(E) and is_col_irreducible(E)


def reduce_rowwise(E: ErasurePattern) -> ErasurePattern:
    """Clear every row carrying at most ``b`` erasures.

    Recoverability is unchanged by this reduction; the result is row-wise
    irreducible.
    """
    b = E.topology.b
    counts = E.row_counts()
    return ErasurePattern(E.topology, frozenset((i, j) for i, j in E.erased if counts[i - 1] >= b + 1))


def row_profiles(E: ErasurePattern) -> list[RowProfile]:
    b = E.topology.b
    out = []
    for i in E.nonempty_rows():
        support = E.row_support(i)
        if len(support) < b + 1:
            raise NotIrreducible(f"row {i} has {len(support)} erasures, needs at least {b + 1}")
        out.append(RowProfile(i, support, len(support) - b))
    return out


# regularity

@dataclass(frozen=True)
class Regularity:
    regular: bool
    witness: Grid | None = None
    erased_in_witness: int | None = None
    bound: int | None = None

    def __bool__(self) -> bool:
        return self.regular


def regularity_bound(u: int, v: int, a: int, b: int) -> int:
    """Largest erasure count a regular pattern may place in a u x v subgrid."""
    return u * v - max(u - a, 0) * max(v - b, 0)


@lru_cache(maxsize=None)
def _subset_rows(m: int) -> np.ndarray:
    """(2**m, m) 0/1 matrix; row k lists the members of subset k (bit i = row i+1)."""
    k = np.arange(2**m, dtype=np.int64)[:, None]
    return ((k >> np.arange(m, dtype=np.int64)[None, :]) & 1).astype(np.int64)


@lru_cache(maxsize=None)
def _bound_table(m: int, n: int, a: int, b: int) -> np.ndarray:
    u = _subset_rows(m).sum(axis=1)
    v = np.arange(1, n + 1)
    return u[:, None] * v[None, :] - np.maximum(u - a, 0)[:, None] * np.maximum(v - b, 0)[None, :]


def is_regular(E: ErasurePattern) -> Regularity:
    """Check the subgrid counting bound on every U x V.

    For a fixed row set U the binding column set of size v is the v columns
    with the most erasures inside U, so it is enough to sort per-U column
    counts and scan v. The scan is over row subsets of the shorter side.
    """
    t = E.topology
    mask = E.mask.astype(np.int64)
    a, b = t.a, t.b
    transposed = t.n < t.m
    if transposed:
        mask = mask.T
        a, b = b, a
    m, n = mask.shape
    subsets = _subset_rows(m)
    counts = subsets @ mask
    order = np.argsort(-counts, axis=1, kind="stable")
    prefix = np.cumsum(np.take_along_axis(counts, order, axis=1), axis=1)
    bound = _bound_table(m, n, a, b)
    viol = prefix > bound
    if not viol.any():
        return Regularity(True)
    flat = int(np.argmax(viol.reshape(-1)))
    s, v = divmod(flat, n)
    rows = frozenset(int(i) + 1 for i in np.flatnonzero(subsets[s]))
    cols = frozenset(int(j) + 1 for j in order[s, : v + 1])
    if transposed:
        rows, cols = cols, rows
    return Regularity(False, Grid(rows, cols), int(prefix[s, v]), int(bound[s, v]))


def regular_masks(masks: np.ndarray, a: int, b: int) -> np.ndarray:
    """Vectorised regularity over a batch of (N, m, n) 0/1 masks."""
    masks = np.asarray(masks, dtype=np.int64)
    if masks.ndim != 3:
        raise ValueError("expected a (N, m, n) batch")
    if masks.shape[2] < masks.shape[1]:
        masks = masks.transpose(0, 2, 1)
        a, b = b, a
    _, m, n = masks.shape
    subsets = _subset_rows(m)
    counts = np.einsum("sm,Nmn->Nsn", subsets, masks)
    counts = -np.sort(-counts, axis=2)
    prefix = np.cumsum(counts, axis=2)
    return ~(prefix > _bound_table(m, n, a, b)[None]).any(axis=(1, 2))


def masks_from_bits(bits: np.ndarray, m: int, n: int) -> np.ndarray:
    bits = np.asarray(bits, dtype=np.int64)
    shifts = np.arange(m * n, dtype=np.int64)
    return ((bits[:, None] >> shifts[None, :]) & 1).reshape(-1, m, n)


# extended patterns

@dataclass(frozen=True)
class ExtendedPattern:
    """A base pattern for (a=1, b) with some rows replicated below it, read under a=2."""

    base: ErasurePattern
    sources: tuple[int, ...]
    result: ErasurePattern

    @property
    def m_extra(self) -> int:
        return len(self.sources)


def extend_pattern(E: ErasurePattern, sources: Sequence[int], check: bool = True) -> ExtendedPattern:
    t = E.topology
    sources = tuple(int(s) for s in sources)
    if len(set(sources)) != len(sources):
        raise ReplicationBound(f"duplicate source rows in {list(sources)}")
    if len(sources) > t.m:
        raise ReplicationBound(f"{len(sources)} extension rows exceed m={t.m}")
    for s in sources:
        if not 1 <= s <= t.m:
            raise PreconditionFailed(f"source row {s} outside 1..{t.m}")
    if t.a != 1:
        raise PreconditionFailed("base pattern must be for a column code with a=1")
    if check:
        if not is_row_irreducible(E):
            raise PreconditionFailed("base pattern is not row-wise irreducible")
        if not is_regular(E):
            raise PreconditionFailed("base pattern is not regular")
    m_total = t.m + len(sources)
    try:
        ext_top = Topology(m_total, t.n, 2, t.b)
    except ValueError as exc:
        raise PreconditionFailed(f"extended grid too small for a=2: {exc}") from None
    cells = set(E.erased)
    for ell, src in enumerate(sources, start=1):
        cells.update((t.m + ell, j) for j in E.row_support(src))
    return ExtendedPattern(E, sources, ErasurePattern(ext_top, frozenset(cells)))


def check_extended_regular(X: ExtendedPattern) -> bool:
    return bool(is_regular(X.result))


def find_extension(E: ErasurePattern) -> ExtendedPattern | None:
    """Try to read an a=2 pattern as an extension of its leading rows.

    Looks for the largest m' such that each of the last m' rows replicates a
    distinct row among the first m - m' rows and those rows form a regular,
    row-wise irreducible pattern for a=1.
    """
    t = E.topology
    supports = [E.row_support(i) for i in range(1, t.m + 1)]
    for m_extra in range(t.m // 2, -1, -1):
        m_base = t.m - m_extra
        if m_base < 2:
            continue
        used: set[int] = set()
        sources = []
        for ell in range(1, m_extra + 1):
            target = supports[m_base + ell - 1]
            src = next((j for j in range(1, m_base + 1) if j not in used and supports[j - 1] == target), None)
            if src is None:
                break
            used.add(src)
            sources.append(src)
        else:
            base_top = Topology(m_base, t.n, 1, t.b)
            base = ErasurePattern(base_top, frozenset(c for c in E.erased if c[0] <= m_base))
            if is_row_irreducible(base) and is_regular(base):
                return extend_pattern(base, sources)
    return None


# text format

def format_pattern(E: ErasurePattern) -> str:
    t = E.topology
    lines = [f"{t.m} {t.n} {t.a} {t.b}"]
    for i in range(1, t.m + 1):
        lines.append("".join("x" if (i, j) in E.erased else "." for j in range(1, t.n + 1)))
    return "\n".join(lines) + "\n"


def parse_header(line: str, lineno: int = 1) -> Topology:
    parts = line.split()
    if len(parts) != 4:
        raise PatternFormatError("header must be 'm n a b'", lineno)
    try:
        m, n, a, b = (int(p) for p in parts)
    except ValueError:
        raise PatternFormatError("header fields must be decimal integers", lineno) from None
    try:
        return Topology(m, n, a, b)
    except ValueError as exc:
        raise PatternFormatError(str(exc), lineno) from None


def parse_pattern(text: str) -> ErasurePattern:
    lines = text.splitlines()
    while lines and not lines[-1].strip():
        lines.pop()
    if not lines:
        raise PatternFormatError("empty input", 1)
    t = parse_header(lines[0])
    body = lines[1:]
    if len(body) != t.m:
        raise PatternFormatError(f"expected {t.m} grid rows, found {len(body)}", min(len(lines), t.m + 1) + 1)
    cells = []
    for i, raw in enumerate(body, start=1):
        line = raw.rstrip("\r")
        for j, ch in enumerate(line, start=1):
            if j > t.n:
                raise PatternFormatError(f"row longer than n={t.n}", i + 1, j)
            if ch == "x":
                cells.append((i, j))
            elif ch != ".":
                raise PatternFormatError(f"unexpected character {ch!r}", i + 1, j)
        if len(line) < t.n:
            raise PatternFormatError(f"row shorter than n={t.n}", i + 1, len(line) + 1)
    return ErasurePattern(t, frozenset(cells))


def _fmt_set(s: Iterable[int]) -> str:
    return "{" + ",".join(str(x) for x in sorted(s)) + "}"


def require_regular(E: ErasurePattern) -> None:
    r = is_regular(E)
    if not r:
        raise NotRegular(f"pattern is not regular; violating subgrid {r.witness}")
