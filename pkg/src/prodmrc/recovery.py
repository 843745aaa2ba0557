"""Recoverability tests, encoding and erasure decoding for product codes.

Generator matrices have one column per cell, in row-major order: cell
``(i, j)`` (1-based) is column ``(i - 1) * n + (j - 1)`` (0-based).
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import gfield
from .errors import DegenerateCode, NoSolution, NotACodeword, NotRecoverable, ShapeError, Underdetermined
from .gfield import FieldMatrix
from .patterns import ErasurePattern, Topology


@dataclass(frozen=True)
class Codeword:
    topology: Topology
    values: np.ndarray  # m x n

    def __post_init__(self):
        t = self.topology
        if self.values.shape != (t.m, t.n):
            raise ShapeError(f"codeword shape {self.values.shape} != {(t.m, t.n)}")

    def vec(self) -> np.ndarray:
        return self.values.reshape(-1)

    def __eq__(self, other) -> bool:
        return (isinstance(other, Codeword) and self.topology == other.topology
                and bool(np.all(self.values == other.values)))

    __hash__ = None


@dataclass(frozen=True)
class ReceivedWord:
    """Codeword values with the erased cells unknown."""

    topology: Topology
    values: np.ndarray  # m x n; entries at erased cells are ignored
    erasures: ErasurePattern

    @property
    def pattern(self) -> ErasurePattern:
        return self.erasures


@dataclass(frozen=True)
class RecoveryReport:
    pattern: ErasurePattern
    code_id: str
    punctured_rank: int
    k: int

    @property
    def recoverable(self) -> bool:
        return self.punctured_rank == self.k

    def __bool__(self) -> bool:
        return self.recoverable


def _check_columns(G: FieldMatrix, t: Topology) -> None:
    if G.cols != t.m * t.n:
        raise ShapeError(f"generator has {G.cols} columns, grid has {t.m * t.n} cells")


def is_recoverable_by(G: FieldMatrix, E: ErasurePattern, code_id: str = "") -> RecoveryReport:
    """Rank of G on the surviving cells against k = (m - a)(n - b)."""
    t = E.topology
    _check_columns(G, t)
    if G.rows != t.k:
        raise ShapeError(f"generator has {G.rows} rows, the topology has dimension {t.k}")
    r = gfield.rank_of_array(G.array[:, E.surviving_columns()], G.field.q)
    return RecoveryReport(E, code_id, r, t.k)


def encode(G: FieldMatrix, message, topology: Topology) -> Codeword:
    _check_columns(G, topology)
    msg = G.field.vector(message)
    if msg.shape[0] != G.rows:
        raise ShapeError(f"message length {msg.shape[0]} != {G.rows}")
    return Codeword(topology, G.vector_dot(msg).reshape(topology.m, topology.n))


def erase(c: Codeword, E: ErasurePattern) -> ReceivedWord:
    vals = c.values.copy()
    for i, j in E.erased:
        vals[i - 1, j - 1] = 0
    return ReceivedWord(c.topology, vals, E)


def decode(G: FieldMatrix, received: ReceivedWord) -> Codeword:
    """Fill in the erased cells.

    Solves ``msg @ G[:, S] = y_S`` over every surviving cell S (an
    overdetermined system) and re-encodes. A received word that is not the
    restriction of a codeword is reported with the offending cell.
    """
    t = received.topology
    _check_columns(G, t)
    E = received.erasures
    cells = E.surviving_cells()
    cols = [t.cell_index(i, j) for i, j in cells]
    y = [int(received.values[i - 1, j - 1]) for i, j in cells]
    A = FieldMatrix(G.field, np.ascontiguousarray(G.array[:, cols].T))
    if gfield.rank(A) < G.rows:
        raise NotRecoverable(f"pattern of {len(E)} erasures is not recoverable by this code")
    try:
        msg = gfield.solve(A, y)
    except NoSolution as exc:
        cell = cells[exc.row] if exc.row is not None else None
        raise NotACodeword(f"received values are inconsistent at cell {cell}", cell) from None
    except Underdetermined:  # pragma: no cover - excluded by the rank test above
        raise NotRecoverable("pattern is not recoverable by this code") from None
    return encode(G, msg, t)


def parity_checks(grow: FieldMatrix, gcol: FieldMatrix) -> tuple[FieldMatrix, FieldMatrix]:
    """Parity-check matrices (H_row, H_col) as nullspace bases of the generators."""
    for name, M in (("row", grow), ("column", gcol)):
        if gfield.rank(M) != M.rows:
            raise DegenerateCode(f"{name} generator is not full row rank")
    H_row = gfield.nullspace(grow)
    H_col = gfield.nullspace(gcol)
    if H_row.rows == 0 or H_col.rows == 0:
        raise DegenerateCode("a local code without parities cannot instantiate the topology")
    return H_row, H_col


def satisfies_parities(c: Codeword, H_row: FieldMatrix, H_col: FieldMatrix) -> bool:
    q = H_row.field.q
    vals = H_row.field.array(c.values)
    rows_ok = not np.any(gfield.matmul(H_row.array, vals.T, q))
    cols_ok = not np.any(gfield.matmul(H_col.array, vals, q))
    return rows_ok and cols_ok
