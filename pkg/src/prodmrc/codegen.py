"""Symbolic generator matrices for product codes and their instantiation.

An entry of a :class:`SymbolicMatrix` is ``None`` (zero), ``()`` (the
constant 1) or a sorted tuple of variable names (a monomial). Variables are
plain strings such as ``"x[3,7]"``; names are unique within a construction.

The row-code generator is built per erasure pattern: an identity row for
every column without erasures, ``r_i`` rows per erased row ``i`` supported on
``b`` fixed columns of that row plus one further erased column, and filler
rows fully supported on the enclosing columns. The column code is the simple
parity code for a=1 and ``[Sigma | Lambda]`` (generic first two columns,
diagonal rest) for a=2.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field as dc_field
from typing import Iterable, Mapping, Sequence

import numpy as np

from . import gfield
from .errors import (
    BadDimension,
    DecompositionFailure,
    NotIrreducible,
    NotRegular,
    PreconditionFailed,
    UnluckyField,
)
from .gfield import Field, FieldMatrix
from .matchgraph import (
    Matching,
    build_erasure_nonerasure_graph,
    complete_matching,
    iter_complete_matchings,
    support_graph,
)
from .patterns import (
    ErasurePattern,
    ExtendedPattern,
    Topology,
    enclosing_grid,
    is_regular,
    is_row_irreducible,
    reduce_rowwise,
    row_profiles,
)

Entry = "tuple[str, ...] | None"
UNIT: tuple = ()

DEFAULT_RETRIES = 8


class SymbolicMatrix:
    """Immutable matrix of zeros, unit constants and monomials."""

    __slots__ = ("_e", "rows", "cols")

    def __init__(self, entries: Sequence[Sequence], cols: int | None = None):
        rows = tuple(tuple(_norm(x) for x in r) for r in entries)
        if cols is None:
            cols = len(rows[0]) if rows else 0
        if any(len(r) != cols for r in rows):
            raise ValueError("ragged symbolic matrix")
        self._e = rows
        self.rows = len(rows)
        self.cols = cols

    @classmethod
    def zeros(cls, rows: int, cols: int) -> "SymbolicMatrix":
        return cls([[None] * cols for _ in range(rows)], cols)

    def entry(self, i: int, j: int):
        return self._e[i][j]

    def row(self, i: int) -> tuple:
        return self._e[i]

    @property
    def shape(self) -> tuple[int, int]:
        return (self.rows, self.cols)

    def support(self) -> np.ndarray:
        s = np.zeros(self.shape, dtype=bool)
        for i, r in enumerate(self._e):
            for j, x in enumerate(r):
                s[i, j] = x is not None
        return s

    def row_support(self, i: int) -> tuple[int, ...]:
        return tuple(j for j, x in enumerate(self._e[i]) if x is not None)

    def variables(self) -> list[str]:
        """Distinct variable names in row-major order of first appearance."""
        seen: dict[str, None] = {}
        for r in self._e:
            for x in r:
                if x:
                    for v in x:
                        seen.setdefault(v, None)
        return list(seen)

    def monomials(self) -> list[tuple[str, ...]]:
        return [x for r in self._e for x in r if x]

    def submatrix(self, rowset: Iterable[int] | None, colset: Iterable[int] | None) -> "SymbolicMatrix":
        rows = range(self.rows) if rowset is None else list(rowset)
        cols = range(self.cols) if colset is None else list(colset)
        cols = list(cols)
        return SymbolicMatrix([[self._e[i][j] for j in cols] for i in rows], len(cols))

    def vstack(self, other: "SymbolicMatrix") -> "SymbolicMatrix":
        if self.cols != other.cols:
            raise ValueError("column mismatch in vstack")
        return SymbolicMatrix(self._e + other._e, self.cols)

    def evaluate(self, field: Field, values: Mapping[str, int]) -> FieldMatrix:
        q = field.q
        out = np.zeros(self.shape, dtype=field.dtype)
        for i, r in enumerate(self._e):
            for j, x in enumerate(r):
                if x is None:
                    continue
                v = 1
                for name in x:
                    v = v * values[name] % q
                out[i, j] = v
        return FieldMatrix(field, out)

    def __eq__(self, other) -> bool:
        return isinstance(other, SymbolicMatrix) and self._e == other._e and self.cols == other.cols

    __hash__ = None

    def pretty(self) -> str:
        cells = [["0" if x is None else ("1" if x == () else "*".join(x)) for x in r] for r in self._e]
        width = max((len(c) for r in cells for c in r), default=1)
        return "\n".join(" ".join(c.rjust(width) for c in r) for r in cells)

    def __repr__(self) -> str:
        return f"SymbolicMatrix({self.rows}x{self.cols})"


def _norm(x):
    if x is None or x == 0:
        return None
    if x == 1:
        return UNIT
    if isinstance(x, str):
        return (x,)
    return tuple(sorted(x))


def var(prefix: str, i: int, j: int) -> str:
    return f"{prefix}[{i},{j}]"


def generic_matrix(rows: int, cols: int, prefix: str) -> SymbolicMatrix:
    """Every entry a fresh variable ``prefix[i,j]`` (1-based)."""
    return SymbolicMatrix([[(var(prefix, i, j),) for j in range(1, cols + 1)]
                           for i in range(1, rows + 1)], cols)


def tensor(A: SymbolicMatrix, B: SymbolicMatrix) -> SymbolicMatrix:
    """Kronecker product; block (i, j) is A[i, j] times B."""
    out = []
    for ra in A._e:
        for rb in B._e:
            row = []
            for x in ra:
                for y in rb:
                    row.append(None if x is None or y is None else tuple(sorted(x + y)))
            out.append(row)
    return SymbolicMatrix(out, A.cols * B.cols)


# column codes

def build_gcol_a1(m: int) -> SymbolicMatrix:
    """Simple parity code ``[1 | I_{m-1}]`` with unit constants."""
    if m < 2:
        raise BadDimension(f"parity column code needs m >= 2, got {m}")
    return gcol_parity(m, 1)


def gcol_parity(m: int, parity_row: int) -> SymbolicMatrix:
    """Parity code generator with the all-ones column at ``parity_row``."""
    if m < 2:
        raise BadDimension(f"parity column code needs m >= 2, got {m}")
    others = [c for c in range(1, m + 1) if c != parity_row]
    rows = []
    for k, c in enumerate(others):
        row = [None] * m
        row[parity_row - 1] = UNIT
        row[c - 1] = UNIT
        rows.append(row)
    return SymbolicMatrix(rows, m)


def build_gcol_a2(m_total: int) -> SymbolicMatrix:
    """``[Sigma | Lambda]``: two generic columns then a generic diagonal."""
    if m_total < 3:
        raise BadDimension(f"a=2 column code needs at least 3 rows, got {m_total}")
    rows = []
    for i in range(1, m_total - 1):
        row = [(var("sigma", i, 1),), (var("sigma", i, 2),)] + [None] * (m_total - 2)
        row[i + 1] = (var("lambda", i, i),)
        rows.append(row)
    return SymbolicMatrix(rows, m_total)


# row code

@dataclass(frozen=True)
class RowBlock:
    """Generator rows contributed by one erased row of the pattern."""

    row: int
    support: tuple[int, ...]
    fixed: tuple[int, ...]     # the b shared columns
    extras: tuple[int, ...]    # one further column per generator row
    grow_rows: tuple[int, ...]  # 0-based rows of G_row

    @property
    def excess(self) -> int:
        return len(self.extras)


@dataclass(frozen=True)
class GRowPlan:
    pattern: ErasurePattern
    matrix: SymbolicMatrix
    identity_cols: tuple[int, ...]
    identity_rows: tuple[int, ...]
    blocks: tuple[RowBlock, ...]
    filler_rows: tuple[int, ...]
    enclosing_cols: tuple[int, ...]

    @property
    def t(self) -> int:
        return len(self.filler_rows)

    @property
    def s_rows(self) -> tuple[int, ...]:
        return tuple(r for blk in self.blocks for r in blk.grow_rows)

    def block(self, row: int) -> RowBlock:
        for blk in self.blocks:
            if blk.row == row:
                return blk
        raise KeyError(row)


def build_grow(E: ErasurePattern, fixed_cols: Mapping[int, Sequence[int]] | None = None
               ) -> tuple[SymbolicMatrix, GRowPlan]:
    """Pattern-specific (n-b) x n row-code generator.

    ``fixed_cols`` optionally pins the b shared columns for given rows; by
    default the b smallest erased columns of each row are used and the
    remaining erased columns become the per-row extras in ascending order.
    """
    t = E.topology
    n, b = t.n, t.b
    if E.is_empty():
        raise PreconditionFailed("the empty pattern has no pattern-specific row code")
    if not is_row_irreducible(E):
        raise NotIrreducible("pattern is not row-wise irreducible")
    if not is_regular(E):
        raise NotRegular("pattern is not regular")
    fixed_cols = dict(fixed_cols or {})
    V = sorted(enclosing_grid(E).cols)
    identity_cols = [j for j in range(1, n + 1) if j not in set(V)]

    rows: list[list] = []

    def new_row(cols: Iterable[int]) -> int:
        r = len(rows)
        row = [None] * n
        for j in cols:
            row[j - 1] = (var("x", r + 1, j),)
        rows.append(row)
        return r

    identity_rows = tuple(new_row([j]) for j in identity_cols)
    blocks = []
    for prof in row_profiles(E):
        if prof.row in fixed_cols:
            fixed = tuple(sorted(int(j) for j in fixed_cols[prof.row]))
            if len(fixed) != b or not set(fixed) <= set(prof.support):
                raise PreconditionFailed(f"fixed columns for row {prof.row} must be {b} erased columns")
        else:
            fixed = prof.support[:b]
        extras = tuple(j for j in prof.support if j not in fixed)
        grow_rows = tuple(new_row(sorted(fixed + (e,))) for e in extras)
        blocks.append(RowBlock(prof.row, prof.support, fixed, extras, grow_rows))
    filler = n - b - len(rows)
    if filler < 0:
        raise NotRegular("row-code construction overflows n-b rows")
    filler_rows = tuple(new_row(V) for _ in range(filler))
    M = SymbolicMatrix(rows, n)
    return M, GRowPlan(E, M, tuple(identity_cols), identity_rows, tuple(blocks), filler_rows, tuple(V))


# instantiation

@dataclass(frozen=True)
class Assignment:
    values: dict
    field: Field
    seed: int

    def __getitem__(self, name: str) -> int:
        return self.values[name]


def draw_assignment(variables: Iterable[str], field: Field, seed: int) -> Assignment:
    """Independent uniform nonzero values, drawn in the order given."""
    rng = random.Random(seed)
    values = {}
    for v in variables:
        if v not in values:
            values[v] = rng.randrange(1, field.q)
    return Assignment(values, field, seed)


def instantiate(M: SymbolicMatrix, field: Field, seed: int) -> tuple[FieldMatrix, Assignment]:
    a = draw_assignment(M.variables(), field, seed)
    return M.evaluate(field, a.values), a


def attempt_seeds(seed: int, count: int) -> list[int]:
    """``seed`` followed by ``count - 1`` derived seeds, deterministically."""
    rng = random.Random(f"retry:{seed}")
    return [seed] + [rng.getrandbits(63) for _ in range(count - 1)]


@dataclass(frozen=True)
class SampledCode:
    """An instantiated product code G = Gcol (x) Grow."""

    topology: Topology
    gcol: FieldMatrix
    grow: FieldMatrix
    gcol_symbolic: SymbolicMatrix
    grow_symbolic: SymbolicMatrix
    assignment: Assignment
    target: ErasurePattern | None = None
    punctured_rank: int | None = None
    attempts: int = 1
    construction: str = "structured"
    plan: GRowPlan | None = dc_field(default=None, compare=False)

    @property
    def seed(self) -> int:
        return self.assignment.seed

    @property
    def field(self) -> Field:
        return self.assignment.field

    @property
    def G(self) -> FieldMatrix:
        return self.gcol.kron(self.grow)


def _instantiate_pair(gcol: SymbolicMatrix, grow: SymbolicMatrix, field: Field, seed: int):
    a = draw_assignment(grow.variables() + gcol.variables(), field, seed)
    return gcol.evaluate(field, a.values), grow.evaluate(field, a.values), a


def punctured_rank(G: FieldMatrix, E: ErasurePattern) -> int:
    cols = E.surviving_columns()
    return gfield.rank_of_array(G.array[:, cols], G.field.q)


def _sample_product(topology: Topology, gcol: SymbolicMatrix, grow: SymbolicMatrix, E: ErasurePattern,
                    field: Field, seed: int, max_retries: int, construction: str, plan=None) -> SampledCode:
    target = topology.k
    last = None
    seeds = attempt_seeds(seed, max(1, max_retries))
    for attempt, s in enumerate(seeds, start=1):
        col_f, row_f, a = _instantiate_pair(gcol, grow, field, s)
        G = col_f.kron(row_f)
        r = punctured_rank(G, E)
        last = r
        if r == target:
            return SampledCode(topology, col_f, row_f, gcol, grow, a, E, r, attempt, construction, plan)
    raise UnluckyField(f"punctured rank stayed at {last} < {target} after {len(seeds)} instantiations over {field!r}")


def row_code_for(E: ErasurePattern, fixed_cols=None) -> tuple[SymbolicMatrix, GRowPlan | None, str]:
    """Structured row code for patterns spanning >= 2 rows, generic otherwise."""
    t = E.topology
    if len(E.nonempty_rows()) >= 2:
        M, plan = build_grow(E, fixed_cols)
        return M, plan, "structured"
    return generic_matrix(t.n - t.b, t.n, "x"), None, "generic-row"


def sample_code(E: ErasurePattern, field: Field | None = None, seed: int = 0,
                max_retries: int = DEFAULT_RETRIES, fixed_cols=None) -> SampledCode:
    """Instantiate a code for T(1, b) recovering ``E``.

    The pattern is first reduced row-wise; the returned code is verified to
    recover the reduced pattern (``result.target``), which is recoverable
    exactly when ``E`` is.
    """
    field = field or Field(gfield.DEFAULT_Q)
    t = E.topology
    if t.a != 1:
        raise PreconditionFailed("sample_code builds codes for a=1; use sample_code_a2 for a=2")
    if not is_regular(E):
        raise NotRegular("pattern is not regular")
    R = reduce_rowwise(E)
    grow, plan, kind = row_code_for(R, fixed_cols)
    return _sample_product(t, build_gcol_a1(t.m), grow, R, field, seed, max_retries, kind, plan)


def sample_code_a2(X: ExtendedPattern, field: Field | None = None, seed: int = 0,
                   max_retries: int = DEFAULT_RETRIES) -> SampledCode:
    """Instantiate ``[Sigma|Lambda] (x) Grow`` with the base pattern's row code."""
    field = field or Field(gfield.DEFAULT_Q)
    E2 = X.result
    t = E2.topology
    grow, plan, kind = row_code_for(X.base)
    return _sample_product(t, build_gcol_a2(t.m), grow, E2, field, seed, max_retries, kind, plan)


@dataclass(frozen=True)
class UniversalCode:
    topology: Topology
    gcol: FieldMatrix
    grow: FieldMatrix
    seed: int

    @property
    def G(self) -> FieldMatrix:
        return self.gcol.kron(self.grow)


def sample_universal_mrc(topology: Topology, field: Field | None = None, seed: int = 0) -> UniversalCode:
    """Product of fully generic column and row generators, randomly instantiated."""
    field = field or Field(gfield.DEFAULT_Q)
    t = topology
    gcol = generic_matrix(t.m - t.a, t.m, "c")
    grow = generic_matrix(t.n - t.b, t.n, "x")
    col_f, row_f, _ = _instantiate_pair(gcol, grow, field, seed)
    return UniversalCode(t, col_f, row_f, seed)


def sample_generic_code(E: ErasurePattern, field: Field | None = None, seed: int = 0,
                        max_retries: int = DEFAULT_RETRIES) -> SampledCode:
    """Fully generic column and row codes, retried until ``E`` is recovered.

    Covers topologies without a structured construction. Exhausting the
    retries raises UnluckyField, which for a regular pattern with a >= 2
    would be a conjecture counterexample candidate.
    """
    field = field or Field(gfield.DEFAULT_Q)
    t = E.topology
    gcol = generic_matrix(t.m - t.a, t.m, "c")
    grow = generic_matrix(t.n - t.b, t.n, "x")
    return _sample_product(t, gcol, grow, E, field, seed, max_retries, "generic")


# proof diagnostics

@dataclass
class DecompositionReport:
    pattern: ErasurePattern
    parity_row: int
    matched_cols: tuple[int, ...]
    gp_shape: tuple[int, int]
    blocks: dict = dc_field(default_factory=dict)
    checks: dict = dc_field(default_factory=dict)
    seed: int = 0

    @property
    def passed(self) -> bool:
        return all(self.checks.values())

    def failures(self) -> list[str]:
        return [k for k, ok in self.checks.items() if not ok]

    def summary(self) -> str:
        ok = sum(self.checks.values())
        lines = [f"parity row {self.parity_row}; G_P {self.gp_shape[0]}x{self.gp_shape[1]}; "
                 f"V_M = {{{','.join(map(str, self.matched_cols))}}}; {ok}/{len(self.checks)} checks pass"]
        lines += [f"  {'PASS' if v else 'FAIL'} {k}" for k, v in self.checks.items()]
        return "\n".join(lines)


def proof_decomposition(E: ErasurePattern, plan: GRowPlan | None = None, parity_row: int | None = None,
                        field: Field | None = None, seed: int = 0, strict: bool = True) -> DecompositionReport:
    """Rebuild the block structure behind the a=1 recoverability argument.

    With codeword row ``parity_row`` holding the column parity, the rows of
    G restricted to surviving cells split into a top block G_P (generator
    rows that vanish on their own erased row, seen through the parity row)
    and per-row blocks G_Y_i. Checks recorded:

    * ``S_i zero rows``: G_S restricted off V_i has exactly r_i zero rows;
    * ``Y_i matching``: the pattern graph of each G_Y_i has a complete matching;
    * ``P' matching`` / ``P' distinct``: the square minor of G_P on the matched
      columns has a complete matching and only distinct variables;
    * ``pi' full rank``: the assembled square minor is nonsingular for one
      random instantiation (and so is G on the surviving cells).
    """
    t = E.topology
    if t.a != 1:
        raise PreconditionFailed("decomposition is defined for a=1")
    if plan is None:
        _, plan = build_grow(E)
    grow = plan.matrix
    U = E.nonempty_rows()
    if len(U) < 2:
        raise PreconditionFailed("decomposition needs erasures in at least two rows")
    p = U[0] if parity_row is None else int(parity_row)
    if p not in U:
        raise PreconditionFailed(f"parity row {p} must carry erasures")
    n, m = t.n, t.m
    V = set(plan.enclosing_cols)
    prof = {pr.row: pr for pr in row_profiles(E)}
    s_rows = plan.s_rows
    checks: dict[str, bool] = {}
    blocks: dict[str, SymbolicMatrix] = {}
    own_cols: dict[int, list[int]] = {}  # 1-based columns picked in each block of G_pi'

    top_rows: list[int] = []
    for i in range(1, m + 1):
        if i == p:
            continue
        Vi = set(E.row_support(i))
        keep_cols = [j for j in sorted(V) if j not in Vi]
        zero = [r for r in s_rows if all(grow.entry(r, j - 1) is None for j in keep_cols)]
        nonzero = [r for r in s_rows if r not in set(zero)]
        expected = prof[i].excess if i in prof else 0
        checks[f"S_{i} zero rows"] = len(zero) == expected
        if i in prof:
            top_rows.extend(zero)
        Y = grow.submatrix(nonzero + list(plan.filler_rows), [j - 1 for j in keep_cols])
        blocks[f"Y_{i}"] = Y
        mY = complete_matching(support_graph(Y))
        checks[f"Y_{i} matching"] = isinstance(mY, Matching)
        picked = sorted(keep_cols[c] for c in mY.pairs.values()) if isinstance(mY, Matching) else []
        own_cols[i] = sorted(set(plan.identity_cols) | set(picked))

    Vp = set(E.row_support(p))
    p_cols = [j for j in range(1, n + 1) if j not in Vp]
    GP = grow.submatrix(top_rows, [j - 1 for j in p_cols])
    blocks["P"] = GP

    graph = build_erasure_nonerasure_graph(E, (p,))
    mm = complete_matching(graph)
    checks["II.1 matching"] = isinstance(mm, Matching)
    VM = tuple(sorted(cell[1] for cell in mm.pairs.values())) if isinstance(mm, Matching) else ()
    GPp = grow.submatrix(top_rows, [j - 1 for j in VM])
    blocks["P'"] = GPp
    checks["P' square"] = GPp.rows == GPp.cols
    checks["P' matching"] = GPp.rows == GPp.cols and isinstance(complete_matching(support_graph(GPp)), Matching)
    mons = GPp.monomials()
    names = [v for mon in mons for v in mon]
    checks["P' distinct"] = len(names) == len(set(names))

    # assemble G_pi' as a column subset of G and test it numerically
    field = field or Field(gfield.DEFAULT_Q)
    gcol = gcol_parity(m, p)
    col_f, row_f, _ = _instantiate_pair(gcol, grow, field, seed)
    G = col_f.kron(row_f)
    cols = [t.cell_index(p, j) for j in VM]
    for i, js in own_cols.items():
        cols += [t.cell_index(i, j) for j in js]
    cols.sort()
    k = (m - 1) * (n - plan.pattern.topology.b)
    checks["pi' square"] = len(cols) == k
    checks["pi' full rank"] = len(cols) == k and gfield.rank_of_array(G.array[:, cols], field.q) == k
    checks["punctured rank"] = punctured_rank(G, E) == k

    report = DecompositionReport(E, p, VM, GP.shape, blocks, checks, seed)
    if strict and not report.passed:
        bad = report.failures()[0]
        raise DecompositionFailure(bad, report.summary())
    return report


@dataclass
class SigmaMinorReport:
    """Top block of the a=2 argument restricted to the matched cells."""

    matched_cells: tuple[tuple[int, int], ...]
    minor: SymbolicMatrix
    checks: dict
    alternative: tuple[tuple[int, int], ...] | None = None

    @property
    def passed(self) -> bool:
        return all(self.checks.values())

    @property
    def certified(self) -> bool:
        """Nonsingular top block for some complete matching."""
        return bool(self.checks.get("some matching nonsingular"))


def a2_top_minor(X: ExtendedPattern, field: Field | None = None, seed: int = 0,
                 matching_limit: int = 20000) -> SigmaMinorReport:
    """G_P' for an extended pattern, with the Sigma rows at codeword rows 1 and 2.

    Rows are the generator rows that vanish on their own erased codeword row
    (rows 3.. of the extended grid); columns are the surviving cells of rows
    1 and 2 matched by the erasure/non-erasure graph with right rows {1, 2}.
    Checks that the minor is square with a complete matching, that within
    any single column a row-code variable occurs in at most two monomials
    which then share their Sigma column, and that a random instantiation is
    nonsingular.

    A replicated row reuses its source's generator rows, so when the first
    matching puts both copies into the same Sigma column the two minor rows
    are proportional and ``nonsingular`` fails. ``some matching
    nonsingular`` then searches the other complete matchings (up to
    ``matching_limit``) for one whose minor is nonsingular; ``alternative``
    records the cells it used.
    """
    E2 = X.result
    t = E2.topology
    U = E2.nonempty_rows()
    if not {1, 2} <= set(U):
        raise PreconditionFailed("rows 1 and 2 must both carry erasures")
    grow, _, _ = row_code_for(X.base)
    G = tensor(build_gcol_a2(t.m), grow)
    nb = t.n - t.b
    top = []
    for i in U:
        if i <= 2:
            continue
        Vi = set(E2.row_support(i))
        keep = [j for j in range(1, t.n + 1) if j not in Vi]
        for r in range(grow.rows):
            if all(grow.entry(r, j - 1) is None for j in keep):
                top.append((i - 3) * nb + r)
    graph = build_erasure_nonerasure_graph(E2, (1, 2))
    mm = complete_matching(graph)
    checks = {"II.1 matching": isinstance(mm, Matching)}
    cells = tuple(sorted(mm.pairs.values())) if isinstance(mm, Matching) else ()
    minor = G.submatrix(top, [t.cell_index(s, j) for s, j in cells])
    checks["square"] = minor.rows == minor.cols
    checks["matching"] = minor.rows == minor.cols and isinstance(complete_matching(support_graph(minor)), Matching)
    ok = True
    for j in range(minor.cols):
        seen: dict[str, list[tuple[str, ...]]] = {}
        for i in range(minor.rows):
            mon = minor.entry(i, j)
            if not mon:
                continue
            for v in mon:
                if v.startswith("x["):
                    seen.setdefault(v, []).append(mon)
        for v, mons in seen.items():
            sig = {tuple(w for w in mon if w.startswith("sigma"))[0].split(",")[1] for mon in mons}
            if len(mons) > 2 or len(sig) != 1:
                ok = False
    checks["x occurrences"] = ok
    f = field or Field(gfield.DEFAULT_Q)
    alternative = None
    if minor.rows == minor.cols:
        # an empty minor has determinant 1
        checks["nonsingular"] = minor.rows == 0 or gfield.det(instantiate(minor, f, seed)[0]) != 0
        if checks["nonsingular"]:
            alternative = cells
        else:
            a = draw_assignment(G.variables(), f, seed).values
            for mm2 in iter_complete_matchings(graph, matching_limit):
                alt = tuple(sorted(mm2.pairs.values()))
                sub = G.submatrix(top, [t.cell_index(s, j) for s, j in alt])
                if gfield.det(sub.evaluate(f, a)) != 0:
                    alternative = alt
                    break
        checks["some matching nonsingular"] = alternative is not None
    return SigmaMinorReport(cells, minor, checks, alternative)
