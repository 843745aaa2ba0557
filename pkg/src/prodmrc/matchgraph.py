"""Bipartite graphs built from erasure patterns and symbolic matrices.

Two graphs are derived from a row-wise irreducible pattern:

* erasures vs. non-erasures: each row ``i`` outside the chosen right rows
  contributes ``r_i`` copies ``(i, 1..r_i)`` on the left; every surviving
  cell of the right rows is a right vertex; copy ``(i, c)`` touches cell
  ``(s, t)`` when ``(i, t)`` is erased.
* rows vs. columns (a=1): rows of U other than ``ell`` on the left, columns
  of V outside row ``ell``'s support on the right, joined by erased cells.

Matchings come from repeated augmenting-path search with vertices visited in
ascending label order, so results are deterministic.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from itertools import combinations
from typing import Hashable, Iterable, Sequence

from .errors import BadPartition, BadRow, NotSquare, TooManySubsets
from .patterns import ErasurePattern, enclosing_grid, row_profiles


@dataclass(frozen=True)
class BipartiteGraph:
    left: tuple
    right: tuple
    adjacency: dict  # left vertex -> tuple of right vertices, ascending

    def __post_init__(self):
        right = set(self.right)
        for u, nbrs in self.adjacency.items():
            if u not in set(self.left):
                raise ValueError(f"edge from unknown left vertex {u!r}")
            bad = [w for w in nbrs if w not in right]
            if bad:
                raise ValueError(f"edge to unknown right vertex {bad[0]!r}")

    @classmethod
    def from_edges(cls, left: Iterable[Hashable], right: Iterable[Hashable],
                   edges: Iterable[tuple[Hashable, Hashable]]) -> "BipartiteGraph":
        left = tuple(sorted(set(left)))
        right = tuple(sorted(set(right)))
        adj: dict = {u: set() for u in left}
        for u, w in edges:
            if u not in adj:
                raise ValueError(f"edge from unknown left vertex {u!r}")
            adj[u].add(w)
        return cls(left, right, {u: tuple(sorted(ws)) for u, ws in adj.items()})

    def neighbors(self, u) -> tuple:
        return self.adjacency.get(u, ())

    def neighborhood(self, subset: Iterable) -> set:
        out: set = set()
        for u in subset:
            out.update(self.neighbors(u))
        return out

    @property
    def edges(self) -> list[tuple]:
        return [(u, w) for u in self.left for w in self.neighbors(u)]

    def to_dot(self, name: str = "G") -> str:
        lines = [f"graph {name} {{", "  rankdir=LR;"]
        for u in self.left:
            lines.append(f'  "L{u}" [label="{_label(u)}", shape=box];')
        for w in self.right:
            lines.append(f'  "R{w}" [label="{_label(w)}"];')
        for u, w in self.edges:
            lines.append(f'  "L{u}" -- "R{w}";')
        lines.append("}")
        return "\n".join(lines) + "\n"


@dataclass(frozen=True)
class Matching:
    pairs: dict  # left -> right
    left: tuple

    @property
    def complete(self) -> bool:
        return len(self.pairs) == len(self.left)

    def __len__(self) -> int:
        return len(self.pairs)

    def matched_right(self) -> set:
        return set(self.pairs.values())


@dataclass(frozen=True)
class HallWitness:
    """A left subset whose neighbourhood is strictly smaller than itself."""

    subset: frozenset
    neighborhood: frozenset
    matching: Matching

    @property
    def complete(self) -> bool:
        return False


def maximum_matching(G: BipartiteGraph) -> Matching:
    pair_left: dict = {}
    pair_right: dict = {}

    def augment(u, seen: set) -> bool:
        for w in G.neighbors(u):
            if w in seen:
                continue
            seen.add(w)
            if w not in pair_right or augment(pair_right[w], seen):
                pair_left[u] = w
                pair_right[w] = u
                return True
        return False

    for u in G.left:
        augment(u, set())
    return Matching({u: pair_left[u] for u in G.left if u in pair_left}, G.left)


def complete_matching(G: BipartiteGraph) -> Matching | HallWitness:
    """A matching covering every left vertex, or a Hall-condition violation.

    The witness is the set of left vertices reachable by alternating paths
    from an unmatched left vertex; its neighbourhood is fully matched back
    into the set, so it has exactly one fewer element.
    """
    M = maximum_matching(G)
    if M.complete:
        return M
    pair_right = {w: u for u, w in M.pairs.items()}
    root = next(u for u in G.left if u not in M.pairs)
    reach_left = {root}
    reach_right: set = set()
    queue = deque([root])
    while queue:
        u = queue.popleft()
        for w in G.neighbors(u):
            if w in reach_right:
                continue
            reach_right.add(w)
            partner = pair_right.get(w)
            if partner is not None and partner not in reach_left:
                reach_left.add(partner)
                queue.append(partner)
    return HallWitness(frozenset(reach_left), frozenset(reach_right), M)


def iter_complete_matchings(G: BipartiteGraph, limit: int | None = None):
    """Every matching covering the left side, in lexicographic order of choices."""
    count = 0
    pairs: dict = {}
    used: set = set()

    def go(k):
        nonlocal count
        if limit is not None and count >= limit:
            return
        if k == len(G.left):
            count += 1
            yield Matching(dict(pairs), G.left)
            return
        u = G.left[k]
        for w in G.neighbors(u):
            if w in used:
                continue
            used.add(w)
            pairs[u] = w
            yield from go(k + 1)
            del pairs[u]
            used.discard(w)

    yield from go(0)


# graphs derived from patterns

def default_right_rows(E: ErasurePattern, count: int | None = None) -> tuple[int, ...]:
    """The ``count`` (default ``a``) smallest rows carrying erasures."""
    count = E.topology.a if count is None else count
    return tuple(E.nonempty_rows()[:count])


def build_erasure_nonerasure_graph(E: ErasurePattern, right_rows: Sequence[int] | None = None) -> BipartiteGraph:
    """Erasure copies of rows U \\ U_R against surviving cells of rows U_R."""
    t = E.topology
    if right_rows is None:
        right_rows = default_right_rows(E)
    right_rows = tuple(sorted(set(int(r) for r in right_rows)))
    U = set(E.nonempty_rows())
    if len(right_rows) != t.a:
        raise BadPartition(f"need exactly a={t.a} right rows, got {list(right_rows)}")
    if not set(right_rows) <= U:
        raise BadPartition(f"right rows {list(right_rows)} are not all rows with erasures")
    profiles = {p.row: p for p in row_profiles(E)}
    left = [(i, c) for i in sorted(U - set(right_rows)) for c in range(1, profiles[i].excess + 1)]
    right = [(s, j) for s in right_rows for j in range(1, t.n + 1) if (s, j) not in E.erased]
    edges = [((i, c), (s, j)) for (i, c) in left for (s, j) in right if (i, j) in E.erased]
    return BipartiteGraph.from_edges(left, right, edges)


def build_rowcol_graph(E: ErasurePattern, ell: int) -> BipartiteGraph:
    """Rows U \\ {ell} against columns V \\ V_ell, joined by erased cells."""
    U = E.nonempty_rows()
    if ell not in U:
        raise BadRow(f"row {ell} carries no erasures")
    row_profiles(E)  # irreducibility guard
    V = set(enclosing_grid(E).cols)
    right = sorted(V - set(E.row_support(ell)))
    left = [i for i in U if i != ell]
    edges = [(i, j) for i in left for j in right if (i, j) in E.erased]
    return BipartiteGraph.from_edges(left, right, edges)


def neighborhood_check(G: BipartiteGraph, excess: dict[int, int], max_left: int = 20) -> bool:
    """True iff every left subset A has |N(A)| >= sum of excess over A."""
    if len(G.left) > max_left:
        raise TooManySubsets(f"{len(G.left)} left vertices exceeds the enumeration guard of {max_left}")
    for size in range(1, len(G.left) + 1):
        for A in combinations(G.left, size):
            if len(G.neighborhood(A)) < sum(excess[i] for i in A):
                return False
    return True


def matrix_pattern_graph(M) -> BipartiteGraph:
    """Rows against columns of a square symbolic matrix, one edge per nonzero entry."""
    if M.rows != M.cols:
        raise NotSquare(f"{M.rows}x{M.cols} matrix is not square")
    return support_graph(M)


def support_graph(M) -> BipartiteGraph:
    """Rows against columns of any symbolic matrix, one edge per nonzero entry."""
    edges = [(i, j) for i in range(M.rows) for j in range(M.cols) if M.entry(i, j) is not None]
    return BipartiteGraph.from_edges(range(M.rows), range(M.cols), edges)


def _label(v) -> str:
    if isinstance(v, tuple):
        return ",".join(str(x) for x in v)
    return str(v)
