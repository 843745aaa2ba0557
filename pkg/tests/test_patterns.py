import itertools
import random

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from prodmrc.errors import NotRegular, PatternFormatError, PreconditionFailed, ReplicationBound
from prodmrc.patterns import (
    ErasurePattern,
    Topology,
    check_extended_regular,
    enclosing_grid,
    extend_pattern,
    find_extension,
    format_pattern,
    is_col_irreducible,
    is_irreducible,
    is_regular,
    is_row_irreducible,
    masks_from_bits,
    parse_pattern,
    reduce_rowwise,
    regular_masks,
    regularity_bound,
    require_regular,
    row_profiles,
)


def subset_matrix(k):
    """All 2^k subsets of k items as 0/1 rows, empty set first."""
    return np.array([[(s >> i) & 1 for i in range(k)] for s in range(2**k)], dtype=np.int64)


def naive_regular(masks, a, b):
    """Evaluate the counting bound on every pair (U, V) independently."""
    m, n = masks.shape[1:]
    Us, Vs = subset_matrix(m), subset_matrix(n)
    u, v = Us.sum(1), Vs.sum(1)
    bound = u[:, None] * v[None, :] - np.maximum(u - a, 0)[:, None] * np.maximum(v - b, 0)[None, :]
    per_row = np.einsum("ui,pij->puj", Us, masks.astype(np.int64))
    counts = np.einsum("puj,vj->puv", per_row, Vs)
    return np.all(counts <= bound[None], axis=(1, 2))


def all_masks(m, n):
    return masks_from_bits(np.arange(2 ** (m * n), dtype=np.int64), m, n)


# topology and basic views

def test_topology_validation():
    assert Topology(6, 10, 1, 2).k == 40
    for bad in [(3, 3, 0, 1), (3, 3, 3, 1), (3, 3, 1, 3), (3, 3, 1, 0)]:
        with pytest.raises(ValueError):
            Topology(*bad)


def test_cell_index_row_major():
    t = Topology(3, 4, 1, 1)
    assert [t.cell_index(i, j) for i in (1, 2, 3) for j in (1, 2, 3, 4)] == list(range(12))


def test_bits_mask_roundtrip():
    t = Topology(3, 4, 1, 1)
    rng = random.Random(3)
    for _ in range(40):
        bits = rng.getrandbits(12)
        E = ErasurePattern.from_bits(t, bits)
        assert E.bits == bits
        assert ErasurePattern.from_mask(t, E.mask) == E
        assert masks_from_bits(np.array([bits]), 3, 4)[0].tolist() == E.mask.tolist()


def test_cells_outside_grid_rejected():
    with pytest.raises(ValueError):
        ErasurePattern(Topology(2, 2, 1, 1), frozenset({(3, 1)}))


# the 6x10 worked example

def test_fig1_structure(fig1):
    assert is_regular(fig1)
    assert is_row_irreducible(fig1)
    g = enclosing_grid(fig1)
    assert sorted(g.rows) == [1, 2, 3, 4, 5]
    assert sorted(g.cols) == list(range(3, 11))
    assert [p.excess for p in row_profiles(fig1)] == [2, 1, 1, 1, 1]


def test_fig1_file_matches_fixture(fig1, fig1_file_pattern):
    assert fig1_file_pattern == fig1


def test_row_profiles_require_irreducible():
    E = ErasurePattern.from_rows(Topology(3, 4, 1, 2), {1: [1, 2, 3], 2: [1]})
    with pytest.raises(Exception):
        row_profiles(E)


def test_empty_pattern_regular_and_reduced():
    E = ErasurePattern(Topology(3, 3, 1, 1))
    assert is_regular(E)
    assert reduce_rowwise(E).is_empty()


# regularity

def test_two_by_two_block_witness():
    E = ErasurePattern.from_rows(Topology(3, 3, 1, 1), {1: [1, 2], 2: [1, 2]})
    r = is_regular(E)
    assert not r
    assert sorted(r.witness.rows) == [1, 2] and sorted(r.witness.cols) == [1, 2]
    assert r.erased_in_witness == 4 and r.bound == 3
    with pytest.raises(NotRegular):
        require_regular(E)


def test_bound_formula():
    assert regularity_bound(1, 5, 1, 2) == 5
    assert regularity_bound(3, 4, 1, 2) == 12 - 2 * 2
    assert regularity_bound(2, 2, 2, 2) == 4


@pytest.mark.parametrize("a,b", [(1, 1), (1, 2), (2, 1), (2, 2)])
def test_vectorised_check_matches_naive_on_all_4x4(a, b):
    masks = all_masks(4, 4)
    assert np.array_equal(regular_masks(masks, a, b), naive_regular(masks, a, b))


@pytest.mark.parametrize("m,n,a,b", [(3, 4, 1, 1), (4, 3, 1, 2), (2, 5, 1, 3)])
def test_single_pattern_check_matches_naive(m, n, a, b):
    t = Topology(m, n, a, b)
    masks = all_masks(m, n)
    expected = naive_regular(masks, a, b)
    for bits in range(0, 2 ** (m * n), 7):
        assert bool(is_regular(ErasurePattern.from_bits(t, bits))) == bool(expected[bits])


def test_witness_is_a_real_violation():
    t = Topology(4, 5, 2, 1)
    rng = random.Random(11)
    seen = 0
    for _ in range(300):
        E = ErasurePattern.from_bits(t, rng.getrandbits(20))
        r = is_regular(E)
        if r:
            continue
        seen += 1
        W = r.witness
        inside = sum(1 for c in E.erased if c[0] in W.rows and c[1] in W.cols)
        assert inside == r.erased_in_witness > r.bound == regularity_bound(W.u, W.v, 2, 1)
    assert seen > 50


def test_golden_regular_counts():
    # derived by exhaustive evaluation; frozen as regression values
    assert int(regular_masks(all_masks(3, 3), 1, 1).sum()) == 328
    assert int(regular_masks(all_masks(4, 4), 1, 1).sum()) == 16145


def test_transpose_symmetry():
    masks = all_masks(3, 4)
    direct = regular_masks(masks, 1, 2)
    flipped = regular_masks(np.ascontiguousarray(masks.transpose(0, 2, 1)), 2, 1)
    assert np.array_equal(direct, flipped)


# irreducibility and reduction

def test_reduce_rowwise_clears_light_rows():
    t = Topology(4, 5, 1, 2)
    E = ErasurePattern.from_rows(t, {1: [1, 2, 3], 2: [4, 5], 3: [1], 4: [2, 3, 4, 5]})
    R = reduce_rowwise(E)
    assert R.nonempty_rows() == [1, 4]
    assert is_row_irreducible(R)
    assert reduce_rowwise(R) == R


def test_column_irreducibility():
    t = Topology(3, 3, 1, 1)
    assert is_col_irreducible(ErasurePattern.from_rows(t, {1: [1], 2: [1]}))
    assert not is_col_irreducible(ErasurePattern.from_rows(t, {1: [1, 2], 2: [1]}))
    E = ErasurePattern.from_rows(t, {1: [1, 2], 2: [1, 2]})
    assert is_irreducible(E)


def test_reduction_preserves_regularity_for_a1():
    t = Topology(3, 4, 1, 1)
    for bits in range(2**12):
        E = ErasurePattern.from_bits(t, bits)
        assert bool(is_regular(E)) == bool(is_regular(reduce_rowwise(E)))


# extensions

def test_extend_pattern_layout():
    base = ErasurePattern.from_rows(Topology(3, 4, 1, 1), {1: [1, 2], 2: [2, 3]})
    X = extend_pattern(base, [1])
    assert X.result.topology == Topology(4, 4, 2, 1)
    assert X.result.row_support(4) == (1, 2)
    assert check_extended_regular(X)
    assert find_extension(X.result).result == X.result


def test_extend_pattern_guards():
    base = ErasurePattern.from_rows(Topology(3, 4, 1, 1), {1: [1, 2], 2: [2, 3]})
    with pytest.raises(ReplicationBound):
        extend_pattern(base, [1, 1])
    with pytest.raises(PreconditionFailed):
        extend_pattern(base, [4])
    reducible = ErasurePattern.from_rows(Topology(3, 4, 1, 1), {1: [1]})
    with pytest.raises(PreconditionFailed):
        extend_pattern(reducible, [1])


def test_every_extension_of_3x3_bases_is_regular():
    t = Topology(3, 3, 1, 1)
    checked = 0
    for bits in range(2**9):
        E = ErasurePattern.from_bits(t, bits)
        if not (is_row_irreducible(E) and is_regular(E)):
            continue
        for k in range(1, 4):
            for src in itertools.combinations(range(1, 4), k):
                assert check_extended_regular(extend_pattern(E, src))
                checked += 1
    assert checked > 100


# text format

FIG1_TEXT = """6 10 1 2
......xxxx
.....xxx..
..x.....xx
...xxx....
..xxx.....
..........
"""


def test_format_and_parse(fig1):
    assert format_pattern(fig1) == FIG1_TEXT
    assert parse_pattern(FIG1_TEXT) == fig1


@pytest.mark.parametrize("text,line,col", [
    ("3 3 1\n...\n...\n...\n", 1, None),
    ("3 3 1 1\n...\n.y.\n...\n", 3, 2),
    ("3 3 1 1\n...\n....\n...\n", 3, 4),
    ("3 3 1 1\n...\n..\n...\n", 3, 3),
    ("3 3 1 1\n...\n...\n", None, None),
    ("3 3 3 1\n...\n...\n...\n", 1, None),
    ("", 1, None),
])
def test_parse_errors_carry_position(text, line, col):
    with pytest.raises(PatternFormatError) as exc:
        parse_pattern(text)
    if line is not None:
        assert exc.value.line == line
    if col is not None:
        assert exc.value.column == col


@settings(max_examples=80, deadline=None)
@given(st.integers(2, 5), st.integers(2, 6), st.data())
def test_text_roundtrip(m, n, data):
    a = data.draw(st.integers(1, m - 1))
    b = data.draw(st.integers(1, n - 1))
    bits = data.draw(st.integers(0, 2 ** (m * n) - 1))
    E = ErasurePattern.from_bits(Topology(m, n, a, b), bits)
    text = format_pattern(E)
    assert parse_pattern(text) == E
    assert format_pattern(parse_pattern(text)) == text
