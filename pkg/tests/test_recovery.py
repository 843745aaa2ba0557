import random

import numpy as np
import pytest

from prodmrc import gfield
from prodmrc.codegen import sample_code, sample_universal_mrc
from prodmrc.errors import DegenerateCode, NotACodeword, NotRecoverable, ShapeError
from prodmrc.gfield import Field
from prodmrc.patterns import ErasurePattern, Topology
from prodmrc.recovery import (
    Codeword,
    ReceivedWord,
    decode,
    encode,
    erase,
    is_recoverable_by,
    parity_checks,
    satisfies_parities,
)


@pytest.fixture
def fig1_code(fig1, big_field):
    return sample_code(fig1, big_field, seed=0)


def random_message(k, q, seed):
    rng = random.Random(seed)
    return [rng.randrange(q) for _ in range(k)]


def test_encode_places_cells_row_major(big_field):
    t = Topology(2, 3, 1, 1)
    G = big_field.identity(6)
    # not a valid generator for the topology but fine for layout
    c = encode(G, [1, 2, 3, 4, 5, 6], t)
    assert c.values.tolist() == [[1, 2, 3], [4, 5, 6]]


def test_fig1_roundtrip(fig1, fig1_code):
    q = fig1_code.field.q
    c = encode(fig1_code.G, random_message(40, q, 1), fig1.topology)
    r = erase(c, fig1)
    assert all(r.values[i - 1, j - 1] == 0 for i, j in fig1.erased)
    assert decode(fig1_code.G, r) == c


def test_codewords_satisfy_local_parities(fig1, fig1_code):
    H_row, H_col = parity_checks(fig1_code.grow, fig1_code.gcol)
    assert H_row.shape == (2, 10) and H_col.shape == (1, 6)
    c = encode(fig1_code.G, random_message(40, fig1_code.field.q, 2), fig1.topology)
    assert satisfies_parities(c, H_row, H_col)
    bumped = c.values.copy()
    bumped[0, 0] = (int(bumped[0, 0]) + 1) % fig1_code.field.q
    assert not satisfies_parities(Codeword(c.topology, bumped), H_row, H_col)


def test_nothing_erased_returns_input(fig1, fig1_code):
    c = encode(fig1_code.G, random_message(40, fig1_code.field.q, 3), fig1.topology)
    empty = ErasurePattern(fig1.topology)
    assert decode(fig1_code.G, erase(c, empty)) == c


def test_everything_erased_is_not_recoverable(fig1, fig1_code):
    t = fig1.topology
    everything = ErasurePattern(t, frozenset((i, j) for i in range(1, 7) for j in range(1, 11)))
    c = encode(fig1_code.G, random_message(40, fig1_code.field.q, 4), t)
    with pytest.raises(NotRecoverable):
        decode(fig1_code.G, erase(c, everything))
    assert not is_recoverable_by(fig1_code.G, everything)


def test_inconsistent_word_reports_cell(fig1, fig1_code):
    c = encode(fig1_code.G, random_message(40, fig1_code.field.q, 5), fig1.topology)
    r = erase(c, fig1)
    vals = r.values.copy()
    vals[5, 0] = (int(vals[5, 0]) + 1) % fig1_code.field.q
    with pytest.raises(NotACodeword) as exc:
        decode(fig1_code.G, ReceivedWord(r.topology, vals, fig1))
    i, j = exc.value.cell
    assert (i, j) not in fig1.erased


def test_recoverability_report(fig1, fig1_code):
    rep = is_recoverable_by(fig1_code.G, fig1, "fig1")
    assert rep.recoverable and rep.punctured_rank == 40 and rep.k == 40


def test_shape_errors(fig1, big_field):
    with pytest.raises(ShapeError):
        is_recoverable_by(big_field.identity(60), fig1)
    with pytest.raises(ShapeError):
        encode(big_field.identity(5), [1] * 5, fig1.topology)
    with pytest.raises(ShapeError):
        Codeword(fig1.topology, np.zeros((2, 2), dtype=np.int64))


def test_degenerate_local_code(big_field):
    with pytest.raises(DegenerateCode):
        parity_checks(big_field.matrix([[1, 1], [2, 2]]), big_field.matrix([[1, 0, 1]]))
    with pytest.raises(DegenerateCode):
        parity_checks(big_field.identity(3), big_field.matrix([[1, 0, 1]]))


def test_universal_code_on_large_field_backing():
    F = Field((1 << 61) - 1)
    t = Topology(3, 4, 1, 1)
    U = sample_universal_mrc(t, F, seed=1)
    E = ErasurePattern.from_rows(t, {1: [1, 2], 2: [2, 3]})
    c = encode(U.G, random_message(t.k, F.q, 6), t)
    assert decode(U.G, erase(c, E)) == c
    assert gfield.rank(U.G) == t.k


@pytest.mark.parametrize("seed", range(8))
def test_random_regular_patterns_roundtrip(seed, big_field):
    from prodmrc.patterns import is_regular

    rng = random.Random(seed)
    t = Topology(4, 5, 1, 2)
    while True:
        E = ErasurePattern.from_bits(t, rng.getrandbits(20) & rng.getrandbits(20))
        if is_regular(E):
            break
    code = sample_code(E, big_field, seed=seed)
    c = encode(code.G, random_message(t.k, big_field.q, seed), t)
    assert decode(code.G, erase(c, E)) == c
