import json

import pytest

from prodmrc.errors import PreconditionFailed, TooLarge
from prodmrc.oracle import (
    enumerate_patterns,
    explore_conjecture_a2,
    pattern_hex,
    verify_equivalence_a1,
    verify_extended_a2,
    verify_mds_consequences,
)
from prodmrc.patterns import Topology, is_regular


def test_enumeration_counts_and_filters():
    t = Topology(2, 3, 1, 1)
    assert sum(1 for _ in enumerate_patterns(t)) == 64
    regular = list(enumerate_patterns(t, "regular"))
    assert all(is_regular(E) for E in regular)
    assert sum(1 for _ in enumerate_patterns(t, lambda E: len(E) == 2)) == 15


def test_enumeration_guard():
    with pytest.raises(TooLarge):
        next(enumerate_patterns(Topology(5, 6, 1, 1)))


def test_pattern_hex_width():
    assert pattern_hex(5, Topology(3, 3, 1, 1)) == "005"


def test_equivalence_3x3():
    rep = verify_equivalence_a1(Topology(3, 3, 1, 1))
    assert rep.summary_line() == "512 patterns, 0 violations"
    assert rep.extra["regular"] == 328
    assert sum(r["regular"] for r in rep.records) == 328


def test_equivalence_sharded_matches_serial():
    t = Topology(2, 4, 1, 1)
    assert verify_equivalence_a1(t, jobs=2).to_jsonl() == verify_equivalence_a1(t).to_jsonl()


def test_equivalence_requires_a1():
    with pytest.raises(PreconditionFailed):
        verify_equivalence_a1(Topology(3, 3, 2, 1))


def test_extended_small():
    rep = verify_extended_a2(Topology(3, 3, 1, 1))
    assert rep.ok and len(rep.records) > 0


def test_extended_budget_is_deterministic():
    t = Topology(3, 4, 1, 1)
    a = verify_extended_a2(t, seed=4, budget=10)
    b = verify_extended_a2(t, seed=4, budget=10)
    assert a.to_jsonl() == b.to_jsonl()
    assert a.extra["base_patterns"] == 10


def test_conjecture_small_grid():
    rep = explore_conjecture_a2(Topology(3, 3, 2, 1))
    assert rep.ok
    assert rep.candidates == []
    assert rep.summary_line().endswith("0 candidates")


def test_mds_checks():
    rep = verify_mds_consequences(Topology(3, 4, 1, 1))
    assert rep.ok and len(rep.records) == 20


def test_jsonl_summary_last():
    rep = verify_equivalence_a1(Topology(2, 2, 1, 1))
    lines = rep.to_jsonl().strip().split("\n")
    assert len(lines) == 17
    assert json.loads(lines[-1])["summary"]["records"] == 16
