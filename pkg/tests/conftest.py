import sys
from pathlib import Path

import pytest

from prodmrc.gfield import DEFAULT_Q, Field
from prodmrc.patterns import ErasurePattern, Topology, parse_pattern

DATA = Path(__file__).parent / "data"

FIG1_ROWS = {
    1: [7, 8, 9, 10],
    2: [6, 7, 8],
    3: [3, 9, 10],
    4: [4, 5, 6],
    5: [3, 4, 5],
}


@pytest.fixture
def data_dir():
    return DATA


@pytest.fixture
def fig1():
    return ErasurePattern.from_rows(Topology(6, 10, 1, 2), FIG1_ROWS)


@pytest.fixture
def fig1_file_pattern():
    return parse_pattern((DATA / "fig1.pat").read_text())


@pytest.fixture
def big_field():
    return Field(DEFAULT_Q)


@pytest.fixture(params=[7, 251, 65521, DEFAULT_Q, (1 << 61) - 1])
def any_field(request):
    return Field(request.param)



def pytest_terminal_summary(terminalreporter):
    mod = next((m for name, m in sys.modules.items() if name.endswith("test_acceptance")), None)
    results = getattr(mod, "RESULTS", None)
    if results:
        terminalreporter.section("acceptance criteria")
        for n in sorted(results):
            terminalreporter.write_line(results[n])
