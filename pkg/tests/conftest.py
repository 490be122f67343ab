from pathlib import Path

import pytest
from hypothesis import strategies as st

from ivprolog import Interval, parse_program

PROGRAMS = Path(__file__).resolve().parent.parent / "demos" / "programs"

GOOD_PLAYER = """
good_player(X) :- tall(X), fast(X), coordinate(X).
coordinate(a)[0.2,0.4].
fast(a)[0.9,1.0].
tall(a)[0.8,0.9].
"""

CHAIN = """
p(X) :- q(X).
q(a)[0.8,0.9].
q(b)[0.7,0.8].
"""

SUITABLE_JOURNAL = """
suitable_journal(X) :- impact_factor(X)[0.8,0.9], immediacy_index(X)[0.4,0.6],
                       cited_half_life(X)[0.6,0.7], best_position(X)[0.4,0.6].
impact_factor(ieee_fs)[0.8,0.9].
immediacy_index(ieee_fs)[0.3,0.5].
cited_half_life(ieee_fs)[0.3,0.5].
best_position(ieee_fs)[1,1].
"""

PREFERENCES = """
loves~passion=[0.25,0.8].
basketball~hoops=[1,1].
loves(mary,mountaineering).
likes(john,football).
plays(peter,basketball).
healthy(X) :- practices(X,sport).
"""


def bounds():
    return st.floats(min_value=0.0, max_value=1.0, allow_nan=False)


@st.composite
def intervals(draw):
    a, b = draw(bounds()), draw(bounds())
    return Interval(min(a, b), max(a, b))


@st.composite
def grid_intervals(draw, grid=20):
    a, b = draw(st.integers(0, grid)), draw(st.integers(0, grid))
    return Interval(min(a, b) / grid, max(a, b) / grid)


@pytest.fixture
def good_player():
    return parse_program(GOOD_PLAYER)


@pytest.fixture
def chain():
    return parse_program(CHAIN)


@pytest.fixture
def suitable_journal():
    return parse_program(SUITABLE_JOURNAL)


@pytest.fixture
def preferences():
    return parse_program(PREFERENCES)


def pytest_terminal_summary(terminalreporter):
    import sys
    module = sys.modules.get("test_acceptance")
    results = getattr(module, "RESULTS", None)
    if results:
        terminalreporter.section("acceptance criteria")
        for line in sorted(results, key=lambda l: int(l.split("criterion ")[1].split(":")[0])):
            terminalreporter.write_line(line)
