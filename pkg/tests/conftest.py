from __future__ import annotations

import pytest

from ribbonpoly.fileformat import parse
from ribbonpoly.packaged import PackagedRibbonGraph
from ribbonpoly.ribbon import RibbonGraph

# one line per acceptance criterion, echoed after the test summary
ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)


THETA_EXAMPLE_RG = """\
edges: e+ f+ g+
vertex v1: e.1 f.1 e.2 g.1
vertex v2: f.2 g.2
"""


def rg(rotation: dict, sign: dict) -> RibbonGraph:
    """Shorthand builder: vertex order is the dict order."""
    return RibbonGraph.build(list(rotation), rotation, sign)


@pytest.fixture
def theta() -> PackagedRibbonGraph:
    """The interlaced theta graph with the discrete weight-0 packaging."""
    return parse(THETA_EXAMPLE_RG)


@pytest.fixture
def disc() -> RibbonGraph:
    return rg({"v1": []}, {})


@pytest.fixture
def path() -> RibbonGraph:
    return rg({"v1": [("e", 1)], "v2": [("e", 2)]}, {"e": 1})


@pytest.fixture
def annulus() -> RibbonGraph:
    return rg({"v1": [("e", 1), ("e", 2)]}, {"e": 1})


@pytest.fixture
def mobius() -> RibbonGraph:
    return rg({"v1": [("e", 1), ("e", 2)]}, {"e": -1})


@pytest.fixture
def handle() -> RibbonGraph:
    """Two interlaced untwisted loops on one vertex (torus neighbourhood)."""
    return rg({"v1": [("e", 1), ("f", 1), ("e", 2), ("f", 2)]},
              {"e": 1, "f": 1})
