import io
import sys
from importlib import resources

import numpy as np
import pytest

from metanet.graph import Graph, Partition, load_edge_list, load_labels


def pytest_terminal_summary(terminalreporter):
    mod = sys.modules.get("tests.test_acceptance")
    lines = getattr(mod, "REPORT_LINES", None) if mod else None
    if lines:
        terminalreporter.section("acceptance criteria")
        for line in lines:
            terminalreporter.write_line(line)


@pytest.fixture(scope="session")
def karate():
    data = resources.files("metanet.data")
    with open(str(data / "karate.edges"), encoding="utf-8") as fh:
        graph = load_edge_list(fh)
    with open(str(data / "karate_factions.labels"), encoding="utf-8") as fh:
        factions = load_labels(fh, graph)
    return graph, factions


@pytest.fixture
def path_graph():
    """a-b-c path."""
    return load_edge_list(io.StringIO("a b\nb c"))


@pytest.fixture
def triangle():
    return load_edge_list(io.StringIO("a b\nb c\na c"))


@pytest.fixture
def two_triangles():
    """Two disjoint triangles on nodes a..f."""
    return load_edge_list(io.StringIO("a b\nb c\na c\nd e\ne f\nd f"))
