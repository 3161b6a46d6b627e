"""
Shared fixtures for the root-level tests
"""

import pytest

from bei.config import Config
from bei.graphs.families import ChainSpec, Join
from bei.graphs.graph_core import Graph, complete_graph, cycle_graph, path_graph


def pytest_addoption(parser):
    parser.addoption("--runslow", action="store_true", default=False, help="run the slower checks")
    parser.addoption(
        "--runrelease", action="store_true", default=False, help="run the verify --full scale checks (tens of minutes)"
    )


def pytest_configure(config):
    config.addinivalue_line("markers", "slow: slower check, needs --runslow")
    config.addinivalue_line("markers", "release: verify --full scale run, needs --runrelease")


def pytest_collection_modifyitems(config, items):
    gates = {"slow": "--runslow", "release": "--runrelease"}
    for marker, option in gates.items():
        if config.getoption(option):
            continue
        skip = pytest.mark.skip(reason=f"needs {option}")
        for item in items:
            if marker in item.keywords:
                item.add_marker(skip)


@pytest.fixture
def config():
    return Config(threads=1)


@pytest.fixture
def p3():
    return path_graph(3)


@pytest.fixture
def c4():
    return cycle_graph(4)


@pytest.fixture
def k3():
    return complete_graph(3)


@pytest.fixture
def paw():
    return Graph.from_edges(4, [(1, 2), (1, 3), (2, 3), (3, 4)])


@pytest.fixture
def diamond():
    return Graph.from_edges(4, [(1, 2), (1, 3), (2, 3), (2, 4), (3, 4)])


@pytest.fixture
def seven_segment_chain():
    """K4, C4, then four triangles and a closing C4; whiskers on the cut positions."""
    none, w, u = Join(), Join(w_merge=True), Join(u_merge=True)
    return ChainSpec(
        segments=("K4", "C4", "C3", "C3", "C3", "C3", "C4"),
        joins=(none, none, w, w, u, w),
        whiskers=(3, 5, 9, 11),
    )
