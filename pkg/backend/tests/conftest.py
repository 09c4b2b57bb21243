"""Shared fixtures for the kissing test suite"""

import os
import sys

import networkx as nx
import pytest

BACKEND_DIR = os.path.dirname(os.path.dirname(os.path.abspath(__file__)))
if BACKEND_DIR not in sys.path:
    sys.path.insert(0, BACKEND_DIR)

from config import reset_settings  # noqa: E402
from kissing.plane_graph import from_networkx, outerplanar_graph, platonic_graph  # noqa: E402


def pytest_addoption(parser):
    parser.addoption("--large", action="store_true", default=False,
                     help="run icosahedral and dodecahedral checks")


def pytest_collection_modifyitems(config, items):
    if config.getoption("--large"):
        return
    skip = pytest.mark.skip(reason="needs --large")
    for item in items:
        if "large" in item.keywords:
            item.add_marker(skip)


@pytest.fixture(autouse=True)
def fresh_settings(monkeypatch):
    for name in list(os.environ):
        if name.startswith("KISSING_"):
            monkeypatch.delenv(name, raising=False)
    reset_settings()
    yield
    reset_settings()


# ============================================================================
# GRAPHS
# ============================================================================

@pytest.fixture
def k4():
    return platonic_graph("tetrahedron")


@pytest.fixture
def square_02():
    """4-cycle with chord {0,2}"""
    return outerplanar_graph(3, [(0, 2)])


@pytest.fixture
def square_13():
    return outerplanar_graph(3, [(1, 3)])


@pytest.fixture
def bowtie():
    """Two triangles sharing vertex 2"""
    graph = nx.Graph([(0, 1), (1, 2), (0, 2), (2, 3), (3, 4), (2, 4)])
    return from_networkx(graph)


@pytest.fixture
def triangle():
    return outerplanar_graph(2, [])


@pytest.fixture(scope="session")
def planar_atlas():
    """Connected planar graphs of the networkx atlas with 3 to 7 vertices, in atlas order"""
    return [
        graph for graph in nx.graph_atlas_g()
        if graph.number_of_nodes() >= 3
        and nx.is_connected(graph) and nx.check_planarity(graph)[0]
    ]
