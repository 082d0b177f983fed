"""
Shared fixtures: the two worked graphs, their partitions and small standard graphs
"""

import os
from pathlib import Path

import pytest

# keep test runs independent of a developer's .env / Redis
os.environ.setdefault("RAAG_CACHE_ENABLED", "false")

from defining_graph import complete_graph, edgeless_graph, load_graph  # noqa: E402
from invariant_checks import PATH_POINT_P1, PATH_POINT_P2, PATH_POINT_P3  # noqa: E402
from whitehead_partitions import parse_partition  # noqa: E402

DATA_DIR = Path(__file__).parent / "data"


# ============================================================================
# FILES
# ============================================================================

@pytest.fixture
def data_dir():
    return DATA_DIR


# ============================================================================
# GRAPHS
# ============================================================================

@pytest.fixture
def leafy_triangle_graph():
    """Triangle q-r-v with leaves p and s"""
    return load_graph((DATA_DIR / "leafy_triangle.graph").read_text(encoding="utf-8"))


@pytest.fixture
def path_point_graph():
    """Path a-b-c-d plus isolated e"""
    return load_graph((DATA_DIR / "path_point.graph").read_text(encoding="utf-8"))


@pytest.fixture
def e3():
    return edgeless_graph(3)


@pytest.fixture
def k3():
    return complete_graph(3)


# ============================================================================
# PARTITIONS OF THE PATH-PLUS-POINT GRAPH
# ============================================================================

@pytest.fixture
def p1(path_point_graph):
    return parse_partition(path_point_graph, PATH_POINT_P1)


@pytest.fixture
def p2(path_point_graph):
    return parse_partition(path_point_graph, PATH_POINT_P2)


@pytest.fixture
def p3(path_point_graph):
    return parse_partition(path_point_graph, PATH_POINT_P3)
