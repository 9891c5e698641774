import numpy as np
import pytest

from navgraph import DirectedGraph, PointSet, build_permutations, euclidean_oracle

# 5-point reference example, zero-indexed (1-based label k -> id k-1)
FIG1_COORDS = [(4, -2), (6, -1), (2, 1), (0, 0), (1, -2)]
FIG1_EDGES = [(0, 1), (0, 3), (1, 0), (2, 0), (2, 3), (3, 2), (3, 4), (4, 0), (4, 3)]


@pytest.fixture
def fig1_points():
    return PointSet(np.array(FIG1_COORDS, dtype=float))


@pytest.fixture
def fig1_oracle(fig1_points):
    return euclidean_oracle(fig1_points)


@pytest.fixture
def fig1_graph():
    return DirectedGraph.from_edges(5, FIG1_EDGES)


@pytest.fixture
def fig1_perm(fig1_points, fig1_oracle):
    return build_permutations(fig1_points, fig1_oracle)
