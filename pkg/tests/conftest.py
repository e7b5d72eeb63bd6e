import os
import sys

import pytest

sys.path.insert(0, os.path.dirname(os.path.dirname(os.path.abspath(__file__))))

from degree_game.graph_core import GameGraph

K4 = [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]
# K4 with 1-2 subdivided into 1-4-5-2: the degree-2 vertices 4~5 are adjacent
TYPE_H_EDGES = [(0, 1), (0, 2), (0, 3), (1, 3), (2, 3), (1, 4), (4, 5), (2, 5)]
# K4 minus the edge 0-1
DIAMOND = [(0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]


def shift(edges, by):
    return [(u + by, v + by) for u, v in edges]


@pytest.fixture
def graph():
    """ graph(n, edges, k=3) """
    def build(n, edges=(), k=3):
        return GameGraph.from_edges(n, k, edges)
    return build


@pytest.fixture
def type_h(graph):
    return graph(10, TYPE_H_EDGES)
