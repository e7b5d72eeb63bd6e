import pytest

from degree_game.classify import (
    IMPOSSIBLE_1, IMPOSSIBLE_2, IMPOSSIBLE_3, OTHER, ROW_A, ROW_B, ROW_C, ROW_D, ROW_E, ROW_F, SMALL,
    THREE_REGULAR, TYPE_B, TYPE_H, TYPE_X, TYPE_Y, WITNESS_ALREADY, NotAComponent,
    classify_avoider_state, classify_component, classify_graph_type_a, component_labels,
    deficient_vertices, effective_freedom,
)
from degree_game.graph_core import component_view, has_witness
from tests.conftest import DIAMOND, K4, TYPE_H_EDGES, shift

TYPE_X_EDGES = [e for e in TYPE_H_EDGES if e != (4, 5)]
TYPE_Y_EDGES = TYPE_H_EDGES + [(4, 6)]
TYPE_B_EDGES = [(0, 1), (0, 2), (1, 3), (2, 3), (1, 4), (4, 5), (2, 5), (0, 6), (3, 6)]
# K4 with 0-1 subdivided by 4
SUBDIVIDED_K4 = [(0, 4), (4, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]


def label_of(g, v):
    return classify_component(g, g.component_of(v))


def state_of(g, root=0):
    return classify_avoider_state(component_view(g, root), g)


@pytest.mark.parametrize("n,edges,label,evidence", [
    (6, TYPE_H_EDGES, TYPE_H, (4, 5)),
    (6, TYPE_X_EDGES, TYPE_X, (4, 5)),
    (7, TYPE_Y_EDGES, TYPE_Y, (6, 5)),
    (7, TYPE_B_EDGES, TYPE_B, (4, 5, 6)),
    (4, K4, THREE_REGULAR, ()),
])
def test_component_shapes(graph, n, edges, label, evidence):
    result = label_of(graph(n, edges), 0)
    assert result.label == label
    assert result.evidence == evidence


def test_pairs_and_single_edges(graph):
    g = graph(6, DIAMOND + [(4, 5)])
    assert label_of(g, 0).subtag == 'pair'
    assert label_of(g, 4).subtag == 'edge'
    assert component_labels(g) == [OTHER, OTHER]


def test_not_a_component(graph):
    with pytest.raises(NotAComponent):
        classify_component(graph(4, [(0, 1), (1, 2)]), [0, 1])


def test_deficient_vertices(graph):
    assert deficient_vertices(graph(7, TYPE_Y_EDGES), range(7)) == ([6], [5])


@pytest.mark.parametrize("edges,expected", [
    (DIAMOND + [(4, 5)], {"edge": (4, 5), "pairs": [(0, 1)]}),
    (DIAMOND + shift(DIAMOND, 4) + [(8, 9)], {"edge": (8, 9), "pairs": [(0, 1), (4, 5)]}),
    ([(0, 1), (2, 3)], None),
    (DIAMOND, None),
    (TYPE_H_EDGES + [(6, 7)], None),
])
def test_type_a_graphs(graph, edges, expected):
    is_a, parts = classify_graph_type_a(graph(10, edges))
    assert is_a == (expected is not None)
    assert parts == expected


def test_effective_freedom(graph):
    g = graph(10, DIAMOND + [(4, 5)])
    assert effective_freedom(g, component_view(g, 4).d_components) == 0
    assert effective_freedom(g, component_view(g, 0).d_components) == 2


def test_small_component(graph):
    assert state_of(graph(6, [(0, 1), (1, 2)])).row == SMALL


def test_row_a_on_a_path(graph):
    state = state_of(graph(6, [(0, 1), (1, 2), (2, 3)]))
    assert state.row == ROW_A
    assert state.bindings == {'a': 0, 'b': 3}


def test_row_b(graph):
    state = state_of(graph(8, DIAMOND + [(0, 4), (4, 5)]))
    assert state.row == ROW_B
    assert state.bindings == {'w': 5, 'u': 4, 'v': 1}


def test_row_c(graph):
    state = state_of(graph(8, TYPE_Y_EDGES))
    assert state.row == ROW_C
    assert state.bindings == {'u': 6}


def test_row_d(graph):
    state = state_of(graph(8, DIAMOND))
    assert state.row == ROW_D
    assert state.bindings == {'u': 0, 'v': 1}
    state = state_of(graph(8, [(0, 1), (1, 2), (2, 3), (3, 0)]))
    assert state.row == ROW_D
    assert state.bindings == {}


def test_row_e_and_f(graph):
    state = state_of(graph(12, TYPE_H_EDGES + [(6, 7)]))
    assert state.row == ROW_E
    assert state.bindings == {'u': 4, 'v': 5}
    state = state_of(graph(12, TYPE_H_EDGES + shift(DIAMOND, 6)))
    assert state.row == ROW_F
    assert state.bindings == {'u': 4, 'v': 5}


def test_impossible_rows(graph):
    assert state_of(graph(6, K4)).row == IMPOSSIBLE_1

    g = graph(6, SUBDIVIDED_K4)
    state = state_of(g)
    assert state.row == IMPOSSIBLE_2
    assert state.bindings == {'x': 4}
    assert has_witness(g).vertex == 4

    # K4 with 0-1 subdivided by 6, then 6-4 and the pendant 4-5
    edges = [(0, 6), (6, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3), (6, 4), (4, 5)]
    state = state_of(graph(8, edges))
    assert state.row == IMPOSSIBLE_3
    assert state.bindings == {'w': 5, 'x': 4}


def test_witness_already(graph):
    g = graph(8, DIAMOND + [(0, 4), (1, 4), (4, 5), (5, 6), (5, 7)])
    state = state_of(g)
    assert state.row == WITNESS_ALREADY
    assert state.bindings == {'x': 4}
