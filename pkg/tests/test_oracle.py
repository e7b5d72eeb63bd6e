import random

import networkx as nx
import pytest
from hypothesis import given, settings, strategies as st

from degree_game.builder_strategy import BuilderStrategy
from degree_game.graph_core import GameGraph, has_witness
from degree_game.oracle import (
    AVOID_HAMILTONIAN, AVOID_TWO_CONNECTED, FORCE_HAMILTONIAN, OBJECTIVES, TooLarge, brute_force_value,
    canonical_form, exhaust_adversary, hamilton_cycle, hamiltonian_completion_exists, is_two_connected,
    objective_met, solve,
)
from degree_game.strategy_base import BUILDER
from tests.conftest import DIAMOND, K4


def from_networkx(G, k=3):
    return GameGraph.from_edges(G.number_of_nodes(), k, G.edges())


def test_hamilton_cycle(graph):
    cycle = hamilton_cycle(graph(4, K4))
    assert sorted(cycle) == [0, 1, 2, 3]
    assert hamilton_cycle(graph(4, [(0, 1), (1, 2), (2, 3)])) is None
    assert hamilton_cycle(graph(2, [(0, 1)])) is None


def test_petersen_graph():
    g = from_networkx(nx.petersen_graph())
    assert hamilton_cycle(g) is None
    assert is_two_connected(g)
    assert objective_met(g, AVOID_HAMILTONIAN)
    assert not objective_met(g, AVOID_TWO_CONNECTED)


def test_two_connected(graph):
    assert is_two_connected(graph(3, [(0, 1), (1, 2), (0, 2)]))
    assert not is_two_connected(graph(3, [(0, 1), (1, 2)]))
    assert not is_two_connected(graph(2, [(0, 1)]))


def test_completion(graph):
    assert hamiltonian_completion_exists(graph(4))
    assert not hamiltonian_completion_exists(graph(5, K4))
    assert not hamiltonian_completion_exists(graph(6, DIAMOND + [(0, 4), (1, 4)]))
    assert hamiltonian_completion_exists(graph(6, DIAMOND + [(0, 4)]))


def test_small_games():
    assert solve(GameGraph.empty(3, 3)).mover_wins
    assert not solve(GameGraph.empty(2, 3)).mover_wins


@pytest.mark.parametrize("to_move", [1, 2])
def test_triangle_board_either_order(to_move):
    g = GameGraph.empty(3, 3)
    builder = solve(g, 1, FORCE_HAMILTONIAN, to_move=to_move)
    assert builder.side_wins
    assert builder.mover_wins == (to_move == 1)
    for objective in (AVOID_HAMILTONIAN, AVOID_TWO_CONNECTED):
        result = solve(g, 2, objective, to_move=to_move)
        assert not result.side_wins
        assert result.mover_wins == (to_move == 1)


def test_side_to_move_follows_edge_parity(graph):
    g = graph(3, [(0, 1)])
    result = solve(g, 1, FORCE_HAMILTONIAN)
    assert result.to_move == 2
    assert result.side_wins
    assert not result.mover_wins
    assert result.to_dict(g)["to_move"] == 2


def test_solve_rejects_unknown_players():
    with pytest.raises(ValueError):
        solve(GameGraph.empty(3, 3), 3)


@pytest.mark.parametrize("k", [3, 4])
@pytest.mark.parametrize("n", [1, 2, 3, 4])
@pytest.mark.parametrize("objective", OBJECTIVES)
def test_solver_matches_brute_force_opponent_first(k, n, objective):
    g = GameGraph.empty(n, k)
    assert solve(g, 1, objective, to_move=2).side_wins == brute_force_value(g, objective, False)


def test_solver_rejects_large_boards():
    with pytest.raises(TooLarge):
        solve(GameGraph.empty(9, 3))


@pytest.mark.parametrize("k", [3, 4])
@pytest.mark.parametrize("n", [1, 2, 3, 4])
@pytest.mark.parametrize("objective", OBJECTIVES)
def test_solver_matches_brute_force(k, n, objective):
    g = GameGraph.empty(n, k)
    assert solve(g, 1, objective).mover_wins == brute_force_value(g, objective)


@pytest.mark.slow
@pytest.mark.parametrize("k", [3, 4])
@pytest.mark.parametrize("objective", OBJECTIVES)
def test_solver_matches_brute_force_n5(k, objective):
    g = GameGraph.empty(5, k)
    assert solve(g, 1, objective).mover_wins == brute_force_value(g, objective)


def test_principal_move_is_legal():
    g = GameGraph.empty(4, 3)
    result = solve(g, 1, FORCE_HAMILTONIAN)
    assert g.is_legal(*result.principal_move)
    assert result.to_dict(g)["k"] == 3


def random_graph(rng, n, k=3):
    g = GameGraph.empty(n, k)
    for _ in range(rng.randint(0, 3 * n // 2)):
        moves = g.legal_moves()
        if not moves:
            break
        g = g.add_edge(rng.choice(moves))
    return g


@settings(max_examples=80, deadline=None)
@given(st.integers(min_value=1, max_value=8), st.integers(min_value=0, max_value=10 ** 6))
def test_canonical_form_ignores_labels(n, seed):
    rng = random.Random(seed)
    g = random_graph(rng, n)
    perm = list(range(n))
    rng.shuffle(perm)
    assert canonical_form(g).key == canonical_form(g.relabel(perm)).key


@settings(max_examples=80, deadline=None)
@given(st.integers(min_value=1, max_value=7), st.integers(min_value=0, max_value=10 ** 6))
def test_canonical_form_separates_non_isomorphic_graphs(n, seed):
    rng = random.Random(seed)
    g, h = random_graph(rng, n), random_graph(rng, n)
    same = canonical_form(g).key == canonical_form(h).key
    G, H = nx.Graph(), nx.Graph()
    for X, src in ((G, g), (H, h)):
        X.add_nodes_from(range(n))
        X.add_edges_from(src.edges())
    assert same == nx.is_isomorphic(G, H)


def test_canonical_form_bound():
    with pytest.raises(TooLarge):
        canonical_form(GameGraph.empty(9, 3))


@settings(max_examples=120, deadline=None)
@given(st.integers(min_value=3, max_value=8), st.integers(min_value=0, max_value=10 ** 6))
def test_witness_rules_out_hamiltonian_completion(n, seed):
    g = random_graph(random.Random(seed), n)
    if has_witness(g):
        assert not hamiltonian_completion_exists(g)


@pytest.mark.parametrize("n", [4, 5])
@pytest.mark.parametrize("first", [True, False])
def test_builder_wins_every_line(n, first):
    report = exhaust_adversary(BuilderStrategy(), BUILDER, GameGraph.empty(n, 4), first)
    assert report.universal, report.summary()
    assert report.lines > 0


@pytest.mark.slow
@pytest.mark.parametrize("first", [True, False])
@pytest.mark.parametrize("prune", ['iso', 'exact'])
def test_builder_wins_every_line_n6(first, prune):
    report = exhaust_adversary(BuilderStrategy(), BUILDER, GameGraph.empty(6, 4), first, prune=prune)
    assert report.universal, report.summary()


def test_exhaust_truncates():
    report = exhaust_adversary(BuilderStrategy(), BUILDER, GameGraph.empty(5, 4), True, max_nodes=3)
    assert report.truncated
    assert not report.universal
