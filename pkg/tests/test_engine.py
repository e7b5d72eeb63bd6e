import random

import pytest

from degree_game.engine import (
    GREEDY_WEIGHTS, OPPONENT, STRATEGY, ConfigError, GameConfig, GreedyOpponent, IllegalMoveByOpponent,
    ScriptExhausted, SolverOpponent, run_game,
)
from degree_game.graph_core import GameGraph, MoveEdge
from degree_game.oracle import AVOID_TWO_CONNECTED, FORCE_HAMILTONIAN, brute_force_value
from degree_game.strategy_base import AVOIDER, BUILDER
from degree_game.trace_io import trace_lines
from tests.conftest import K4


def test_k4_game_is_complete():
    trace = run_game(GameConfig(4, 4, STRATEGY, BUILDER, 'random', 3))
    assert trace.terminal['edges'] == 6
    assert trace.terminal['hamiltonian']
    assert trace.moves[0].rule == 'path-open'


@pytest.mark.parametrize("n,edges", [(3, 3), (2, 1), (1, 0)])
def test_tiny_boards(n, edges):
    trace = run_game(GameConfig(n, 3, STRATEGY, None, 'random', 0))
    assert trace.terminal['edges'] == edges
    assert trace.terminal['hamiltonian'] == (n == 3)
    assert trace.terminal['objective_met'] is None


def test_games_are_deterministic():
    cfg = GameConfig(14, 3, OPPONENT, AVOIDER, 'greedy', 11)
    assert trace_lines(run_game(cfg)) == trace_lines(run_game(cfg))


def test_players_alternate():
    trace = run_game(GameConfig(10, 3, OPPONENT, AVOIDER, 'random', 5))
    assert [rec.player for rec in trace.moves[:4]] == [1, 2, 1, 2]
    assert trace.moves[0].rule == 'opponent'
    assert trace.strategy_player() == 2
    assert trace.root == trace.moves[0].edge.u


def test_scripted_opening():
    seen = []
    cfg = GameConfig(6, 3, STRATEGY, AVOIDER, 'scripted', script=[(2, 3)])
    with pytest.raises(ScriptExhausted):
        run_game(cfg, on_move=lambda rec, g: seen.append(rec))
    assert [tuple(rec.edge) for rec in seen] == [(0, 1), (2, 3), (0, 4)]
    assert [rec.rule for rec in seen] == ['avoid-open', 'opponent', 'avoid-small']
    assert seen[2].F_C == 5 and seen[2].E_D == 2


def test_illegal_opponent_move():
    with pytest.raises(IllegalMoveByOpponent):
        run_game(GameConfig(6, 3, OPPONENT, AVOIDER, 'scripted', script=[(0, 0)]))


@pytest.mark.parametrize("kwargs", [
    dict(n=6, k=3, role=BUILDER),
    dict(n=6, k=4, role=AVOIDER),
    dict(n=6, k=3, opponent='clever'),
    dict(n=6, k=3, first='both'),
    dict(n=-1, k=3),
])
def test_config_errors(kwargs):
    with pytest.raises(ConfigError):
        GameConfig(**kwargs).validate()


def test_initial_graph_must_match(graph):
    with pytest.raises(ConfigError):
        GameConfig(6, 3, initial_graph=graph(5)).validate()


def test_config_dict_round_trip(graph):
    cfg = GameConfig(8, 3, OPPONENT, AVOIDER, 'scripted', 4, script=[(1, 2)], initial_graph=graph(8, [(0, 1)]))
    assert GameConfig.from_dict(cfg.to_dict()).to_dict() == cfg.to_dict()
    with pytest.raises(ConfigError):
        GameConfig.from_dict({"n": 3})


def test_initial_graph_sets_the_root(graph):
    cfg = GameConfig(10, 3, STRATEGY, AVOIDER, 'random', 2, initial_graph=graph(10, [(3, 4), (5, 6)]))
    trace = run_game(cfg)
    assert trace.root == 3
    assert trace.graphs()[0].edge_count == 2


def test_greedy_scores_against_the_avoider(graph):
    g = graph(8, [(0, 1), (1, 2), (3, 4)])
    greedy = GreedyOpponent(0, AVOIDER)
    assert greedy.score(g, MoveEdge(0, 2)) == GREEDY_WEIGHTS['inside']
    assert greedy.score(g, MoveEdge(0, 3)) == GREEDY_WEIGHTS['merge']
    assert greedy.score(g, MoveEdge(0, 5)) == GREEDY_WEIGHTS['attach']
    assert greedy.score(g, MoveEdge(5, 6)) == GREEDY_WEIGHTS['fresh_pair']
    assert greedy.score(g, greedy.choose(g, None)) == GREEDY_WEIGHTS['merge']


def test_greedy_scores_against_the_builder(graph):
    g = graph(6, [(0, 1), (1, 2)], k=4)
    greedy = GreedyOpponent(0, BUILDER, {'path_end': 5})
    assert greedy.score(g, MoveEdge(0, 2)) == 10
    assert greedy.score(g, MoveEdge(1, 3)) == GREEDY_WEIGHTS['path_inner']


@pytest.mark.parametrize("first", [STRATEGY, OPPONENT])
def test_builder_beats_the_solver(first):
    trace = run_game(GameConfig(5, 4, first, BUILDER, 'solver', 0))
    assert trace.terminal['hamiltonian']


def test_witness_index_is_recorded():
    for seed in range(10):
        trace = run_game(GameConfig(12, 3, STRATEGY, AVOIDER, 'random', seed))
        at = trace.first_witness()
        if at is None:
            continue
        assert trace.moves[at].witness == {"kind": trace.moves[at].witness["kind"], "at": at}
        assert all(rec.witness is None for rec in trace.moves[:at])
        assert all(rec.witness["at"] == at for rec in trace.moves[at:])


def random_position(seed, n, moves):
    rng = random.Random(seed)
    g = GameGraph.empty(n, 3)
    for _ in range(moves):
        legal = g.legal_moves()
        if not legal:
            break
        g = g.add_edge(rng.choice(legal))
    return g


def test_solver_opponent_refutes_the_avoider():
    checked = 0
    for n, moves in ((4, 0), (5, 1), (5, 2), (6, 3), (6, 4)):
        for seed in range(4):
            g = random_position(seed, n, moves)
            if not g.legal_moves() or brute_force_value(g, AVOID_TWO_CONNECTED, False):
                continue
            m = SolverOpponent(seed, AVOIDER).choose(g, None)
            assert not brute_force_value(g.add_edge(m), AVOID_TWO_CONNECTED, True)
            checked += 1
    assert checked > 0


def test_solver_opponent_searches_the_strategy_objective():
    assert SolverOpponent(0, AVOIDER).objective == AVOID_TWO_CONNECTED
    assert SolverOpponent(0, BUILDER).objective == FORCE_HAMILTONIAN
