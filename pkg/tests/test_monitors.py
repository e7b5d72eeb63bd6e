import copy

from degree_game.engine import STRATEGY, GameConfig, GameTrace, MoveRecord, run_game
from degree_game.graph_core import GameGraph, MoveEdge
from degree_game.monitors import (
    monitor_freedom_budget, monitor_main_rows, monitor_no_type_y, monitor_typeh_progress,
    monitor_witness_persistence, run_monitors,
)
from degree_game.strategy_base import AVOIDER, BUILDER
from tests.conftest import TYPE_H_EDGES


def synthetic(n, initial_edges, moves, rules=None):
    g0 = GameGraph.from_edges(n, 3, initial_edges)
    cfg = GameConfig(n, 3, STRATEGY, AVOIDER, 'scripted', initial_graph=g0)
    rules = rules or ['avoid-row-a' if j % 2 == 0 else 'opponent' for j in range(len(moves))]
    records = [MoveRecord(j, 1 + j % 2, MoveEdge.of(*m), rule) for j, (m, rule) in enumerate(zip(moves, rules))]
    root = g0.edges()[0].u if g0.edge_count else MoveEdge.of(*moves[0]).u
    return GameTrace(cfg, records, root)


def test_type_h_without_progress():
    # C stays type H while both players keep adding fresh pairs
    trace = synthetic(20, TYPE_H_EDGES + [(6, 7)], [(8, 9), (10, 11), (12, 13), (14, 15), (16, 17), (18, 19)])
    report = monitor_typeh_progress(trace)
    assert report.checked == 1
    assert not report.passed
    assert 'E(D) = 6' in report.violations[0]


def test_type_h_with_progress():
    # closing a 4-cycle and a triangle in D lowers E(D) between type-H positions
    moves = [(6, 8), (7, 9), (10, 12), (11, 12), (13, 14), (15, 16)]
    trace = synthetic(20, TYPE_H_EDGES + [(6, 7), (8, 9), (10, 11)], moves)
    report = monitor_typeh_progress(trace)
    assert report.checked == 1
    assert report.passed


def test_unsettled_game_at_threshold():
    trace = synthetic(24, [], [(0, 1), (2, 3)])
    report = monitor_typeh_progress(trace)
    assert not report.passed
    assert 'no type-H position' in report.violations[-1]


def test_type_y_after_a_table_move():
    trace = synthetic(10, TYPE_H_EDGES, [(4, 6)], ['avoid-row-c'])
    report = monitor_no_type_y(trace)
    assert report.checked == 1
    assert not report.passed


def test_row_moves_leave_at_most_one_degree_one_vertex():
    assert monitor_main_rows(synthetic(10, TYPE_H_EDGES, [(4, 6)], ['avoid-row-b'])).passed
    trace = synthetic(10, [(0, 1)], [(1, 2)], ['avoid-row-c'])
    report = monitor_main_rows(trace)
    assert not report.passed
    assert 'left 2 degree-1' in report.violations[0]
    trace = synthetic(10, [(0, 1), (1, 2), (2, 3)], [(0, 3)], ['avoid-row-a'])
    assert monitor_main_rows(trace).passed


def test_builder_traces_are_skipped():
    trace = run_game(GameConfig(6, 4, STRATEGY, BUILDER, 'random', 0))
    reports = run_monitors(trace)
    assert [r.name for r in reports if r.skipped is None] == []
    assert all(r.passed for r in reports)


def test_witness_persists_in_real_games():
    for seed in range(5):
        report = monitor_witness_persistence(run_game(GameConfig(12, 3, STRATEGY, AVOIDER, 'random', seed)))
        assert report.passed


def traces_with_budget_checks():
    for seed in range(20):
        trace = run_game(GameConfig(12, 3, STRATEGY, AVOIDER, 'random', seed))
        report = monitor_freedom_budget(trace)
        assert report.passed, report.violations
        if report.checked:
            yield trace


def test_corrupted_budget_is_caught():
    trace = next(traces_with_budget_checks())
    caught = 0
    for i in range(1, len(trace.moves)):
        bad = copy.deepcopy(trace)
        bad.moves[i].F_C += 10
        report = monitor_freedom_budget(bad)
        if not report.passed:
            caught += 1
            assert 'move {}'.format(i) in report.violations[0] or 'move {}'.format(i + 2) in report.violations[0]
    assert caught > 0


def test_report_dict():
    report = monitor_main_rows(synthetic(10, [(0, 1)], [(1, 2)], ['avoid-row-c']))
    data = report.to_dict()
    assert data["name"] == 'main_rows'
    assert data["passed"] is False
    assert data["checked"] == 1
