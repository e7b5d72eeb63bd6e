import json

import pytest

from degree_game.engine import OPPONENT, STRATEGY, GameConfig, run_game
from degree_game.graph_core import MoveEdge
from degree_game.strategy_base import AVOIDER, BUILDER
from degree_game.trace_io import (
    ReplayMismatch, TraceParseError, check_trace, parse_trace, read_trace, trace_lines, write_trace,
)


@pytest.fixture(scope='module')
def avoider_trace():
    return run_game(GameConfig(12, 3, OPPONENT, AVOIDER, 'random', 7))


def test_file_round_trip(tmp_path, avoider_trace):
    path = str(tmp_path / 'game.jsonl')
    write_trace(avoider_trace, path)
    loaded = read_trace(path)
    assert trace_lines(loaded) == trace_lines(avoider_trace)
    assert check_trace(loaded) == len(avoider_trace.moves)


def test_builder_trace_replays():
    trace = run_game(GameConfig(7, 4, STRATEGY, BUILDER, 'greedy', 1))
    assert check_trace(parse_trace(trace_lines(trace))) == len(trace.moves)


def test_header_and_trailer(avoider_trace):
    lines = trace_lines(avoider_trace)
    header, trailer = json.loads(lines[0]), json.loads(lines[-1])
    assert header["type"] == 'header'
    assert header["root"] == avoider_trace.root
    assert header["config"]["n"] == 12
    assert trailer["type"] == 'terminal'
    assert set(trailer) >= {'edges', 'hamiltonian', 'two_connected', 'objective_met', 'witness'}


def test_tampered_snapshot_is_located(avoider_trace):
    trace = parse_trace(trace_lines(avoider_trace))
    trace.moves[3].labels = ['TypeQ']
    with pytest.raises(ReplayMismatch, match='move 3: labels'):
        check_trace(trace)


def test_tampered_edge_is_caught(avoider_trace):
    trace = parse_trace(trace_lines(avoider_trace))
    trace.moves[2].edge = trace.moves[1].edge
    with pytest.raises(ReplayMismatch, match='move 2'):
        check_trace(trace)


def test_wrong_player_order(avoider_trace):
    trace = parse_trace(trace_lines(avoider_trace))
    trace.moves[0].player = 2
    with pytest.raises(ReplayMismatch, match='move 0'):
        check_trace(trace)


def test_unfinished_trace(avoider_trace):
    trace = parse_trace(trace_lines(avoider_trace))
    trace.moves.pop()
    with pytest.raises(ReplayMismatch, match='legal moves left'):
        check_trace(trace)


def test_wrong_terminal_record(avoider_trace):
    trace = parse_trace(trace_lines(avoider_trace))
    trace.terminal['hamiltonian'] = not trace.terminal['hamiltonian']
    with pytest.raises(ReplayMismatch, match='terminal'):
        check_trace(trace)


def test_wrong_root(avoider_trace):
    trace = parse_trace(trace_lines(avoider_trace))
    trace.root = trace.moves[0].edge.v
    with pytest.raises(ReplayMismatch, match='root'):
        check_trace(trace)


@pytest.mark.parametrize("lines", [
    [],
    ['{"type": "header"'],
    ['{"type": "terminal"}'],
    ['{"type": "header", "config": {"n": 3}}', '{"type": "terminal"}'],
])
def test_parse_errors(lines):
    with pytest.raises(TraceParseError):
        parse_trace(lines)


def test_bad_move_record(avoider_trace):
    lines = trace_lines(avoider_trace)
    lines[1] = json.dumps({"i": 0, "player": 1})
    with pytest.raises(TraceParseError, match='line 2'):
        parse_trace(lines)


def test_edges_are_normalised(avoider_trace):
    lines = trace_lines(avoider_trace)
    record = json.loads(lines[1])
    record["edge"] = list(reversed(record["edge"]))
    lines[1] = json.dumps(record)
    assert parse_trace(lines).moves[0].edge == MoveEdge.of(*record["edge"])
