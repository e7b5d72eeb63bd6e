""" This file contains the JSON-lines trace format (header, one record per move, trailer) and the
replay check that recomputes every record from the moves alone. """

import json
import logging
from typing import Dict, List

from degree_game.engine import GameConfig, GameTrace, MoveRecord, snapshot, terminal_outcomes
from degree_game.graph_core import GameError, MoveEdge

logger = logging.getLogger(__name__)


class TraceParseError(ValueError): pass
class ReplayMismatch(ValueError): pass


def trace_lines(trace: GameTrace) -> List[str]:
    out = [json.dumps({"type": "header", "config": trace.config.to_dict(), "root": trace.root}, sort_keys=True)]
    out += [json.dumps(rec.to_dict(), sort_keys=True) for rec in trace.moves]
    out.append(json.dumps({"type": "terminal", **trace.terminal}, sort_keys=True))
    return out


def write_trace(trace: GameTrace, path: str):
    with open(path, 'w') as f:
        f.write('\n'.join(trace_lines(trace)) + '\n')


def _parse_record(line_no: int, data: Dict) -> MoveRecord:
    try:
        u, v = data["edge"]
        return MoveRecord(
            i=int(data["i"]), player=int(data["player"]), edge=MoveEdge.of(u, v), rule=str(data["rule"]),
            F_C=data["F_C"], E_D=data["E_D"], labels=list(data["labels"]), witness=data["witness"],
        )
    except (KeyError, TypeError, ValueError) as e:
        raise TraceParseError('line {}: bad move record: {}'.format(line_no, e))


def parse_trace(lines: List[str]) -> GameTrace:
    rows = []
    for line_no, line in enumerate(lines, 1):
        if not line.strip():
            continue
        try:
            rows.append((line_no, json.loads(line)))
        except json.JSONDecodeError as e:
            raise TraceParseError('line {}: {}'.format(line_no, e))
    if len(rows) < 2 or rows[0][1].get("type") != "header" or rows[-1][1].get("type") != "terminal":
        raise TraceParseError('trace needs a header line and a terminal line')
    header = rows[0][1]
    try:
        config = GameConfig.from_dict(header["config"])
    except (KeyError, GameError) as e:
        raise TraceParseError('line 1: bad header: {}'.format(e))
    terminal = dict(rows[-1][1])
    terminal.pop("type")
    moves = [_parse_record(line_no, data) for line_no, data in rows[1:-1]]
    return GameTrace(config, moves, header.get("root"), terminal)


def read_trace(path: str) -> GameTrace:
    with open(path) as f:
        return parse_trace(f.read().splitlines())


def check_trace(trace: GameTrace) -> int:
    """ Replays the moves from the initial graph and compares every stored field; returns the move count. """
    g = trace.config.start()
    root = trace.root
    expected_root = g.edges()[0].u if g.edge_count else (trace.moves[0].edge.u if trace.moves else None)
    if root != expected_root:
        raise ReplayMismatch('root {} does not match the replayed root {}'.format(root, expected_root))
    witness_at = None
    player = 1
    for j, rec in enumerate(trace.moves):
        if rec.i != j or rec.player != player:
            raise ReplayMismatch('move {}: expected index {} by player {}, found {} by {}'.format(
                j, j, player, rec.i, rec.player))
        try:
            g = g.add_edge(rec.edge)
        except GameError as e:
            raise ReplayMismatch('move {}: illegal edge {}: {}'.format(j, tuple(rec.edge), e))
        if witness_at is None and g.k == 3 and snapshot(g, root, j)["witness"] is not None:
            witness_at = j
        expected = snapshot(g, root, witness_at)
        stored = {"F_C": rec.F_C, "E_D": rec.E_D, "labels": rec.labels, "witness": rec.witness}
        for key, value in expected.items():
            if stored[key] != value:
                raise ReplayMismatch('move {}: {} is {} but replay gives {}'.format(j, key, stored[key], value))
        player = 3 - player
    if not g.is_terminal():
        raise ReplayMismatch('trace ends after move {} with legal moves left'.format(len(trace.moves) - 1))
    outcomes = terminal_outcomes(g, trace.config.role)
    if outcomes != trace.terminal:
        raise ReplayMismatch('terminal record {} but replay gives {}'.format(trace.terminal, outcomes))
    return len(trace.moves)
