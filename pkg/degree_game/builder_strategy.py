""" This file contains the Hamiltonian player's strategy for k >= 4: keep a Hamilton path on the
non-isolated vertices, answer every opponent edge from the response table and close the cycle
once no isolated vertex is left. """

import logging
from dataclasses import dataclass
from typing import List, Optional, Sequence, Tuple

from degree_game.graph_core import GameGraph, MoveEdge
from degree_game.strategy_base import BUILDER, StrategyDecision, StrategyError, lowest_legal

logger = logging.getLogger(__name__)


class BadOpening(StrategyError): pass
class IllegalReply(StrategyError): pass
class NoPathState(StrategyError): pass


@dataclass(frozen=True)
class HamPathState:
    path: Tuple[int, ...]
    x1: int
    x2: int

    def __post_init__(self):
        ends = {self.path[0], self.path[-1]}
        if {self.x1, self.x2} != ends:
            raise NoPathState('ends {} / {} are not the ends of path {}'.format(self.x1, self.x2, self.path))

    def extend(self, at: int, vertices: Sequence[int]) -> Tuple[int, ...]:
        """ Path grown at end `at` by `vertices` (nearest first). """
        if at == self.path[-1]:
            return self.path + tuple(vertices)
        return tuple(reversed(vertices)) + self.path

    def ordered(self) -> Tuple[int, ...]:
        return self.path if self.path[0] == self.x1 else tuple(reversed(self.path))


def builder_open(g: GameGraph) -> Tuple[StrategyDecision, HamPathState]:
    edges = g.edges()
    if len(edges) == 0:
        if g.n < 2:
            raise BadOpening('need at least two vertices, got n={}'.format(g.n))
        return StrategyDecision(MoveEdge(0, 1), 'path-open'), HamPathState((0, 1), 0, 1)
    if len(edges) == 1:
        a, b = edges[0]
        v = g.lowest_isolated()
        if v is None:
            raise BadOpening('no isolated vertex to extend the opening edge {}'.format(edges[0]))
        return StrategyDecision(MoveEdge.of(b, v), 'path-open'), HamPathState((a, b, v), a, v)
    raise BadOpening('opening expects an empty board or a single edge, found {} edges'.format(len(edges)))


def builder_close(state: HamPathState, g: GameGraph) -> StrategyDecision:
    x1, x2 = state.x1, state.x2
    if g.has_edge(x1, x2):
        return StrategyDecision(lowest_legal(g), 'filler')
    if not g.is_legal(x1, x2):
        raise IllegalReply('closing edge ({}, {}) breaks the cap k={}'.format(x1, x2, g.k))
    return StrategyDecision(MoveEdge.of(x1, x2), 'path-close')


def _where(state: HamPathState, v: int) -> str:
    if v == state.x1:
        return 'x1'
    if v == state.x2:
        return 'x2'
    if v in state.path:
        return 'p'
    return 'v'


def _reply(g: GameGraph, a: int, b: int, rule: str) -> StrategyDecision:
    if not g.is_legal(a, b):
        raise IllegalReply('{} reply ({}, {}) is illegal on {}'.format(rule, a, b, g))
    return StrategyDecision(MoveEdge.of(a, b), rule)


def builder_respond(state: Optional[HamPathState], g: GameGraph, opp: MoveEdge) -> Tuple[StrategyDecision, HamPathState]:
    if state is None:
        raise NoPathState('builder_respond called before the opening')
    a, b = opp
    kinds = {a: _where(state, a), b: _where(state, b)}
    x1, x2 = state.x1, state.x2
    fresh = g.lowest_isolated()

    def close(new_state):
        return builder_close(new_state, g), new_state

    pattern = tuple(sorted(kinds.values()))
    if pattern == ('v', 'v'):
        v, w = min(a, b), max(a, b)
        decision = _reply(g, x2, v, 'path-row-a')
        new = HamPathState(state.extend(x2, (v, w)), x1, w)
    elif pattern == ('p', 'p'):
        if fresh is None:
            return close(state)
        decision = _reply(g, x2, fresh, 'path-row-b')
        new = HamPathState(state.extend(x2, (fresh,)), x1, fresh)
    elif pattern in (('p', 'x1'), ('p', 'x2')):
        xj = a if kinds[a] != 'p' else b
        if fresh is None:
            return close(state)
        decision = _reply(g, xj, fresh, 'path-row-c')
        path = state.extend(xj, (fresh,))
        new = HamPathState(path, fresh, x2) if xj == x1 else HamPathState(path, x1, fresh)
    elif pattern == ('p', 'v'):
        v = a if kinds[a] == 'v' else b
        decision = _reply(g, x2, v, 'path-row-d')
        new = HamPathState(state.extend(x2, (v,)), x1, v)
    elif pattern in (('v', 'x1'), ('v', 'x2')):
        v = a if kinds[a] == 'v' else b
        xj = opp.other(v)
        path = state.extend(xj, (v,))
        if fresh is None:
            # the opponent used the last isolated vertex: the path through v is spanning
            spanning = HamPathState(path, v, x2) if xj == x1 else HamPathState(path, x1, v)
            return close(spanning)
        decision = _reply(g, v, fresh, 'path-row-e')
        path = state.extend(xj, (v, fresh))
        new = HamPathState(path, fresh, x2) if xj == x1 else HamPathState(path, x1, fresh)
    elif pattern == ('x1', 'x2'):
        if fresh is None:
            return close(state)
        decision = _reply(g, x2, fresh, 'path-row-f')
        new = HamPathState(state.extend(x2, (fresh,)), fresh, x1)
    else:
        raise NoPathState('opponent edge {} does not fit path {}'.format(opp, state.path))

    logger.debug('builder params: opp={} rule={} reply={} path={}'.format(
        tuple(opp), decision.rule, tuple(decision.edge), new.path))
    return decision, new


def path_invariant_violations(state: HamPathState, g: GameGraph) -> List[str]:
    """ Broken path invariants after a builder move; empty when all hold. """
    problems = []
    for a, b in zip(state.path, state.path[1:]):
        if not g.has_edge(a, b):
            problems.append('path vertices {} and {} are not adjacent'.format(a, b))
    if len(set(state.path)) != len(state.path):
        problems.append('path repeats a vertex')
    if g.lowest_isolated() is not None:
        built = set(v for v in range(g.n) if g.degree(v) > 0)
        if built != set(state.path):
            problems.append('path does not cover the non-isolated vertices')
        if g.degree(state.x1) != 1:
            problems.append('deg(x1) = {} != 1'.format(g.degree(state.x1)))
        if g.degree(state.x2) > 2:
            problems.append('deg(x2) = {} > 2'.format(g.degree(state.x2)))
    return problems


class BuilderStrategy:
    role = BUILDER

    def initial_state(self, g0: GameGraph):
        return None

    def move(self, state, g: GameGraph, opp: Optional[MoveEdge]):
        if state is None:
            return builder_open(g)
        if opp is None:
            if g.lowest_isolated() is None:
                return builder_close(state, g), state
            raise NoPathState('builder asked to move without an opponent edge mid-game')
        return builder_respond(state, g, opp)

    def signature(self, state, g: GameGraph):
        colors = [0] * g.n
        if state is not None:
            for i, v in enumerate(state.ordered()):
                colors[v] = i + 1
        return colors, None
