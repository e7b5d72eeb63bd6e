""" This file contains the two decision trees the avoider follows while the tracked component is
type H and nothing else has been built: the lead tree (avoider to move) and the reply tree
(opponent to move). Every node lists the opponent moves it expects and the answer to each; moves
outside the list are answered by a witness-creating move when one exists. """

import logging
from typing import Callable, Dict, Optional, Tuple

from degree_game.avoider_plan import (
    LEAD_TREE, REPLY_TREE, STAGE, TYPE_A_END, TYPE_B_END, AvoiderPlan, UnmatchedPosition,
    fresh, fresh_pair, hold, play, strike,
)
from degree_game.graph_core import GameGraph, MoveEdge, has_witness
from degree_game.strategy_base import StrategyDecision

logger = logging.getLogger(__name__)

Outcome = Optional[Tuple[StrategyDecision, AvoiderPlan]]


def _branch(decision: Optional[StrategyDecision], plan: AvoiderPlan) -> Outcome:
    return None if decision is None else (decision, plan)


def lead_tree_root(plan: AvoiderPlan, g: GameGraph, a: int, b: int) -> Outcome:
    """ Type H with degree-2 pair a~b, nothing else built, avoider to move. """
    x1 = g.lowest_isolated()
    decision = play(g, a, x1, 'lead-tree-root')
    # threat: (b, x1) leaves x1 as an eventual cut vertex
    return _branch(decision, plan.enter(LEAD_TREE, {'a': a, 'b': b, 'x1': x1}, fig_node='forced'))


def _lead_forced(plan, g, opp):
    b, x1 = plan['b'], plan['x1']
    if not opp.touches(b):
        return None
    y = opp.other(b)
    if not fresh(g, y, b):
        return None
    x3 = g.lowest_isolated()
    decision = play(g, x1, x3, 'lead-tree-forced')
    return _branch(decision, plan.enter(LEAD_TREE, {'x1': x1, 'x2': y, 'x3': x3}, fig_node='x-shape'))


def _lead_x_shape(plan, g, opp):
    x1, x2, x3 = plan['x1'], plan['x2'], plan['x3']
    d_shape = lambda d1, d2, e: plan.enter(LEAD_TREE, {'d1': d1, 'd2': d2, 'e': e}, fig_node='d-shape')
    for anchor in (x3, x2, x1):
        if not opp.touches(anchor):
            continue
        y = opp.other(anchor)
        if not fresh(g, y, anchor):
            return None
        if anchor == x3:
            return _branch(play(g, x1, y, 'lead-tree-x-a'), d_shape(x3, y, x2))
        if anchor == x2:
            return _branch(play(g, x2, x3, 'lead-tree-x-b'), d_shape(x1, x3, y))
        return _branch(play(g, y, x3, 'lead-tree-x-c'), d_shape(x3, y, x2))
    if fresh_pair(g, opp):
        y, z = opp
        nxt = plan.enter(LEAD_TREE, {'m1': x1, 'mid': x3, 'm2': x2, 's1': y, 's2': z}, fig_node='e-shape')
        return _branch(play(g, x2, x3, 'lead-tree-x-d'), nxt)
    return None


def _lead_d_shape(plan, g, opp):
    """ Adjacent degree-2 pair d1~d2 and one degree-1 vertex e. """
    d1, d2, e = plan['d1'], plan['d2'], plan['e']
    low, high = min(d1, d2), max(d1, d2)
    if fresh_pair(g, opp):
        nxt = plan.enter(TYPE_A_END, {'p': high, 'q': e, 'a': opp.u, 'b': opp.v})
        return _branch(play(g, low, e, 'lead-tree-d-a'), nxt)
    if opp.touches(e):
        y = opp.other(e)
        if fresh(g, y, e):
            nxt = plan.enter(TYPE_B_END, {'p': e, 'q': y, 't': high, STAGE: 0})
            return _branch(play(g, low, y, 'lead-tree-d-b'), nxt)
        return None
    for d, other in ((d1, d2), (d2, d1)):
        if opp.touches(d):
            y = opp.other(d)
            if fresh(g, y, d):
                nxt = plan.enter(TYPE_B_END, {'p': e, 'q': y, 't': other, STAGE: 0})
                return _branch(play(g, e, y, 'lead-tree-d-c'), nxt)
    return None


def _lead_e_shape(plan, g, opp):
    """ Degree-2 path m1-mid-m2 plus a single edge s1-s2. """
    m1, mid, m2, s1, s2 = plan['m1'], plan['mid'], plan['m2'], plan['s1'], plan['s2']
    for end, far in ((m1, m2), (m2, m1)):
        if not opp.touches(end):
            continue
        y = opp.other(end)
        if y in (s1, s2):
            s_other = s2 if y == s1 else s1
            nxt = plan.enter(TYPE_B_END, {'p': y, 'q': s_other, 't': far, STAGE: 0})
            return _branch(play(g, mid, s_other, 'lead-tree-e-a'), nxt)
        if fresh(g, y, end):
            nxt = plan.enter(TYPE_A_END, {'p': far, 'q': y, 'a': s1, 'b': s2})
            return _branch(play(g, mid, y, 'lead-tree-e-b'), nxt)
        return None
    return None


def reply_tree_root(plan: AvoiderPlan, g: GameGraph, a: int, b: int, opp: MoveEdge) -> Outcome:
    """ Type H with pair a~b, nothing else built, and the opponent joined two isolated vertices. """
    x, y = opp
    decision = play(g, a, x, 'reply-tree-root')
    # threat: (b, x) leaves y as an eventual cut vertex
    return _branch(decision, plan.enter(REPLY_TREE, {'a': a, 'b': b, 'x': x, 'y': y}, fig_node='t-shape'))


def _reply_t_shape(plan, g, opp):
    b, x, y = plan['b'], plan['x'], plan['y']
    if opp.touches(b) and opp.other(b) == y:
        # x~y is a fresh type-H pair with the avoider to move
        return lead_tree_root(plan, g, min(x, y), max(x, y))
    for anchor, third in ((b, x), (x, b)):
        if opp.touches(anchor):
            z = opp.other(anchor)
            if fresh(g, z, anchor):
                nxt = plan.enter(TYPE_B_END, {'p': y, 'q': z, 't': third, STAGE: 0})
                return _branch(play(g, y, z, 'reply-tree-t-a' if anchor == b else 'reply-tree-t-b'), nxt)
            return None
    return None


NODES: Dict[Tuple[str, str], Callable] = {
    (LEAD_TREE, 'forced'): _lead_forced,
    (LEAD_TREE, 'x-shape'): _lead_x_shape,
    (LEAD_TREE, 'd-shape'): _lead_d_shape,
    (LEAD_TREE, 'e-shape'): _lead_e_shape,
    (REPLY_TREE, 't-shape'): _reply_t_shape,
}


def tree_respond(plan: AvoiderPlan, g: GameGraph, opp: Optional[MoveEdge]) -> Tuple[StrategyDecision, AvoiderPlan]:
    if has_witness(g):
        return hold(g, plan)
    handler = NODES.get((plan.phase, plan.fig_node))
    if handler is None:
        raise UnmatchedPosition('no tree node {} / {}'.format(plan.phase, plan.fig_node))
    outcome = handler(plan, g, opp) if opp is not None else None
    if outcome is not None:
        logger.debug('avoider params: node={} opp={} rule={}'.format(
            plan.fig_node, tuple(opp), outcome[0].rule))
        return outcome
    outcome = strike(g, plan, opp if opp is not None else ())
    if outcome is not None:
        return outcome
    raise UnmatchedPosition('opponent move {} not covered at node {} / {}'.format(
        None if opp is None else tuple(opp), plan.phase, plan.fig_node))
