""" This file contains the non-2-connectedness strategy for the cap-3 game: the main response
table over the tracked component C, the type-H turn tables, the type A and type B endgames and
the pairing of four degree-2 vertices. The decision trees live in game_trees.py. """

import logging
from itertools import combinations
from typing import Dict, FrozenSet, Iterable, Optional, Sequence, Tuple

from degree_game.avoider_plan import (
    LEAD_TREE, MAIN, REPLY_TREE, STAGE, TYPE_A_END, TYPE_B_END, TYPEH_FOLLOW, TYPEH_LEAD,
    TYPEH_REPLY, WITNESS_HOLD, AvoiderPlan, NoValidPairing, StrategyBreak, UnmatchedPosition,
    fresh, fresh_pair, hold, partner_of, play, strike,
)
from degree_game.classify import (
    ROW_A, ROW_B, ROW_C, ROW_D, ROW_E, ROW_F, SMALL, TYPE_H, TYPE_Y, classify_avoider_state,
    classify_component, deficient_vertices, effective_freedom,
)
from degree_game.game_trees import lead_tree_root, reply_tree_root, tree_respond
from degree_game.graph_core import ComponentView, GameGraph, MoveEdge, component_view, has_witness
from degree_game.strategy_base import AVOIDER, NoLegalMove, StrategyDecision, lowest_legal

logger = logging.getLogger(__name__)

Pair = Tuple[int, int]
Reply = Tuple[StrategyDecision, AvoiderPlan]


def tracked_vertex(g: GameGraph) -> Optional[int]:
    """ Lower endpoint of the lowest edge, None on an empty board. """
    edges = g.edges()
    return edges[0].u if edges else None


def d_pairs(g: GameGraph, view: ComponentView) -> Optional[Tuple[Pair, ...]]:
    """ The two degree-2 vertices of every D component, or None if some component has another shape. """
    pairs = []
    for comp in view.d_components:
        deg1, deg2 = deficient_vertices(g, comp)
        if deg1 or len(deg2) != 2:
            return None
        pairs.append((deg2[0], deg2[1]))
    return tuple(pairs)


def _sorted_pair(a: int, b: int) -> Pair:
    return (a, b) if a < b else (b, a)


def pair_four_degree2(g: GameGraph, comp: Iterable[int], four: Sequence[int]) -> Tuple[Pair, Pair]:
    """
    Splits the four degree-2 vertices of comp into two non-adjacent pairs.

    The case analysis looks at how many of the other three are adjacent to four[0]: with two
    neighbours u~v, u~q the pairing is forced to (u, p), (v, q); with one neighbour a, u pairs with
    either of the other two; with none, any pairing whose second pair is non-adjacent works.
    """
    comp = frozenset(comp)
    four = tuple(four)
    if len(set(four)) != 4 or not set(four) <= comp:
        raise ValueError('expected four distinct vertices of the component, got {}'.format(four))
    deg1, deg2 = deficient_vertices(g, comp)
    if deg1 or sorted(deg2) != sorted(four):
        raise ValueError('component must be 3-regular except {} (degree 1: {}, degree 2: {})'.format(
            sorted(four), deg1, deg2))

    u, rest = four[0], four[1:]
    near = [x for x in rest if g.has_edge(u, x)]
    far = [x for x in rest if not g.has_edge(u, x)]
    if len(near) == 2:
        candidates = [((u, far[0]), (near[0], near[1]))]
    elif len(near) == 1:
        candidates = [((u, far[0]), (near[0], far[1])), ((u, far[1]), (near[0], far[0]))]
    else:
        candidates = [((u, x), tuple(y for y in rest if y != x)) for x in rest]
    # every pairing, in case the position breaks the usual shape
    candidates += [((u, x), tuple(y for y in rest if y != x)) for x in sorted(rest)]

    for (a, b), (c, d) in candidates:
        if not g.has_edge(a, b) and not g.has_edge(c, d):
            return _sorted_pair(a, b), _sorted_pair(c, d)
    raise NoValidPairing('no non-adjacent pairing of {} in component {}'.format(four, sorted(comp)))


def _gap(plan: AvoiderPlan, g: GameGraph, row: str, reason: str) -> Reply:
    logger.warning('StrategyGap at {}: {} on {}'.format(row, reason, g))
    outcome = strike(g, plan)
    if outcome is not None:
        return outcome
    return StrategyDecision(lowest_legal(g), 'fallback-gap'), plan.main()


def _row_d_pair(g: GameGraph, c: FrozenSet[int]) -> Optional[Pair]:
    deg2 = deficient_vertices(g, c)[1]
    if len(deg2) == 4:
        return pair_four_degree2(g, c, deg2)[0]
    open_pairs = [(a, b) for a, b in combinations(deg2, 2) if not g.has_edge(a, b)]
    if len(deg2) <= 3 or not open_pairs:
        return open_pairs[0] if open_pairs else None
    for a, b in open_pairs:
        left = [v for v in deg2 if v not in (a, b)]
        if not any(g.has_edge(x, y) for x, y in combinations(left, 2)):
            return a, b
    logger.warning('StrategyGap at {}: every pairing of {} leaves adjacent degree-2 vertices'.format(ROW_D, deg2))
    return open_pairs[0]


def _row_e_target(g: GameGraph, view: ComponentView, u: int) -> Tuple[Optional[int], bool]:
    """ Lowest deficient D vertex (degree 2 first) whose merge keeps C off type Y; the flag is False
    when every target gives type Y. """
    targets = sorted((v for v in view.d_vertices if g.degree(v) < 3), key=lambda v: (g.degree(v) != 2, v))
    for v in targets:
        after = g.add_edge(u, v)
        if classify_component(after, after.component_of(u)).label != TYPE_Y:
            return v, True
    return (targets[0] if targets else None), False


def main_respond(plan: AvoiderPlan, view: ComponentView, g: GameGraph) -> Reply:
    state = classify_avoider_state(view, g)
    row, b = state.row, state.bindings
    c = view.c_vertices
    decision = None

    if row == SMALL:
        open_c = sorted((v for v in c if g.degree(v) < 3), key=lambda v: (g.degree(v), v))
        iso = g.lowest_isolated(exclude=c)
        if not open_c or iso is None:
            return _gap(plan, g, row, 'no isolated vertex to attach')
        decision = play(g, open_c[0], iso, 'avoid-small')
    elif row == ROW_A:
        decision = play(g, b['a'], b['b'], 'avoid-row-a')
    elif row == ROW_B:
        # joining the two degree-2 vertices leaves w a pendant behind a saturated side
        decision = play(g, b['u'], b['v'], 'avoid-row-b')
    elif row == ROW_C:
        u = b['u']
        free = [x for x in deficient_vertices(g, c)[1] if not g.has_edge(u, x)]
        decision = play(g, u, free[0], 'avoid-row-c') if free else None
    elif row == ROW_D:
        pair = _row_d_pair(g, c)
        decision = play(g, pair[0], pair[1], 'avoid-row-d') if pair else None
    elif row == ROW_E:
        target, clean = _row_e_target(g, view, b['u'])
        if not clean and target is not None:
            logger.warning('StrategyGap at {}: every target leaves C type Y'.format(ROW_E))
        decision = play(g, b['u'], target, 'avoid-row-e' if clean else 'fallback-row-e')
    elif row == ROW_F:
        pairs = d_pairs(g, view)
        if pairs is None:
            return _gap(plan, g, row, 'D is not a set of degree-2 pairs')
        return typeh_respond(plan.enter(TYPEH_LEAD, {'v': b['u'], 'w': b['v']}, pairs), view, g, None)
    else:
        return hold(g, plan)

    if decision is None:
        return _gap(plan, g, row, 'table move {} is not legal'.format(b))
    logger.debug('avoider params: row={} bindings={} rule={} edge={}'.format(
        row, b, decision.rule, tuple(decision.edge)))
    return decision, plan.main()


def _typeh_lead(plan: AvoiderPlan, g: GameGraph) -> Reply:
    v, w = plan['v'], plan['w']
    if plan.pairs:
        p, q = plan.pairs[0]
        decision = play(g, v, p, 'typeh-lead')
        if decision is not None:
            return decision, plan.enter(TYPEH_FOLLOW, {'w': w, 'q': q}, plan.pairs[1:])
    else:
        outcome = lead_tree_root(plan, g, v, w)
        if outcome is not None:
            return outcome
    raise UnmatchedPosition('type-H lead move not legal for v={} w={} pairs={}'.format(v, w, plan.pairs))


def _typeh_follow(plan: AvoiderPlan, g: GameGraph, opp: Optional[MoveEdge]) -> Reply:
    w, q = plan['w'], plan['q']
    if has_witness(g):
        return hold(g, plan)
    decision = None
    touched = [(mine, partner) for mine, partner in ((w, q), (q, w)) if opp is not None and opp.touches(mine)]
    if touched:
        mine, partner = touched[0]
        a = opp.other(mine)
        if g.degree(a) <= 2:
            decision = play(g, partner, a, 'typeh-follow-free')
        else:
            decision = play(g, partner, partner_of(plan.pairs, a), 'typeh-follow-pair')
    else:
        decision = play(g, w, q, 'typeh-follow-close')
    if decision is not None:
        return decision, plan.main()
    outcome = strike(g, plan, opp or ())
    if outcome is not None:
        return outcome
    raise UnmatchedPosition('type-H follow-up has no answer to {}'.format(opp))


def _typeh_reply(plan: AvoiderPlan, g: GameGraph, opp: Optional[MoveEdge]) -> Reply:
    v, w = plan['v'], plan['w']
    if opp is None:
        raise UnmatchedPosition('type-H reply needs the opponent move')
    everyone = ((v, w),) + plan.pairs
    group: Dict[int, int] = {v: -1, w: -1}
    for j, (p, q) in enumerate(plan.pairs):
        group[p] = group[q] = j
    s, t = opp

    if s in group and t in group:
        if group[s] == group[t]:
            x = g.lowest_isolated()
            y = g.lowest_isolated(exclude=(x,)) if x is not None else None
            decision = play(g, x, y, 'typeh-reply-c')
            if decision is not None:
                return decision, plan.main()
        else:
            tag = 'typeh-reply-b' if -1 in (group[s], group[t]) else 'typeh-reply-a'
            decision = play(g, partner_of(everyone, s), partner_of(everyone, t), tag)
            if decision is not None:
                return decision, plan.main()

    if has_witness(g):
        return hold(g, plan)

    for mine, other in ((s, t), (t, s)):
        if mine in group and other not in group and fresh(g, other, mine):
            tag = 'typeh-reply-d' if group[mine] == -1 else 'typeh-reply-e'
            decision = play(g, partner_of(everyone, mine), other, tag)
            if decision is not None:
                return decision, plan.main()

    if fresh_pair(g, opp):
        if plan.pairs:
            p, q = plan.pairs[0]
            decision = play(g, v, p, 'typeh-reply-f')
            if decision is not None:
                nxt = plan.enter(TYPE_A_END, {'p': w, 'q': q, 'a': s, 'b': t}, plan.pairs[1:])
                return decision, nxt
        else:
            outcome = reply_tree_root(plan, g, v, w, opp)
            if outcome is not None:
                return outcome

    outcome = strike(g, plan, opp)
    if outcome is not None:
        return outcome
    raise UnmatchedPosition('type-H reply table has no row for {}'.format(tuple(opp)))


def typeh_respond(plan: AvoiderPlan, view: ComponentView, g: GameGraph, opp: Optional[MoveEdge]) -> Reply:
    """ C is type H and E(D) = 0: lead when the avoider is to move there, otherwise reply. """
    if plan.phase == TYPEH_LEAD:
        return _typeh_lead(plan, g)
    if plan.phase == TYPEH_FOLLOW:
        return _typeh_follow(plan, g, opp)
    if plan.phase == TYPEH_REPLY:
        return _typeh_reply(plan, g, opp)
    raise UnmatchedPosition('phase {} is not a type-H phase'.format(plan.phase))


def type_a_end(plan: AvoiderPlan, g: GameGraph, opp: Optional[MoveEdge]) -> Reply:
    p, q = plan['p'], plan['q']
    if has_witness(g):
        return hold(g, plan)
    if opp is None or not (opp.touches(p) or opp.touches(q)):
        decision = play(g, p, q, 'typea-close')
    else:
        mine, other = (p, q) if opp.touches(p) else (q, p)
        v = opp.other(mine)
        if g.degree(v) <= 2:
            decision = play(g, other, v, 'typea-mirror')
        else:
            decision = play(g, other, partner_of(plan.pairs, v), 'typea-pair')
    if decision is not None:
        return decision, plan.main()
    outcome = strike(g, plan, opp or ())
    if outcome is not None:
        return outcome
    raise UnmatchedPosition('type A end has no answer to {}'.format(opp))


def type_b_end(plan: AvoiderPlan, g: GameGraph, opp: Optional[MoveEdge]) -> Reply:
    """ p~q adjacent degree-2 vertices, t the third one. """
    p, q, t = plan['p'], plan['q'], plan['t']
    if has_witness(g):
        return hold(g, plan)
    decision = None
    if plan.bindings.get(STAGE, 0) == 0:
        for a, tag in ((p, 'typeb-px'), (q, 'typeb-qx')):
            if g.is_legal(a, t) and has_witness(g.add_edge(a, t)):
                return play(g, a, t, tag), plan.main()
        if opp is not None and opp.touches(t) and fresh(g, opp.other(t), t):
            y = opp.other(t)
            decision = play(g, y, p, 'typeb-step2')
            if decision is not None:
                return decision, plan.enter(TYPE_B_END, {'p': p, 'q': q, 't': t, 'y': y, STAGE: 1})
    else:
        y = plan['y']
        if opp is not None and opp.touches(q) and fresh(g, opp.other(q), q):
            decision = play(g, y, opp.other(q), 'typeb-step3')
        elif opp is not None and opp.touches(y) and fresh(g, opp.other(y), y):
            decision = play(g, q, opp.other(y), 'typeb-step3')
        else:
            decision = play(g, q, y, 'typeb-close')
        if decision is not None:
            return decision, plan.main()
    outcome = strike(g, plan, opp or ())
    if outcome is not None:
        return outcome
    raise UnmatchedPosition('type B end has no answer to {}'.format(opp))


def _settle(decision: StrategyDecision, plan: AvoiderPlan, g: GameGraph) -> Reply:
    """ Phase to carry into the opponent's turn, looking at the position after our move. """
    after = g.add_edge(decision.edge)
    if has_witness(after):
        return decision, plan.enter(WITNESS_HOLD)
    if plan.phase == MAIN:
        view = component_view(after, plan.root_x)
        label = classify_component(after, view.c_vertices)
        if label.label == TYPE_H and effective_freedom(after, view.d_components) == 0:
            pairs = d_pairs(after, view)
            if pairs is not None:
                v, w = label.evidence
                return decision, plan.enter(TYPEH_REPLY, {'v': v, 'w': w}, pairs)
    return decision, plan


def _fallback(plan: AvoiderPlan, g: GameGraph, err: Exception) -> Reply:
    logger.warning('avoider fallback from {} / {}: {}'.format(plan.phase, plan.fig_node, err))
    main = plan.main()
    try:
        decision, nxt = main_respond(main, component_view(g, plan.root_x), g)
    except UnmatchedPosition as e:
        logger.warning('avoider fallback failed again: {}'.format(e))
        return StrategyDecision(lowest_legal(g), 'fallback-lowest'), main
    if decision.rule.startswith('fallback-'):
        return decision, nxt
    return StrategyDecision(decision.edge, 'fallback-' + decision.rule), nxt


def avoider_respond(plan: AvoiderPlan, view: ComponentView, g: GameGraph,
                    opp: Optional[MoveEdge]) -> Reply:
    if g.k != 3:
        raise StrategyBreak('the avoider strategy is for k=3, got k={}'.format(g.k))
    if g.is_terminal():
        raise NoLegalMove('no legal move left on {}'.format(g))
    try:
        if plan.phase == TYPEH_REPLY:
            decision, nxt = typeh_respond(plan, view, g, opp)
        elif has_witness(g):
            decision, nxt = hold(g, plan)
        elif plan.phase in (LEAD_TREE, REPLY_TREE):
            decision, nxt = tree_respond(plan, g, opp)
        elif plan.phase in (TYPEH_LEAD, TYPEH_FOLLOW):
            decision, nxt = typeh_respond(plan, view, g, opp)
        elif plan.phase == TYPE_A_END:
            decision, nxt = type_a_end(plan, g, opp)
        elif plan.phase == TYPE_B_END:
            decision, nxt = type_b_end(plan, g, opp)
        else:
            decision, nxt = main_respond(plan.main(), view, g)
    except UnmatchedPosition as e:
        decision, nxt = _fallback(plan, g, e)
    return _settle(decision, nxt, g)


class AvoiderStrategy:
    role = AVOIDER

    def initial_state(self, g0: GameGraph) -> AvoiderPlan:
        return AvoiderPlan(root_x=tracked_vertex(g0))

    def move(self, plan: Optional[AvoiderPlan], g: GameGraph, opp: Optional[MoveEdge]) -> Reply:
        if plan is None or plan.root_x is None:
            root = tracked_vertex(g)
            if root is None:
                if g.n < 2:
                    raise NoLegalMove('no edge fits on {} vertices'.format(g.n))
                return StrategyDecision(MoveEdge(0, 1), 'avoid-open'), AvoiderPlan(root_x=0)
            plan = AvoiderPlan(root_x=root)
        return avoider_respond(plan, component_view(g, plan.root_x), g, opp)

    def signature(self, plan: Optional[AvoiderPlan], g: GameGraph):
        roles = plan.roles() if plan is not None else {}
        kinds = sorted(set(roles.values()))
        rank = {r: i + 1 for i, r in enumerate(kinds)}
        colors = [rank.get(roles.get(v), 0) for v in range(g.n)]
        extra = (plan.signature() if plan is not None else None, tuple(kinds))
        return colors, extra
