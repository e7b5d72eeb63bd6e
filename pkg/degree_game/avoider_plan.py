""" This file contains the AvoiderPlan value and the helpers shared by the avoider's table,
its type-H turn tables, the decision trees and the endgames. """

import logging
from dataclasses import dataclass, field, replace
from typing import Dict, Iterable, Optional, Tuple

from degree_game.graph_core import ECV, GameGraph, MoveEdge, find_witness_move, has_witness
from degree_game.strategy_base import StrategyDecision, StrategyError, lowest_legal

logger = logging.getLogger(__name__)

MAIN = 'Main'
TYPEH_LEAD = 'TypeHLead'
TYPEH_FOLLOW = 'TypeHFollow'
TYPEH_REPLY = 'TypeHReply'
LEAD_TREE = 'LeadTree'
REPLY_TREE = 'ReplyTree'
TYPE_A_END = 'TypeAEnd'
TYPE_B_END = 'TypeBEnd'
WITNESS_HOLD = 'WitnessHold'

STAGE = 'stage'


class StrategyBreak(StrategyError): pass
class NoValidPairing(StrategyBreak): pass
class UnmatchedPosition(StrategyBreak): pass


@dataclass(frozen=True)
class AvoiderPlan:
    root_x: Optional[int] = None
    phase: str = MAIN
    bindings: Dict[str, int] = field(default_factory=dict)
    pairs: Tuple[Tuple[int, int], ...] = ()
    fig_node: Optional[str] = None

    def __post_init__(self):
        if (self.fig_node is not None) != (self.phase in (LEAD_TREE, REPLY_TREE)):
            raise StrategyBreak('tree node {!r} does not fit phase {}'.format(self.fig_node, self.phase))

    def enter(self, phase: str, bindings: Optional[Dict[str, int]] = None,
              pairs: Tuple[Tuple[int, int], ...] = (), fig_node: Optional[str] = None) -> 'AvoiderPlan':
        return replace(self, phase=phase, bindings=dict(bindings or {}), pairs=tuple(pairs), fig_node=fig_node)

    def main(self) -> 'AvoiderPlan':
        return self.enter(MAIN)

    def __getitem__(self, name: str) -> int:
        return self.bindings[name]

    def vertices(self) -> Dict[str, int]:
        """ Named vertices only; the type-B step counter is not a vertex. """
        return {name: v for name, v in self.bindings.items() if name != STAGE}

    def roles(self) -> Dict[int, Tuple]:
        """ Label-free role of every named vertex, used to colour positions. """
        roles: Dict[int, list] = {}
        if self.root_x is not None:
            roles.setdefault(self.root_x, []).append('root')
        for name, v in self.vertices().items():
            roles.setdefault(v, []).append(name)
        for j, pair in enumerate(self.pairs):
            for v in pair:
                roles.setdefault(v, []).append('pair{}'.format(j))
        return {v: tuple(sorted(r)) for v, r in roles.items()}

    def signature(self) -> Tuple:
        return (self.phase, self.fig_node, self.bindings.get(STAGE))


def play(g: GameGraph, a: Optional[int], b: Optional[int], rule: str) -> Optional[StrategyDecision]:
    """ Decision for edge (a, b) when it is legal, else None. """
    if a is None or b is None or not g.is_legal(a, b):
        return None
    return StrategyDecision(MoveEdge.of(a, b), rule)


def fresh(g: GameGraph, y: int, anchor: int) -> bool:
    """ y was isolated before the opponent joined it to anchor. """
    return g.degree(y) == 1 and anchor in g.neighbors(y)


def fresh_pair(g: GameGraph, opp: MoveEdge) -> bool:
    return g.degree(opp.u) == 1 and g.degree(opp.v) == 1


def partner_of(pairs: Iterable[Tuple[int, int]], v: int) -> Optional[int]:
    for p, q in pairs:
        if v == p:
            return q
        if v == q:
            return p
    return None


def hold(g: GameGraph, plan: AvoiderPlan) -> Tuple[StrategyDecision, AvoiderPlan]:
    witness = has_witness(g)
    avoid = witness.vertex if witness.kind == ECV else None
    return StrategyDecision(lowest_legal(g, avoid), 'hold-witness'), plan.enter(WITNESS_HOLD)


def strike(g: GameGraph, plan: AvoiderPlan, extra: Iterable[int] = ()) -> Optional[Tuple[StrategyDecision, AvoiderPlan]]:
    """ Witness-creating move among the plan's named vertices, the given extras and two free vertices. """
    candidates = set(plan.vertices().values()) | set(extra)
    for p, q in plan.pairs:
        candidates |= {p, q}
    first = g.lowest_isolated()
    if first is not None:
        candidates.add(first)
        second = g.lowest_isolated(exclude=(first,))
        if second is not None:
            candidates.add(second)
    m = find_witness_move(g, candidates)
    if m is None:
        return None
    logger.debug('avoider params: strike {} in phase {}'.format(tuple(m), plan.phase))
    return StrategyDecision(m, 'strike'), plan.main()
