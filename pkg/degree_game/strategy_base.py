from dataclasses import dataclass
from typing import Dict, Optional

from degree_game.graph_core import GameGraph, MoveEdge

BUILDER = 'builder'
AVOIDER = 'avoider'


class StrategyError(RuntimeError): pass


class NoLegalMove(StrategyError): pass


@dataclass(frozen=True)
class StrategyDecision:
    edge: MoveEdge
    rule: str

    def to_dict(self) -> Dict:
        return {"edge": [self.edge.u, self.edge.v], "rule": self.rule}


def lowest_legal(g: GameGraph, avoid: Optional[int] = None) -> MoveEdge:
    """ Lowest legal edge, skipping edges at `avoid` when another move exists. """
    moves = g.legal_moves()
    if not moves:
        raise NoLegalMove('no legal move left on {}'.format(g))
    if avoid is not None:
        for m in moves:
            if not m.touches(avoid):
                return m
    return moves[0]
