""" This file contains the recognizers for the named component shapes (types H, A, B, X, Y)
and the classification of the tracked component that selects the avoider's response row. """

import logging
from dataclasses import dataclass, field
from typing import Dict, FrozenSet, Iterable, List, Optional, Tuple

from degree_game.graph_core import (
    SATURATED, ComponentView, GameError, GameGraph, freedom, is_eventual_cut_vertex,
)

logger = logging.getLogger(__name__)

TYPE_H = 'TypeH'
TYPE_A = 'TypeA'
TYPE_B = 'TypeB'
TYPE_X = 'TypeX'
TYPE_Y = 'TypeY'
THREE_REGULAR = 'ThreeRegular'
OTHER = 'Other'

# sub-tags carried by Other
PAIR = 'pair'
EDGE = 'edge'

SMALL = 'Small'
ROW_A = 'RowA'
ROW_B = 'RowB'
ROW_C = 'RowC'
ROW_D = 'RowD'
ROW_E = 'RowE'
ROW_F = 'RowF'
WITNESS_ALREADY = 'WitnessAlready'
IMPOSSIBLE_1 = 'Impossible1'
IMPOSSIBLE_2 = 'Impossible2'
IMPOSSIBLE_3 = 'Impossible3'


class NotAComponent(GameError): pass


@dataclass(frozen=True)
class TypeLabel:
    label: str
    evidence: Tuple[int, ...] = ()
    subtag: Optional[str] = None

    def to_dict(self) -> Dict:
        return {"label": self.label, "evidence": list(self.evidence)}


@dataclass(frozen=True)
class AvoiderState:
    row: str
    bindings: Dict[str, int] = field(default_factory=dict)


def deficient_vertices(g: GameGraph, comp: Iterable[int]) -> Tuple[List[int], List[int]]:
    """ (degree-1 vertices, degree-2 vertices) of comp, each sorted. """
    deg1, deg2 = [], []
    for v in sorted(comp):
        d = g.degree(v)
        if d == 1:
            deg1.append(v)
        elif d == 2:
            deg2.append(v)
    return deg1, deg2


def _label(g: GameGraph, comp: FrozenSet[int]) -> TypeLabel:
    degrees = {v: g.degree(v) for v in comp}
    if any(d > SATURATED or d == 0 for d in degrees.values()):
        return TypeLabel(OTHER)
    deg1 = sorted(v for v, d in degrees.items() if d == 1)
    deg2 = sorted(v for v, d in degrees.items() if d == 2)

    if not deg1 and not deg2:
        return TypeLabel(THREE_REGULAR)
    if len(comp) == 2:
        return TypeLabel(OTHER, tuple(deg1), EDGE)
    if not deg1 and len(deg2) == 2:
        a, b = deg2
        if g.has_edge(a, b):
            return TypeLabel(TYPE_H, (a, b))
        return TypeLabel(OTHER, (a, b), PAIR)
    if not deg1 and len(deg2) == 3:
        pairs = [(a, b) for i, a in enumerate(deg2) for b in deg2[i + 1:] if g.has_edge(a, b)]
        if len(pairs) == 1:
            p, q = pairs[0]
            x = next(v for v in deg2 if v not in (p, q))
            return TypeLabel(TYPE_B, (p, q, x))
        return TypeLabel(OTHER, tuple(deg2))
    if not deg2 and len(deg1) == 2 and not g.has_edge(*deg1):
        return TypeLabel(TYPE_X, tuple(deg1))
    if len(deg1) == 1 and len(deg2) == 1 and not g.has_edge(deg1[0], deg2[0]):
        return TypeLabel(TYPE_Y, (deg1[0], deg2[0]))
    return TypeLabel(OTHER, tuple(deg1 + deg2))


def classify_component(g: GameGraph, comp: Iterable[int]) -> TypeLabel:
    comp = frozenset(comp)
    if not comp or g.component_of(min(comp)) != comp:
        raise NotAComponent('{} is not a connected component'.format(sorted(comp)))
    return _label(g, comp)


def component_labels(g: GameGraph) -> List[str]:
    """ Labels of all non-isolated components, ordered by lowest vertex. """
    return [_label(g, comp).label for comp in g.components()]


def classify_graph_type_a(g: GameGraph) -> Tuple[bool, Optional[Dict]]:
    edge = None
    pairs = []
    for comp in g.components():
        label = _label(g, comp)
        if label.subtag == EDGE:
            if edge is not None:
                return False, None
            edge = tuple(sorted(comp))
        elif label.subtag == PAIR:
            pairs.append(label.evidence)
        else:
            return False, None
    if edge is None or not pairs:
        return False, None
    return True, {"edge": edge, "pairs": pairs}


def effective_freedom(g: GameGraph, comps: Iterable[FrozenSet[int]]) -> int:
    return sum(freedom(g, comp).e for comp in comps)


def classify_avoider_state(view: ComponentView, g: GameGraph) -> AvoiderState:
    c = view.c_vertices
    if len(c) < 4:
        return AvoiderState(SMALL)

    deg1, deg2 = deficient_vertices(g, c)
    open_vertices = deg1 + deg2
    if not open_vertices:
        return AvoiderState(IMPOSSIBLE_1)
    if len(open_vertices) == 1:
        return AvoiderState(IMPOSSIBLE_2, {'x': open_vertices[0]})
    if len(deg1) == 1 and len(deg2) == 1 and g.has_edge(deg1[0], deg2[0]):
        return AvoiderState(IMPOSSIBLE_3, {'w': deg1[0], 'x': deg2[0]})

    for v in sorted(c):
        if is_eventual_cut_vertex(g, v):
            return AvoiderState(WITNESS_ALREADY, {'x': v})

    if len(deg1) >= 2:
        return AvoiderState(ROW_A, {'a': deg1[0], 'b': deg1[1]})

    if len(deg1) == 1:
        w = deg1[0]
        if len(deg2) == 2:
            a, b = deg2
            if not g.has_edge(a, b) and g.has_edge(w, a) != g.has_edge(w, b):
                u, v = (a, b) if g.has_edge(w, a) else (b, a)
                return AvoiderState(ROW_B, {'w': w, 'u': u, 'v': v})
        return AvoiderState(ROW_C, {'u': w})

    if len(deg2) >= 3:
        return AvoiderState(ROW_D)
    a, b = deg2
    if not g.has_edge(a, b):
        return AvoiderState(ROW_D, {'u': a, 'v': b})
    if effective_freedom(g, view.d_components) != 0:
        return AvoiderState(ROW_E, {'u': a, 'v': b})
    return AvoiderState(ROW_F, {'u': a, 'v': b})
