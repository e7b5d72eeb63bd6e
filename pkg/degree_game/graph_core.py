""" This file contains the GameGraph class and the structural predicates used by both strategies:
degrees, components, degrees of freedom, eventual cut vertices and witnesses. """

import json
import logging
from dataclasses import dataclass, field
from typing import Dict, FrozenSet, Iterable, List, NamedTuple, Optional, Sequence, Set, Tuple

logger = logging.getLogger(__name__)

# witnesses are only defined for the cubic game
SATURATED = 3


class GameError(ValueError): pass
class SelfLoop(GameError): pass
class OutOfRange(GameError): pass
class DuplicateEdge(GameError): pass
class DegreeCapExceeded(GameError): pass
class GraphFormatError(GameError): pass


class MoveEdge(NamedTuple):
    u: int
    v: int

    @classmethod
    def of(cls, a, b):
        a, b = int(a), int(b)
        return cls(a, b) if a < b else cls(b, a)

    def other(self, x):
        return self.v if x == self.u else self.u

    def touches(self, x):
        return x == self.u or x == self.v


class GameGraph:
    """
    Simple undirected graph over the fixed vertex pool 0..n-1 with degree cap k.

    Values are immutable: add_edge returns a new graph and leaves the receiver untouched,
    so positions can be kept as snapshots and shared between threads.
    """
    __slots__ = ('n', 'k', '_adj', '_edge_count')

    def __init__(self, n: int, k: int, adjacency: Optional[Sequence[Iterable[int]]] = None):
        if n < 0:
            raise GameError('vertex count must be non-negative, got {}'.format(n))
        if k < 1:
            raise GameError('degree cap must be positive, got {}'.format(k))
        self.n = n
        self.k = k
        if adjacency is None:
            self._adj = tuple(frozenset() for _ in range(n))
        else:
            self._adj = tuple(frozenset(nb) for nb in adjacency)
        self._edge_count = sum(len(nb) for nb in self._adj) // 2

    @classmethod
    def empty(cls, n, k):
        return cls(n, k)

    @classmethod
    def from_edges(cls, n, k, edges):
        g = cls(n, k)
        for e in edges:
            g = g.add_edge(*e)
        return g

    def degree(self, v: int) -> int:
        return len(self._adj[v])

    def degrees(self) -> List[int]:
        return [len(nb) for nb in self._adj]

    def neighbors(self, v: int) -> FrozenSet[int]:
        return self._adj[v]

    def has_edge(self, u: int, v: int) -> bool:
        return v in self._adj[u]

    @property
    def edge_count(self) -> int:
        return self._edge_count

    def edges(self) -> List[MoveEdge]:
        return [MoveEdge(u, v) for u in range(self.n) for v in sorted(self._adj[u]) if u < v]

    def check_move(self, u, v=None):
        """ Raises the matching GameError when (u, v) is not a legal move. """
        if v is None:
            u, v = u
        if not (0 <= u < self.n and 0 <= v < self.n):
            raise OutOfRange('edge ({}, {}) outside vertex pool 0..{}'.format(u, v, self.n - 1))
        if u == v:
            raise SelfLoop('self-loop at vertex {}'.format(u))
        if v in self._adj[u]:
            raise DuplicateEdge('edge ({}, {}) already drawn'.format(min(u, v), max(u, v)))
        for w in (u, v):
            if len(self._adj[w]) >= self.k:
                raise DegreeCapExceeded('vertex {} already has degree {} = k'.format(w, self.k))

    def is_legal(self, u, v) -> bool:
        return (
            0 <= u < self.n and 0 <= v < self.n and u != v
            and v not in self._adj[u]
            and len(self._adj[u]) < self.k and len(self._adj[v]) < self.k
        )

    def add_edge(self, u, v=None) -> 'GameGraph':
        if v is None:
            u, v = u
        self.check_move(u, v)
        adj = list(self._adj)
        adj[u] = adj[u] | {v}
        adj[v] = adj[v] | {u}
        return GameGraph(self.n, self.k, adj)

    def legal_moves(self) -> List[MoveEdge]:
        open_vertices = [v for v in range(self.n) if len(self._adj[v]) < self.k]
        moves = []
        for i, u in enumerate(open_vertices):
            nb = self._adj[u]
            for v in open_vertices[i + 1:]:
                if v not in nb:
                    moves.append(MoveEdge(u, v))
        return moves

    def is_terminal(self) -> bool:
        open_vertices = [v for v in range(self.n) if len(self._adj[v]) < self.k]
        for i, u in enumerate(open_vertices):
            for v in open_vertices[i + 1:]:
                if v not in self._adj[u]:
                    return False
        return True

    def isolated_vertices(self) -> List[int]:
        return [v for v in range(self.n) if not self._adj[v]]

    def lowest_isolated(self, exclude=()) -> Optional[int]:
        for v in range(self.n):
            if not self._adj[v] and v not in exclude:
                return v
        return None

    def component_of(self, v: int, removed: Optional[int] = None) -> FrozenSet[int]:
        seen = {v}
        stack = [v]
        while stack:
            a = stack.pop()
            for b in self._adj[a]:
                if b != removed and b not in seen:
                    seen.add(b)
                    stack.append(b)
        return frozenset(seen)

    def components(self, include_isolated=False) -> List[FrozenSet[int]]:
        """ Connected components ordered by their lowest vertex. """
        seen: Set[int] = set()
        comps = []
        for v in range(self.n):
            if v in seen:
                continue
            if not self._adj[v] and not include_isolated:
                continue
            comp = self.component_of(v)
            seen |= comp
            comps.append(comp)
        return comps

    def is_connected(self) -> bool:
        return self.n == 0 or len(self.component_of(0)) == self.n

    def relabel(self, perm: Sequence[int]) -> 'GameGraph':
        adj: List[Set[int]] = [set() for _ in range(self.n)]
        for u, v in self.edges():
            adj[perm[u]].add(perm[v])
            adj[perm[v]].add(perm[u])
        return GameGraph(self.n, self.k, adj)

    def to_dict(self) -> Dict:
        return {"n": self.n, "k": self.k, "edges": [[u, v] for u, v in self.edges()]}

    @classmethod
    def from_dict(cls, data: Dict) -> 'GameGraph':
        try:
            return cls.from_edges(int(data["n"]), int(data["k"]), [tuple(e) for e in data["edges"]])
        except (KeyError, TypeError) as e:
            raise GraphFormatError('bad graph record: {}'.format(e))

    def __eq__(self, other):
        if not isinstance(other, GameGraph):
            return NotImplemented
        return self.n == other.n and self.k == other.k and self._adj == other._adj

    def __hash__(self):
        return hash((self.n, self.k, self._adj))

    def __repr__(self):
        return 'GameGraph(n={}, k={}, edges={})'.format(self.n, self.k, [tuple(e) for e in self.edges()])


def add_edge(g: GameGraph, m) -> GameGraph:
    return g.add_edge(*m)


def legal_moves(g: GameGraph) -> List[MoveEdge]:
    return g.legal_moves()


@dataclass(frozen=True)
class ComponentView:
    root_x: int
    c_vertices: FrozenSet[int]
    d_components: Tuple[FrozenSet[int], ...]
    isolated: FrozenSet[int]

    @property
    def d_vertices(self) -> FrozenSet[int]:
        return frozenset().union(*self.d_components) if self.d_components else frozenset()

    def component_index(self, v) -> int:
        """ -1 for C, j for D^j, None for isolated vertices. """
        if v in self.c_vertices:
            return -1
        for j, comp in enumerate(self.d_components):
            if v in comp:
                return j
        return None


def component_view(g: GameGraph, root_x: int) -> ComponentView:
    if not 0 <= root_x < g.n:
        raise OutOfRange('root {} outside vertex pool 0..{}'.format(root_x, g.n - 1))
    c = g.component_of(root_x)
    d = tuple(comp for comp in g.components() if root_x not in comp)
    isolated = frozenset(v for v in g.isolated_vertices() if v != root_x)
    return ComponentView(root_x, c, d, isolated)


@dataclass(frozen=True)
class FreedomStats:
    f: int
    e: int


def freedom(g: GameGraph, vertices: Iterable[int]) -> FreedomStats:
    vertices = frozenset(vertices)
    f = sum(SATURATED - g.degree(v) for v in vertices)
    # E is additive over the components of the vertex set
    pieces = 0
    seen: Set[int] = set()
    for v in vertices:
        if v in seen:
            continue
        pieces += 1
        stack = [v]
        seen.add(v)
        while stack:
            a = stack.pop()
            for b in g.neighbors(a):
                if b in vertices and b not in seen:
                    seen.add(b)
                    stack.append(b)
    return FreedomStats(f, f - 2 * pieces)


def saturated_sides(g: GameGraph, x: int) -> List[FrozenSet[int]]:
    """
    Components S of G minus x that certify x as an eventual cut vertex:
    every vertex of S has degree 3 and x has one or two neighbours in S.
    """
    sides = []
    seen: Set[int] = set()
    for nb in sorted(g.neighbors(x)):
        if nb in seen:
            continue
        side = g.component_of(nb, removed=x)
        seen |= side
        if any(g.degree(v) != SATURATED for v in side):
            continue
        if 1 <= len(g.neighbors(x) & side) <= 2:
            sides.append(side)
    return sides


def is_eventual_cut_vertex(g: GameGraph, x: int) -> bool:
    return bool(saturated_sides(g, x))


@dataclass(frozen=True)
class WitnessReport:
    kind: Optional[str] = None
    vertex: Optional[int] = None
    component: FrozenSet[int] = field(default_factory=frozenset)

    def __bool__(self):
        return self.kind is not None

    def describe(self) -> str:
        if self.kind is None:
            return 'no witness'
        if self.kind == ECV:
            return 'eventual cut vertex {} (saturated side {})'.format(self.vertex, sorted(self.component))
        return '3-regular component {}'.format(sorted(self.component))

    def to_dict(self) -> Dict:
        return {"kind": self.kind, "vertex": self.vertex, "component": sorted(self.component)}


ECV = "eventual_cut_vertex"
CUBIC = "three_regular_component"
NO_WITNESS = WitnessReport()


def has_witness(g: GameGraph) -> WitnessReport:
    """ Certificate that no cap-3 completion of g can be Hamiltonian (or 2-connected). """
    for comp in g.components():
        if len(comp) < g.n and all(g.degree(v) == SATURATED for v in comp):
            return WitnessReport(CUBIC, None, comp)
    for x in range(g.n):
        if not g.neighbors(x) or all(g.degree(v) != SATURATED for v in g.neighbors(x)):
            continue
        for side in saturated_sides(g, x):
            if g.n - len(side) - 1 >= 1:
                return WitnessReport(ECV, x, side)
    return NO_WITNESS


def find_witness_move(g: GameGraph, candidates: Iterable[int]) -> Optional[MoveEdge]:
    """ Lowest legal edge among the candidate vertices whose addition makes has_witness fire. """
    pool = sorted(set(v for v in candidates if v is not None and g.degree(v) < g.k))
    for i, u in enumerate(pool):
        for v in pool[i + 1:]:
            if g.is_legal(u, v) and has_witness(g.add_edge(u, v)):
                return MoveEdge(u, v)
    return None


def parse_graph_text(text: str, k: Optional[int] = None) -> GameGraph:
    lines = [ln.split('#')[0].strip() for ln in text.splitlines()]
    lines = [ln for ln in lines if ln]
    if not lines:
        raise GraphFormatError('empty graph file')
    head = lines[0].split()
    if len(head) != 2:
        raise GraphFormatError('first line must be "n k", got {!r}'.format(lines[0]))
    try:
        n, cap = int(head[0]), int(head[1])
        edges = []
        for ln in lines[1:]:
            parts = ln.split()
            if len(parts) != 2:
                raise GraphFormatError('edge line must be "u v", got {!r}'.format(ln))
            edges.append((int(parts[0]), int(parts[1])))
    except ValueError as e:
        raise GraphFormatError(str(e))
    return GameGraph.from_edges(n, cap if k is None else k, edges)


def format_graph_text(g: GameGraph) -> str:
    out = ['{} {}'.format(g.n, g.k)]
    out += ['{} {}'.format(u, v) for u, v in g.edges()]
    return '\n'.join(out) + '\n'


def read_graph(path: str) -> GameGraph:
    with open(path) as f:
        text = f.read()
    if path.endswith('.json'):
        try:
            return GameGraph.from_dict(json.loads(text))
        except json.JSONDecodeError as e:
            raise GraphFormatError('bad JSON in {}: {}'.format(path, e))
    return parse_graph_text(text)


def write_graph(g: GameGraph, path: str):
    with open(path, 'w') as f:
        if path.endswith('.json'):
            f.write(json.dumps(g.to_dict()) + '\n')
        else:
            f.write(format_graph_text(g))
