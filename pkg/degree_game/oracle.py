""" This file contains the ground-truth computations: Hamilton cycles, 2-connectivity,
canonical forms, the exact minimax solver and the exhaustive adversary. """

import logging
import time
from collections import Counter
from dataclasses import dataclass, field
from typing import Dict, Hashable, List, Optional, Sequence, Tuple

import networkx as nx

from degree_game.graph_core import GameError, GameGraph, MoveEdge, has_witness
from degree_game.strategy_base import BUILDER, StrategyDecision, StrategyError
from degree_game.transposition import TranspositionTable

logger = logging.getLogger(__name__)

FORCE_HAMILTONIAN = 'ForceHamiltonian'
AVOID_HAMILTONIAN = 'AvoidHamiltonian'
AVOID_TWO_CONNECTED = 'AvoidTwoConnected'
OBJECTIVES = (FORCE_HAMILTONIAN, AVOID_HAMILTONIAN, AVOID_TWO_CONNECTED)

CANONICAL_BOUND = 8
SOLVER_BOUNDS = {3: 7, 4: 6}
DEFAULT_SOLVER_BOUND = 6


class TooLarge(GameError): pass


def to_networkx(g: GameGraph) -> nx.Graph:
    G = nx.Graph()
    G.add_nodes_from(range(g.n))
    G.add_edges_from(g.edges())
    return G


def hamilton_cycle(g: GameGraph) -> Optional[List[int]]:
    n = g.n
    if n < 3:
        return None
    if any(g.degree(v) < 2 for v in range(n)) or not g.is_connected():
        return None
    path = [0]
    visited = [False] * n
    visited[0] = True

    def extend(cur):
        if len(path) == n:
            return g.has_edge(cur, 0)
        for nxt in sorted(g.neighbors(cur)):
            if visited[nxt]:
                continue
            visited[nxt] = True
            path.append(nxt)
            if extend(nxt):
                return True
            path.pop()
            visited[nxt] = False
        return False

    return list(path) if extend(0) else None


def is_two_connected(g: GameGraph) -> bool:
    if g.n < 3:
        return False
    return nx.is_biconnected(to_networkx(g))


def hamiltonian_completion_exists(g: GameGraph, cap: int = 3) -> bool:
    """ True iff some supergraph of g on the same vertices with max degree <= cap is Hamiltonian. """
    n = g.n
    if n < 3:
        return False
    budget = [cap - g.degree(v) for v in range(n)]
    if any(b < 0 for b in budget):
        return False
    visited = [False] * n
    visited[0] = True

    def step(a, b):
        # returns the budget cost of using (a, b) or None when unusable
        if g.has_edge(a, b):
            return 0
        if budget[a] > 0 and budget[b] > 0:
            return 1
        return None

    def extend(cur, depth):
        if depth == n:
            return step(cur, 0) is not None
        for nxt in range(1, n):
            if visited[nxt]:
                continue
            cost = step(cur, nxt)
            if cost is None:
                continue
            visited[nxt] = True
            budget[cur] -= cost
            budget[nxt] -= cost
            if extend(nxt, depth + 1):
                return True
            budget[cur] += cost
            budget[nxt] += cost
            visited[nxt] = False
        return False

    return extend(0, 1)


def objective_met(g: GameGraph, objective: str) -> bool:
    if objective == FORCE_HAMILTONIAN:
        return hamilton_cycle(g) is not None
    if objective == AVOID_HAMILTONIAN:
        return hamilton_cycle(g) is None
    if objective == AVOID_TWO_CONNECTED:
        return not is_two_connected(g)
    raise ValueError('Unknown objective: {}'.format(objective))


@dataclass(frozen=True)
class CanonicalForm:
    key: bytes
    order: Tuple[int, ...] = ()


def _refine(g: GameGraph, colors: List[int]) -> List[int]:
    while True:
        sigs = [(colors[v], tuple(sorted(colors[u] for u in g.neighbors(v)))) for v in range(g.n)]
        ranks = {s: i for i, s in enumerate(sorted(set(sigs)))}
        refined = [ranks[s] for s in sigs]
        if len(ranks) == len(set(colors)):
            return refined
        colors = refined


def canonical_form(g: GameGraph, side: int = 1, colors: Optional[Sequence[int]] = None,
                   bound: int = CANONICAL_BOUND) -> CanonicalForm:
    """
    Canonical key of g up to vertex relabeling, by colour refinement and individualization.

    `colors` is an optional initial vertex colouring (kept invariant), used to carry
    strategy state into the key.
    """
    n = g.n
    if n > bound:
        raise TooLarge('canonical form limited to n <= {}, got {}'.format(bound, n))
    base = list(colors) if colors is not None else [0] * n
    # seed ranks depend only on (colour, degree), never on labels
    seeds = sorted(set((base[v], g.degree(v)) for v in range(n)))
    rank = {s: i for i, s in enumerate(seeds)}
    start = _refine(g, [rank[(base[v], g.degree(v))] for v in range(n)]) if n else []

    best = [None, ()]

    def search(cols):
        cols = _refine(g, cols)
        counts = Counter(cols)
        if len(counts) == n:
            order = tuple(sorted(range(n), key=lambda v: cols[v]))
            cert = (
                tuple(sorted((min(cols[u], cols[v]), max(cols[u], cols[v])) for u, v in g.edges())),
                tuple(base[v] for v in order),
            )
            if best[0] is None or cert < best[0]:
                best[0] = cert
                best[1] = order
            return
        target = min(c for c, cnt in counts.items() if cnt > 1)
        for v in range(n):
            if cols[v] != target:
                continue
            search([2 * c + (1 if c == target and u != v else 0) for u, c in enumerate(cols)])

    if n:
        search(start)
    key = repr((n, g.k, side, best[0])).encode()
    return CanonicalForm(key, best[1])


@dataclass
class SolveResult:
    """ `side` pursues the objective; `to_move` is the player whose turn it is. """
    objective: str
    side: int
    to_move: int
    side_wins: bool
    principal_move: Optional[MoveEdge]
    nodes_expanded: int

    @property
    def mover_wins(self) -> bool:
        return self.side_wins if self.side == self.to_move else not self.side_wins

    def to_dict(self, g: GameGraph) -> Dict:
        return {
            "k": g.k, "n": g.n, "side": self.side, "to_move": self.to_move, "objective": self.objective,
            "side_wins": self.side_wins, "mover_wins": self.mover_wins,
            "principal_move": list(self.principal_move) if self.principal_move else None,
            "nodes": self.nodes_expanded,
        }


def solver_bound(k: int, bounds: Optional[Dict[int, int]] = None) -> int:
    bounds = SOLVER_BOUNDS if bounds is None else bounds
    return int(bounds.get(k, DEFAULT_SOLVER_BOUND))


def settled_value(g: GameGraph, objective: str) -> Optional[bool]:
    """ Early value for the pursuer when the outcome can no longer change, else None. """
    if hamilton_cycle(g) is not None:
        return objective == FORCE_HAMILTONIAN
    if g.k == 3 and has_witness(g):
        return objective != FORCE_HAMILTONIAN
    return None


class Solver:
    """
    Exact minimax over the game tree, memoized on canonical forms.

    Values are stored from the point of view of the player pursuing the objective, keyed by
    (canonical position, pursuer-to-move).
    """
    def __init__(self, objective: str, table: Optional[TranspositionTable] = None):
        if objective not in OBJECTIVES:
            raise ValueError('Unknown objective: {}'.format(objective))
        self.objective = objective
        self.table = table if table is not None else TranspositionTable()
        self.nodes = 0

    def pursuer_wins(self, g: GameGraph, pursuer_to_move: bool) -> bool:
        key = canonical_form(g, 1 if pursuer_to_move else 2).key
        cached = self.table.lookup(key)
        if cached is not None:
            return cached
        self.nodes += 1
        value = settled_value(g, self.objective)
        if value is None:
            moves = g.legal_moves()
            if not moves:
                value = objective_met(g, self.objective)
            elif pursuer_to_move:
                value = any(self.pursuer_wins(g.add_edge(m), False) for m in moves)
            else:
                value = all(self.pursuer_wins(g.add_edge(m), True) for m in moves)
        self.table.store(key, value)
        return value

    def solve(self, g: GameGraph, pursuer_to_move: bool = True) -> Tuple[bool, Optional[MoveEdge]]:
        """ Pursuer's value and the mover's best move: a winning move, or a refutation. """
        value = self.pursuer_wins(g, pursuer_to_move)
        principal = None
        for m in g.legal_moves():
            if self.pursuer_wins(g.add_edge(m), not pursuer_to_move) == value:
                principal = m
                break
        return value, principal


def player_to_move(g: GameGraph) -> int:
    """ Player 1 opens the game, so it moves whenever the edge count is even. """
    return 1 if g.edge_count % 2 == 0 else 2


def solve(g: GameGraph, side: int = 1, objective: str = FORCE_HAMILTONIAN,
          bounds: Optional[Dict[int, int]] = None, table: Optional[TranspositionTable] = None,
          to_move: Optional[int] = None) -> SolveResult:
    if side not in (1, 2) or to_move not in (None, 1, 2):
        raise ValueError('players are 1 and 2, got side={} to_move={}'.format(side, to_move))
    limit = solver_bound(g.k, bounds)
    if g.n > limit:
        raise TooLarge('solver limited to n <= {} for k={}, got n={}'.format(limit, g.k, g.n))
    mover = player_to_move(g) if to_move is None else to_move
    start_time = time.time()
    solver = Solver(objective, table)
    value, principal = solver.solve(g, pursuer_to_move=(mover == side))
    result = SolveResult(objective, side, mover, value, principal, solver.nodes)
    logger.debug('solve params: n={} k={} side={} to_move={} objective={} -> {} ({} nodes, {:.2f} sec)'.format(
        g.n, g.k, side, mover, objective, value, result.nodes_expanded, time.time() - start_time))
    return result


def brute_force_value(g: GameGraph, objective: str, pursuer_to_move: bool = True,
                      memo: Optional[Dict] = None) -> bool:
    """ Reference minimax on exact labelled positions: no canonical forms, no early cut-offs. """
    memo = {} if memo is None else memo
    key = (g, pursuer_to_move)
    if key in memo:
        return memo[key]
    moves = g.legal_moves()
    if not moves:
        value = objective_met(g, objective)
    elif pursuer_to_move:
        value = any(brute_force_value(g.add_edge(m), objective, False, memo) for m in moves)
    else:
        value = all(brute_force_value(g.add_edge(m), objective, True, memo) for m in moves)
    memo[key] = value
    return value


def role_objective(role: str) -> str:
    return FORCE_HAMILTONIAN if role == BUILDER else AVOID_TWO_CONNECTED


def role_settled(g: GameGraph, role: str) -> bool:
    """ True once the role's objective is guaranteed whatever happens next. """
    if role == BUILDER:
        return hamilton_cycle(g) is not None
    return g.k == 3 and bool(has_witness(g))


@dataclass
class ExhaustReport:
    role: str
    lines: int = 0
    nodes: int = 0
    pruned: int = 0
    terminal_classes: Dict[bytes, bool] = field(default_factory=dict)
    failures: List[List[MoveEdge]] = field(default_factory=list)
    errors: List[Tuple[str, List[MoveEdge]]] = field(default_factory=list)
    truncated: bool = False

    @property
    def successes(self) -> int:
        return sum(1 for ok in self.terminal_classes.values() if ok)

    @property
    def universal(self) -> bool:
        return not self.failures and not self.errors and not self.truncated

    def summary(self) -> Dict:
        return {
            "role": self.role, "lines": self.lines, "nodes": self.nodes, "pruned": self.pruned,
            "terminal_classes": len(self.terminal_classes), "successful_classes": self.successes,
            "failures": len(self.failures), "errors": len(self.errors), "truncated": self.truncated,
        }


MAX_RECORDED_FAILURES = 20


def exhaust_adversary(strategy, role: str, g0: GameGraph, strategy_first: bool = True,
                      bound: int = CANONICAL_BOUND, max_nodes: Optional[int] = None,
                      prune: str = 'iso') -> ExhaustReport:
    """
    Plays `strategy` for `role` against every opponent line from g0.

    The strategy object exposes initial_state(), move(state, g, opp) -> (decision, state) and
    signature(state, g) -> (vertex colours, extra); positions are merged on the canonical form
    of the graph coloured by the strategy state (prune='iso') or on the exact labelled
    position (prune='exact').
    """
    if g0.n > bound:
        raise TooLarge('exhaustive search limited to n <= {}, got {}'.format(bound, g0.n))
    report = ExhaustReport(role)
    seen = set()
    objective = role_objective(role)

    def position_key(g, state, to_move, opp):
        colors, extra = strategy.signature(state, g)
        # replies depend on the last opponent edge, so its endpoints are marked
        colors = [2 * c + (1 if opp is not None and opp.touches(v) else 0) for v, c in enumerate(colors)]
        if prune == 'exact':
            return (g, tuple(colors), extra, to_move)
        return (canonical_form(g, 1 if to_move else 2, colors, bound).key, extra)

    def explore(g, state, strategy_to_move, opp, line):
        if max_nodes is not None and report.nodes >= max_nodes:
            report.truncated = True
            return
        report.nodes += 1
        if role_settled(g, role):
            report.lines += 1
            report.terminal_classes[canonical_form(g, 0, None, bound).key] = True
            return
        moves = g.legal_moves()
        if not moves:
            report.lines += 1
            ok = objective_met(g, objective)
            report.terminal_classes[canonical_form(g, 0, None, bound).key] = ok
            if not ok and len(report.failures) < MAX_RECORDED_FAILURES:
                report.failures.append(list(line))
            elif not ok:
                report.failures.append([])
            return
        key = position_key(g, state, strategy_to_move, opp)
        if key in seen:
            report.pruned += 1
            return
        seen.add(key)
        if strategy_to_move:
            try:
                decision, state = strategy.move(state, g, opp)
                g.check_move(decision.edge)
            except (StrategyError, GameError) as e:
                logger.warning('strategy error on line {}: {}'.format(line, e))
                report.errors.append((str(e), list(line)))
                return
            explore(g.add_edge(decision.edge), state, False, None, line + [decision.edge])
        else:
            for m in moves:
                explore(g.add_edge(m), state, True, m, line + [m])

    explore(g0, strategy.initial_state(g0), strategy_first, None, [])
    logger.info('exhaust {}: {}'.format(role, report.summary()))
    return report


class SolverStrategy:
    """ Plays the solver's principal move for the role's objective; stateless. """
    def __init__(self, role: str, bounds: Optional[Dict[int, int]] = None):
        self.role = role
        self.objective = role_objective(role)
        self.bounds = bounds
        self.table = TranspositionTable()

    def initial_state(self, g0):
        return None

    def move(self, state, g, opp):
        result = solve(g, 1, self.objective, self.bounds, self.table, to_move=1)
        return StrategyDecision(result.principal_move, 'solver'), state

    def signature(self, state, g):
        return [0] * g.n, None
