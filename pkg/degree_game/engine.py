""" This file contains the game loop: configuration, the opponents, and run_game, which alternates
the strategy and the opponent until no legal edge remains and records a trace. """

import logging
import random
import time
from dataclasses import dataclass, field
from typing import Callable, Dict, List, Optional, Sequence

from degree_game.avoider_strategy import AvoiderStrategy
from degree_game.builder_strategy import BuilderStrategy, HamPathState, NoPathState, path_invariant_violations
from degree_game.classify import component_labels, effective_freedom
from degree_game.graph_core import GameError, GameGraph, MoveEdge, component_view, freedom, has_witness
from degree_game.oracle import (
    TooLarge, hamilton_cycle, is_two_connected, role_objective, solve, solver_bound,
)
from degree_game.strategy_base import AVOIDER, BUILDER, StrategyError

logger = logging.getLogger(__name__)

STRATEGY = 'strategy'
OPPONENT = 'opponent'
# solver player numbers: the strategy pursues its objective as side 1
STRATEGY_SIDE = 1
OPPONENT_SIDE = 2
OPPONENT_KINDS = ('random', 'greedy', 'solver', 'scripted', 'interactive')

GREEDY_WEIGHTS = {
    'path_end': 2, 'path_inner': 1,
    'merge': 3, 'attach': 2, 'fresh_pair': 1, 'inside': 0,
}


class ConfigError(GameError): pass
class IllegalMoveByOpponent(GameError): pass
class ScriptExhausted(GameError): pass


@dataclass
class GameConfig:
    n: int
    k: int
    first: str = STRATEGY
    role: Optional[str] = AVOIDER
    opponent: str = 'random'
    seed: int = 0
    script: Sequence[Sequence[int]] = ()
    initial_graph: Optional[GameGraph] = None
    n0_threshold: int = 24
    greedy_weights: Dict[str, int] = field(default_factory=lambda: dict(GREEDY_WEIGHTS))
    solver_bounds: Optional[Dict[int, int]] = None

    def validate(self):
        if self.k < 1 or self.n < 0:
            raise ConfigError('need k >= 1 and n >= 0, got n={} k={}'.format(self.n, self.k))
        if self.first not in (STRATEGY, OPPONENT):
            raise ConfigError('first must be {} or {}, got {}'.format(STRATEGY, OPPONENT, self.first))
        if self.role not in (BUILDER, AVOIDER, None):
            raise ConfigError('Unknown role: {}'.format(self.role))
        if self.opponent not in OPPONENT_KINDS:
            raise ConfigError('Unknown opponent: {}'.format(self.opponent))
        if self.role == BUILDER and self.k < 4:
            raise ConfigError('the Hamiltonian strategy needs k >= 4 (for k = 3 the other player wins), got k={}'.format(self.k))
        if self.role == AVOIDER and self.k != 3:
            raise ConfigError('the avoider strategy is for k = 3, got k={}'.format(self.k))
        if self.initial_graph is not None and (self.initial_graph.n, self.initial_graph.k) != (self.n, self.k):
            raise ConfigError('initial graph has n={} k={}, config has n={} k={}'.format(
                self.initial_graph.n, self.initial_graph.k, self.n, self.k))

    def start(self) -> GameGraph:
        return self.initial_graph if self.initial_graph is not None else GameGraph.empty(self.n, self.k)

    def to_dict(self) -> Dict:
        return {
            "n": self.n, "k": self.k, "first": self.first, "role": self.role,
            "opponent": self.opponent, "seed": self.seed,
            "script": [list(m) for m in self.script],
            "initial_graph": self.initial_graph.to_dict() if self.initial_graph is not None else None,
            "n0_threshold": self.n0_threshold,
        }

    @classmethod
    def from_dict(cls, data: Dict) -> 'GameConfig':
        try:
            g0 = data.get("initial_graph")
            return cls(
                n=int(data["n"]), k=int(data["k"]), first=data["first"], role=data["role"],
                opponent=data["opponent"], seed=int(data["seed"]),
                script=[tuple(m) for m in data.get("script", [])],
                initial_graph=GameGraph.from_dict(g0) if g0 else None,
                n0_threshold=int(data.get("n0_threshold", 24)),
            )
        except (KeyError, TypeError, ValueError) as e:
            raise ConfigError('bad config record: {}'.format(e))


@dataclass
class MoveRecord:
    i: int
    player: int
    edge: MoveEdge
    rule: str
    F_C: Optional[int] = None
    E_D: Optional[int] = None
    labels: List[str] = field(default_factory=list)
    witness: Optional[Dict] = None

    def to_dict(self) -> Dict:
        return {
            "i": self.i, "player": self.player, "edge": [self.edge.u, self.edge.v], "rule": self.rule,
            "F_C": self.F_C, "E_D": self.E_D, "labels": list(self.labels), "witness": self.witness,
        }


@dataclass
class GameTrace:
    config: GameConfig
    moves: List[MoveRecord] = field(default_factory=list)
    root: Optional[int] = None
    terminal: Dict = field(default_factory=dict)

    def strategy_player(self) -> Optional[int]:
        if self.config.role is None:
            return None
        return 1 if self.config.first == STRATEGY else 2

    def graphs(self) -> List[GameGraph]:
        """ Positions before the first move and after every move. """
        g = self.config.start()
        out = [g]
        for rec in self.moves:
            g = g.add_edge(rec.edge)
            out.append(g)
        return out

    def first_witness(self) -> Optional[int]:
        for rec in self.moves:
            if rec.witness is not None:
                return rec.witness["at"]
        return None


def snapshot(g: GameGraph, root: Optional[int], witness_at: Optional[int]) -> Dict:
    """ Per-move trace fields; the component statistics only exist for the cap-3 game. """
    if g.k != 3:
        return {"F_C": None, "E_D": None, "labels": [], "witness": None}
    witness = has_witness(g)
    record = {"labels": component_labels(g), "witness": None, "F_C": None, "E_D": None}
    if root is not None:
        view = component_view(g, root)
        record["F_C"] = freedom(g, view.c_vertices).f
        record["E_D"] = effective_freedom(g, view.d_components)
    if witness:
        record["witness"] = {"kind": witness.kind, "at": witness_at}
    return record


def terminal_outcomes(g: GameGraph, role: Optional[str]) -> Dict:
    hamiltonian = hamilton_cycle(g) is not None
    two_connected = is_two_connected(g)
    met = None
    if role == BUILDER:
        met = hamiltonian
    elif role == AVOIDER:
        met = not two_connected
    return {
        "edges": g.edge_count, "hamiltonian": hamiltonian, "two_connected": two_connected,
        "objective_met": met, "witness": has_witness(g).describe() if g.k == 3 else None,
    }


class RandomOpponent:
    def __init__(self, seed: int):
        self.rng = random.Random(seed)

    def choose(self, g: GameGraph, last: Optional[MoveEdge]) -> MoveEdge:
        return self.rng.choice(g.legal_moves())


class GreedyOpponent:
    """
    Scores every legal move against the strategy's objective and plays a best one, breaking
    ties with the seeded generator.

    Against the Hamiltonian player it prefers edges at low-degree vertices (path ends have
    degree 1, inner path vertices degree 2); against the avoider it prefers edges that merge
    components, then edges that pull in isolated vertices.
    """
    def __init__(self, seed: int, against: str, weights: Optional[Dict[str, int]] = None):
        self.rng = random.Random(seed)
        self.against = against
        self.weights = dict(GREEDY_WEIGHTS)
        self.weights.update(weights or {})

    def score(self, g: GameGraph, m: MoveEdge) -> int:
        w = self.weights
        if self.against == BUILDER:
            return sum(w['path_end'] if g.degree(v) == 1 else w['path_inner'] if g.degree(v) == 2 else 0 for v in m)
        iso_u, iso_v = g.degree(m.u) == 0, g.degree(m.v) == 0
        if iso_u and iso_v:
            return w['fresh_pair']
        if iso_u or iso_v:
            return w['attach']
        if m.v in g.component_of(m.u):
            return w['inside']
        return w['merge']

    def choose(self, g: GameGraph, last: Optional[MoveEdge]) -> MoveEdge:
        moves = g.legal_moves()
        scores = [self.score(g, m) for m in moves]
        best = max(scores)
        return self.rng.choice([m for m, s in zip(moves, scores) if s == best])


class SolverOpponent:
    """
    Perfect play against the strategy's role while n is within the solver bound, random beyond.

    The solver values the strategy's own objective with the opponent to move, so the principal
    move is a refutation whenever one exists.
    """
    def __init__(self, seed: int, against: str, bounds: Optional[Dict[int, int]] = None):
        self.fallback = RandomOpponent(seed)
        self.objective = role_objective(against)
        self.bounds = bounds

    def choose(self, g: GameGraph, last: Optional[MoveEdge]) -> MoveEdge:
        if g.n > solver_bound(g.k, self.bounds):
            return self.fallback.choose(g, last)
        try:
            result = solve(g, STRATEGY_SIDE, self.objective, self.bounds, to_move=OPPONENT_SIDE)
        except TooLarge:
            return self.fallback.choose(g, last)
        return result.principal_move or self.fallback.choose(g, last)


class ScriptedOpponent:
    def __init__(self, moves: Sequence[Sequence[int]]):
        self.moves = [tuple(m) for m in moves]
        self.pos = 0

    def choose(self, g: GameGraph, last: Optional[MoveEdge]) -> MoveEdge:
        if self.pos >= len(self.moves):
            raise ScriptExhausted('script of {} moves ran out on {}'.format(len(self.moves), g))
        a, b = self.moves[self.pos]
        self.pos += 1
        return MoveEdge.of(a, b)


class InteractiveOpponent:
    def __init__(self, ask: Callable[[GameGraph, Optional[MoveEdge]], Sequence[int]]):
        self.ask = ask

    def choose(self, g: GameGraph, last: Optional[MoveEdge]) -> MoveEdge:
        a, b = self.ask(g, last)
        return MoveEdge.of(a, b)


def make_opponent(cfg: GameConfig, ask: Optional[Callable] = None):
    against = cfg.role if cfg.role is not None else BUILDER
    if cfg.opponent == 'random':
        return RandomOpponent(cfg.seed)
    if cfg.opponent == 'greedy':
        return GreedyOpponent(cfg.seed, against, cfg.greedy_weights)
    if cfg.opponent == 'solver':
        return SolverOpponent(cfg.seed, against, cfg.solver_bounds)
    if cfg.opponent == 'scripted':
        return ScriptedOpponent(cfg.script)
    if cfg.opponent == 'interactive':
        if ask is None:
            raise ConfigError('interactive opponent needs an input callback')
        return InteractiveOpponent(ask)
    raise ConfigError('Unknown opponent: {}'.format(cfg.opponent))


def make_strategy(role: Optional[str]):
    if role == BUILDER:
        return BuilderStrategy()
    if role == AVOIDER:
        return AvoiderStrategy()
    return None


def opponent_move(opponent, g: GameGraph, last: Optional[MoveEdge] = None) -> MoveEdge:
    """ Next opponent edge, validated against g. """
    m = opponent.choose(g, last)
    try:
        g.check_move(m)
    except GameError as e:
        raise IllegalMoveByOpponent('illegal: {}'.format(e))
    return m


def run_game(cfg: GameConfig, opponent=None, strategy=None,
             on_move: Optional[Callable[[MoveRecord, GameGraph], None]] = None) -> GameTrace:
    cfg.validate()
    opponent = opponent if opponent is not None else make_opponent(cfg)
    strategy = strategy if strategy is not None else make_strategy(cfg.role)
    g = cfg.start()
    trace = GameTrace(cfg)
    trace.root = g.edges()[0].u if g.edge_count else None
    strategy_player = trace.strategy_player()
    state = strategy.initial_state(g) if strategy is not None else None
    last_opp = None
    witness_at = None
    player = 1
    start_time = time.time()

    while not g.is_terminal():
        i = len(trace.moves)
        if strategy is not None and player == strategy_player:
            decision, state = strategy.move(state, g, last_opp)
            try:
                after = g.add_edge(decision.edge)
            except GameError as e:
                raise StrategyError('strategy move {} ({}) rejected at move {}: {}'.format(
                    tuple(decision.edge), decision.rule, i, e))
            if isinstance(state, HamPathState):
                problems = path_invariant_violations(state, after)
                if problems:
                    raise NoPathState('path invariant broken at move {}: {}'.format(i, '; '.join(problems)))
            edge, rule = decision.edge, decision.rule
        else:
            edge = opponent_move(opponent, g, last_opp)
            after = g.add_edge(edge)
            rule = 'opponent'
            last_opp = edge
        g = after
        if trace.root is None:
            trace.root = edge.u
        if witness_at is None and g.k == 3 and has_witness(g):
            witness_at = i
        trace.moves.append(MoveRecord(i, player, edge, rule, **snapshot(g, trace.root, witness_at)))
        if on_move is not None:
            on_move(trace.moves[-1], g)
        player = 3 - player

    trace.terminal = terminal_outcomes(g, cfg.role)
    logger.debug('game params: n={} k={} role={} first={} seed={} moves={} outcome={} ({:.2f} sec)'.format(
        cfg.n, cfg.k, cfg.role, cfg.first, cfg.seed, len(trace.moves), trace.terminal, time.time() - start_time))
    return trace
