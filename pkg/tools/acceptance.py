# coding: utf-8

import argparse
import os
import random
import sys
import time
from itertools import chain, combinations

import networkx as nx
import numpy as np
from tqdm import tqdm

current_dir = os.path.dirname(os.path.abspath(__file__))
sys.path.append(os.path.dirname(current_dir))

from degree_game.avoider_strategy import pair_four_degree2
from degree_game.builder_strategy import BuilderStrategy
from degree_game.engine import OPPONENT, STRATEGY, GameConfig, run_game
from degree_game.graph_core import GameGraph, has_witness
from degree_game.monitors import run_monitors
from degree_game.oracle import (
    OBJECTIVES, brute_force_value, exhaust_adversary, hamiltonian_completion_exists, solve,
)
from degree_game.strategy_base import AVOIDER, BUILDER, StrategyError
from degree_game.trace_io import check_trace, trace_lines

import logging
log_format = "%(asctime)s.%(msecs)03d [%(levelname)s] %(module)s - %(message)s"
date_format = "%H:%M:%S"
logging.basicConfig(level = logging.INFO, format = log_format, datefmt = date_format)
logger = logging.getLogger(__name__)


def exhaustive_builder(args):
    ok = True
    for n in (4, 5, 6):
        for first in (True, False):
            report = exhaust_adversary(BuilderStrategy(), BUILDER, GameGraph.empty(n, 4), first)
            logger.info('Exhaustive builder n={} first={}: {}'.format(n, first, report.summary()))
            ok = ok and report.universal
    return ok, {}


def games(role, k, n, opponent, count, seed):
    results = []
    progress_bar = tqdm(range(count), desc='{} k={} n={} {}'.format(role, k, n, opponent))
    for i in progress_bar:
        first = STRATEGY if i % 2 == 0 else OPPONENT
        try:
            trace = run_game(GameConfig(n, k, first, role, opponent, seed + i, n0_threshold=n))
        except StrategyError as e:
            logger.error('Seed {} broke the strategy: {}'.format(seed + i, e))
            results.append((False, None))
            continue
        results.append((bool(trace.terminal['objective_met']), trace))
        progress_bar.set_postfix({'ok': sum(1 for r, _ in results if r)})
    return results


def randomized_builder(args):
    ok = True
    for k in (4, 5):
        for n in (8, 12, 16, 20):
            results = games(BUILDER, k, n, 'random', args.games, args.seed)
            rate = np.mean([r for r, _ in results])
            logger.info('Builder k={} n={}: success {:.4f}'.format(k, n, rate))
            ok = ok and rate == 1.0
    return ok, {}


def sweep_n0(args, opponent, start):
    """ Walks down from a winning size while every seed still wins; True when the floor was reached. """
    n0 = start
    for n in range(start - 1, args.n0_floor - 1, -1):
        results = games(AVOIDER, 3, n, opponent, args.games, args.seed)
        if not all(r for r, _ in results):
            logger.info('Avoider {} loses a game at n={}, sweep stops'.format(opponent, n))
            return n0, False
        n0 = n
    return n0, True


def avoider_runs(args, opponent):
    ok = True
    passed = {}
    monitor_failures = {}
    for n in sorted(args.avoider_sizes):
        results = games(AVOIDER, 3, n, opponent, args.games, args.seed)
        rate = np.mean([r for r, _ in results])
        witness = np.mean([t.first_witness() is not None for _, t in results if t is not None])
        for _, trace in results:
            if trace is None:
                continue
            for report in run_monitors(trace):
                if report.skipped is None and not report.passed:
                    monitor_failures[report.name] = monitor_failures.get(report.name, 0) + 1
        logger.info('Avoider {} n={}: success {:.4f}, witness in {:.4f} of traces'.format(opponent, n, rate, witness))
        passed[n] = rate == 1.0
        ok = ok and rate == 1.0 and witness == 1.0

    sizes = sorted(passed)
    winning = [n for i, n in enumerate(sizes) if all(passed[m] for m in sizes[i:])]
    n0, floor_reached, exact = None, False, False
    if winning and winning[0] == sizes[0]:
        n0, floor_reached = sweep_n0(args, opponent, sizes[0])
        exact = not floor_reached
    elif winning:
        n0 = winning[0]
    logger.info('Empirical n0 ({}): {} ({})'.format(
        opponent, n0, 'smallest winning size' if exact else 'upper bound'))
    details = {'n0': n0, 'n0_exact': exact, 'n0_floor_reached': floor_reached, 'monitor_failures': monitor_failures}
    return ok and not monitor_failures, details


def solver_truth(args):
    ok = solve(GameGraph.empty(3, 3)).mover_wins and not solve(GameGraph.empty(2, 3)).mover_wins
    for k in (3, 4):
        for n in range(1, 6):
            g = GameGraph.empty(n, k)
            for objective in OBJECTIVES:
                fast = solve(g, 1, objective).mover_wins
                slow = brute_force_value(g, objective)
                if fast != slow:
                    logger.error('Solver disagrees on k={} n={} {}: {} vs {}'.format(k, n, objective, fast, slow))
                    ok = False
    return ok, {}


def random_capped_graph(rng, n):
    g = GameGraph.empty(n, 3)
    for _ in range(rng.randint(0, 3 * n // 2)):
        moves = g.legal_moves()
        if not moves:
            break
        g = g.add_edge(rng.choice(moves))
    return g


def all_capped_graphs(n):
    pairs = list(combinations(range(n), 2))
    for mask in range(1 << len(pairs)):
        edges = [pairs[i] for i in range(len(pairs)) if mask >> i & 1]
        degrees = [0] * n
        for u, v in edges:
            degrees[u] += 1
            degrees[v] += 1
        if max(degrees) <= 3:
            yield GameGraph.from_edges(n, 3, edges)


def witness_soundness(args):
    rng = random.Random(args.seed)
    fired = 0
    bad = 0
    small = (g for n in range(3, 7) for g in all_capped_graphs(n))
    sampled = (random_capped_graph(rng, rng.randint(3, 9)) for _ in range(args.samples))
    for g in tqdm(chain(small, sampled), desc='witness soundness'):
        if has_witness(g):
            fired += 1
            if hamiltonian_completion_exists(g):
                logger.error('Witness on a completable graph: {}'.format(g))
                bad += 1
    logger.info('Witness soundness: {} witnesses, {} counterexamples'.format(fired, bad))
    return bad == 0, {'witnesses': fired}


def four_pairing(args):
    rng = random.Random(args.seed)
    checked = 0
    for _ in tqdm(range(args.samples), desc='four-vertex pairing'):
        m = rng.choice([4, 6, 8, 10, 12])
        G = nx.random_regular_graph(3, m, seed=rng.randint(0, 10 ** 9))
        edges = list(G.edges())
        e1, e2 = rng.sample(edges, 2)
        if set(e1) & set(e2):
            continue
        G.remove_edges_from([e1, e2])
        if not nx.is_connected(G):
            continue
        g = GameGraph.from_edges(m, 3, G.edges())
        four = sorted(set(e1) | set(e2))
        (u, v), (p, q) = pair_four_degree2(g, range(m), four)
        if g.has_edge(u, v) or g.has_edge(p, q):
            logger.error('Pairing with an adjacent pair on {}'.format(g))
            return False, {}
        checked += 1
    return True, {'checked': checked}


def reproducibility(args):
    for i in range(10):
        cfg = GameConfig(args.avoider_sizes[0], 3, STRATEGY, AVOIDER, 'random', args.seed + i)
        a, b = run_game(cfg), run_game(cfg)
        if trace_lines(a) != trace_lines(b):
            return False, {}
        check_trace(a)
    return True, {}


CRITERIA = {
    'exhaustive-builder': exhaustive_builder,
    'random-builder': randomized_builder,
    'random-avoider': lambda args: avoider_runs(args, 'random'),
    'greedy-avoider': lambda args: avoider_runs(args, 'greedy'),
    'solver': solver_truth,
    'witness-soundness': witness_soundness,
    'pairing': four_pairing,
    'replay': reproducibility,
}


def acceptance(args):
    parser = argparse.ArgumentParser()
    parser.add_argument("--only", nargs='+', default=sorted(CRITERIA), choices=sorted(CRITERIA))
    parser.add_argument("--games", type=int, default=1000)
    parser.add_argument("--samples", type=int, default=10000)
    parser.add_argument("--avoider_sizes", nargs='+', type=int, default=[24, 30, 40])
    parser.add_argument("--n0_floor", type=int, default=6, help="smallest n tried when sweeping down for n0")
    parser.add_argument("--seed", type=int, default=0)
    parser.add_argument("--store_dir", default="", type=str, help="where to write results.txt")
    if args is None:
        args = parser.parse_args()
    else:
        args = parser.parse_args(args)

    start_time = time.time()
    outcome = {}
    for name in args.only:
        ok, details = CRITERIA[name](args)
        outcome[name] = (ok, details)
        logger.info('Criterion {}: {} {}'.format(name, 'pass' if ok else 'FAIL', details))

    if args.store_dir != "":
        if not os.path.isdir(args.store_dir):
            os.makedirs(args.store_dir)
        with open(os.path.join(args.store_dir, 'results.txt'), 'w') as out:
            out.write(str(args) + "\n")
            for name, (ok, details) in outcome.items():
                out.write("{}: {} {}".format(name, 'pass' if ok else 'FAIL', details) + "\n")
            out.write("Elapsed time: {:.2f} sec".format(time.time() - start_time) + "\n")
    logger.info("Elapsed time: {:.2f} sec".format(time.time() - start_time))
    return 0 if all(ok for ok, _ in outcome.values()) else 1


if __name__ == "__main__":
    sys.exit(acceptance(None))
