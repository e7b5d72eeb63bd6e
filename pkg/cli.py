# coding: utf-8

import argparse
import json
import multiprocessing
import os
import sys
import time

from tqdm import tqdm

current_dir = os.path.dirname(os.path.abspath(__file__))
sys.path.append(current_dir)

from utils import ConfigKeyError, default_seed, get_config, summarize_games, write_results
from degree_game.avoider_strategy import AvoiderStrategy, tracked_vertex
from degree_game.builder_strategy import BuilderStrategy
from degree_game.classify import classify_avoider_state, classify_component, classify_graph_type_a, effective_freedom
from degree_game.engine import (
    OPPONENT, STRATEGY, GameConfig, make_opponent, run_game,
)
from degree_game.graph_core import (
    DegreeCapExceeded, DuplicateEdge, GameError, GameGraph, OutOfRange, SelfLoop, component_view, freedom,
    has_witness, read_graph,
)
from degree_game.monitors import run_monitors
from degree_game.oracle import OBJECTIVES, exhaust_adversary, solve
from degree_game.strategy_base import AVOIDER, BUILDER, StrategyError
from degree_game.trace_io import ReplayMismatch, TraceParseError, check_trace, read_trace, trace_lines

import logging
log_format = "%(asctime)s.%(msecs)03d [%(levelname)s] %(module)s - %(message)s"
date_format = "%H:%M:%S"
logging.basicConfig(level = logging.INFO, format = log_format, datefmt = date_format)
logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_FAIL = 1
EXIT_USAGE = 2


def solver_bounds(config):
    return {int(k): int(v) for k, v in config.oracle.solver_bounds.items()}


def check_role(parser, role, k):
    if role == BUILDER and k < 4:
        parser.error('role builder needs k >= 4: for k = 3 the other player wins, and for k >= 4 the Hamiltonian player does')
    if role == AVOIDER and k != 3:
        parser.error('role avoider needs k = 3: its strategy is for the cap-3 game only')


def play_one(cfg):
    """ Runs one game and returns a picklable summary with the trace lines. """
    result = {'seed': cfg.seed, 'error': None, 'lines': None, 'monitors': {}}
    try:
        trace = run_game(cfg)
    except (StrategyError, GameError) as e:
        result.update(error='{}: {}'.format(type(e).__name__, e), moves=0, objective_met=False, witness_at=None)
        return result
    result.update(
        moves=len(trace.moves), objective_met=bool(trace.terminal['objective_met']),
        witness_at=trace.first_witness(), lines=trace_lines(trace),
        monitors={r.name: r.passed for r in run_monitors(trace) if r.skipped is None},
    )
    return result


def simulate_mp(proc_id, queue, total, return_dict):
    if proc_id == 0:
        progress_bar = tqdm(total=total)
    results = []
    while True:
        current_step, cfg = queue.get()
        if cfg is None:  # sentinel
            break
        results.append(play_one(cfg))
        if proc_id == 0:
            progress_bar.update(current_step - progress_bar.n)
            progress_bar.set_postfix({'ok': sum(1 for r in results if r['objective_met'])})
    return_dict[proc_id] = results


def run_games(configs, jobs):
    if jobs <= 1:
        results = []
        progress_bar = tqdm(configs)
        for cfg in progress_bar:
            results.append(play_one(cfg))
            progress_bar.set_postfix({'ok': sum(1 for r in results if r['objective_met'])})
        return results

    queue = multiprocessing.Queue()
    return_dict = multiprocessing.Manager().dict()
    processes = []
    for i in range(jobs):
        p = multiprocessing.Process(target=simulate_mp, args=(i, queue, len(configs), return_dict))
        p.start()
        processes.append(p)
    for i, cfg in enumerate(configs):
        queue.put((i, cfg))
    for _ in range(jobs):
        queue.put((None, None))
    for p in processes:
        p.join()
    results = []
    for i in range(jobs):
        results += return_dict[i]
    return sorted(results, key=lambda r: r['seed'])


def simulate(args, config):
    parser = argparse.ArgumentParser(prog='cli.py simulate')
    parser.add_argument("--k", type=int, default=config.game.k, help="degree cap")
    parser.add_argument("--n", type=int, default=config.game.n, help="number of vertices")
    parser.add_argument("--role", type=str, choices=[BUILDER, AVOIDER], default=AVOIDER, help="strategy played by the engine")
    parser.add_argument("--first", type=str, choices=[STRATEGY, OPPONENT], default=config.game.first, help="who moves first")
    parser.add_argument("--opponent", type=str, choices=['random', 'greedy', 'solver'], default='random')
    parser.add_argument("--seed", type=int, default=None, help="first seed (default: {} or config)".format('DEGREE_GAME_SEED'))
    parser.add_argument("--games", type=int, default=config.simulate.games)
    parser.add_argument("--trace", type=str, default='', help="directory for trace files and results.txt")
    parser.add_argument("--n0", type=int, default=config.simulate.n0_threshold, help="size from which the avoider must win")
    parser.add_argument("--jobs", type=int, default=config.simulate.jobs, help="worker processes")
    args = parser.parse_args(args)
    check_role(parser, args.role, args.k)
    if args.games < 1 or args.n < 0:
        parser.error('--games must be positive and --n non-negative')

    seed = args.seed if args.seed is not None else default_seed(config)
    weights = config.opponent.to_dict()
    configs = [
        GameConfig(args.n, args.k, args.first, args.role, args.opponent, seed + i, n0_threshold=args.n0,
                   greedy_weights=weights, solver_bounds=solver_bounds(config))
        for i in range(args.games)
    ]
    for cfg in configs:
        cfg.validate()

    start_time = time.time()
    results = run_games(configs, args.jobs)

    broken = [r for r in results if r['error'] is not None]
    monitor_failures = {}
    for r in results:
        for name, passed in r['monitors'].items():
            monitor_failures.setdefault(name, 0)
            monitor_failures[name] += 0 if passed else 1
    if args.trace != '':
        if not os.path.isdir(args.trace):
            os.makedirs(args.trace)
        for r in results:
            if r['lines'] is not None:
                with open(os.path.join(args.trace, 'game_{}.jsonl'.format(r['seed'])), 'w') as f:
                    f.write('\n'.join(r['lines']) + '\n')
    summary = summarize_games(results)
    logger.info('Success: {}/{} ({:.4f})'.format(summary['successes'], summary['games'], summary['success_rate']))
    logger.info('Game length: {:.4f} (Std: {:.4f})'.format(summary['length_mean'], summary['length_std']))
    for name, count in sorted(monitor_failures.items()):
        logger.info('Monitor {}: {}'.format(name, 'pass' if count == 0 else '{} failing games'.format(count)))
    for r in broken:
        logger.error('Seed {} broke the strategy: {}'.format(r['seed'], r['error']))
    if args.trace != '':
        write_results(args.trace, args, summary, monitor_failures)
    logger.info("Elapsed time: {:.2f} sec".format(time.time() - start_time))

    if broken or summary['successes'] != summary['games'] or any(monitor_failures.values()):
        return EXIT_FAIL
    return EXIT_OK


def exhaust(args, config):
    parser = argparse.ArgumentParser(prog='cli.py exhaust')
    parser.add_argument("--k", type=int, required=True)
    parser.add_argument("--n", type=int, required=True)
    parser.add_argument("--role", type=str, choices=[BUILDER, AVOIDER], required=True)
    parser.add_argument("--first", type=str, choices=[STRATEGY, OPPONENT], default=STRATEGY)
    parser.add_argument("--max-nodes", dest='max_nodes', type=int, default=config.oracle.exhaust_max_nodes)
    parser.add_argument("--prune", type=str, choices=['iso', 'exact'], default='iso', help="merge positions up to isomorphism or only when identical")
    args = parser.parse_args(args)
    check_role(parser, args.role, args.k)

    strategy = BuilderStrategy() if args.role == BUILDER else AvoiderStrategy()
    g0 = GameGraph.empty(args.n, args.k)
    start_time = time.time()
    report = exhaust_adversary(strategy, args.role, g0, args.first == STRATEGY,
                               config.oracle.canonical_bound, args.max_nodes, args.prune)
    print(json.dumps(report.summary(), indent=2))
    for line in report.failures[:5]:
        print('failing line: {}'.format([tuple(m) for m in line]))
    for message, line in report.errors[:5]:
        print('strategy error: {} on line {}'.format(message, [tuple(m) for m in line]))
    if args.role == AVOIDER and args.n < config.simulate.n0_threshold and not report.universal:
        print('note: n = {} is below the avoider threshold n0 = {}'.format(args.n, config.simulate.n0_threshold))
    logger.info("Elapsed time: {:.2f} sec".format(time.time() - start_time))
    return EXIT_OK if report.universal else EXIT_FAIL


def solve_cmd(args, config):
    parser = argparse.ArgumentParser(prog='cli.py solve')
    parser.add_argument("--k", type=int, default=None)
    parser.add_argument("--n", type=int, default=None)
    parser.add_argument("--graph", type=str, default='', help="start position (text or .json)")
    parser.add_argument("--side", type=int, choices=[1, 2], default=1, help="player pursuing the objective")
    parser.add_argument("--to-move", dest='to_move', type=int, choices=[1, 2], default=None, help="player to move (default: 1 on an even edge count)")
    parser.add_argument("--objective", type=str, choices=list(OBJECTIVES), default=OBJECTIVES[0])
    args = parser.parse_args(args)
    if args.graph != '':
        g = read_graph(args.graph)
    elif args.k is not None and args.n is not None:
        g = GameGraph.empty(args.n, args.k)
    else:
        parser.error('give --graph or both --k and --n')
    result = solve(g, args.side, args.objective, solver_bounds(config), to_move=args.to_move)
    print(json.dumps(result.to_dict(g), indent=2))
    return EXIT_OK


def describe_position(g, root):
    lines = ['edges: {}'.format([tuple(e) for e in g.edges()])]
    lines.append('degrees: {}'.format(' '.join('{}:{}'.format(v, d) for v, d in enumerate(g.degrees()))))
    if g.k == 3:
        for comp in g.components():
            label = classify_component(g, comp)
            lines.append('component {}: {} {}'.format(sorted(comp), label.label, list(label.evidence)))
        if root is not None:
            view = component_view(g, root)
            lines.append('F(C) = {}  E(D) = {}'.format(
                freedom(g, view.c_vertices).f, effective_freedom(g, view.d_components)))
        witness = has_witness(g)
        if witness:
            lines.append('witness: {}'.format(witness.describe()))
    return '\n'.join(lines)


ILLEGAL_REASONS = {SelfLoop: 'self-loop', DegreeCapExceeded: 'degree cap', DuplicateEdge: 'edge already drawn', OutOfRange: 'no such vertex'}


def play(args, config):
    parser = argparse.ArgumentParser(prog='cli.py play')
    parser.add_argument("--k", type=int, required=True)
    parser.add_argument("--n", type=int, required=True)
    parser.add_argument("--human", type=str, choices=[BUILDER, AVOIDER], required=True, help="your role")
    parser.add_argument("--first", type=str, choices=['human', 'engine'], default='human')
    parser.add_argument("--quiet", action='store_true', help="hide the engine's rule tags")
    args = parser.parse_args(args)
    engine_role = AVOIDER if args.human == BUILDER else BUILDER
    check_role(parser, engine_role, args.k)

    def ask(g, last):
        print(describe_position(g, tracked_vertex(g)))
        while True:
            text = input('your edge "u v": ')
            parts = text.split()
            if len(parts) != 2 or not all(p.lstrip('-').isdigit() for p in parts):
                print('illegal: expected two vertex numbers')
                continue
            a, b = int(parts[0]), int(parts[1])
            try:
                g.check_move(a, b)
            except GameError as e:
                print('illegal: {}'.format(ILLEGAL_REASONS.get(type(e), str(e))))
                continue
            return a, b

    def on_move(rec, g):
        if rec.rule != 'opponent':
            print('engine plays {} {}'.format(rec.edge.u, rec.edge.v) + ('' if args.quiet else '  [{}]'.format(rec.rule)))
        if rec.witness is not None and rec.witness['at'] == rec.i:
            print('witness: {}'.format(has_witness(g).describe()))

    cfg = GameConfig(args.n, args.k, OPPONENT if args.first == 'human' else STRATEGY, engine_role, 'interactive')
    try:
        trace = run_game(cfg, opponent=make_opponent(cfg, ask), on_move=on_move)
    except EOFError:
        print('\nsession ended')
        return EXIT_OK
    final = trace.graphs()[-1]
    print(describe_position(final, trace.root))
    print('Hamiltonian: {}'.format(str(trace.terminal['hamiltonian']).lower()))
    print('not 2-connected: {}'.format(str(not trace.terminal['two_connected']).lower()))
    if trace.terminal.get('witness'):
        print('witness: {}'.format(trace.terminal['witness']))
    return EXIT_OK


def classify_cmd(args, config):
    parser = argparse.ArgumentParser(prog='cli.py classify')
    parser.add_argument("--graph", type=str, required=True, help="graph file (text or .json)")
    parser.add_argument("--root", type=int, default=None, help="tracked vertex for the avoider's row")
    args = parser.parse_args(args)
    g = read_graph(args.graph)
    for comp in g.components():
        label = classify_component(g, comp)
        print(json.dumps({"component": sorted(comp), **label.to_dict()}))
    is_a, parts = classify_graph_type_a(g)
    print(json.dumps({"type_a": is_a, "parts": parts}))
    print(json.dumps(has_witness(g).to_dict()))
    if args.root is not None:
        state = classify_avoider_state(component_view(g, args.root), g)
        print(json.dumps({"row": state.row, "bindings": state.bindings}))
    return EXIT_OK


def check_trace_cmd(args, config):
    parser = argparse.ArgumentParser(prog='cli.py check-trace')
    parser.add_argument("--trace", type=str, required=True)
    args = parser.parse_args(args)
    trace = read_trace(args.trace)
    try:
        moves = check_trace(trace)
    except ReplayMismatch as e:
        print('replay: FAIL ({})'.format(e))
        return EXIT_FAIL
    print('replay: pass ({} moves)'.format(moves))
    failed = False
    for report in run_monitors(trace):
        if report.skipped is not None:
            print('{}: skipped ({})'.format(report.name, report.skipped))
            continue
        print('{}: {} ({} checks)'.format(report.name, 'pass' if report.passed else 'FAIL', report.checked))
        for v in report.violations[:5]:
            print('  {}'.format(v))
        failed = failed or not report.passed
    return EXIT_FAIL if failed else EXIT_OK


COMMANDS = {
    'simulate': simulate, 'exhaust': exhaust, 'solve': solve_cmd, 'play': play,
    'classify': classify_cmd, 'check-trace': check_trace_cmd,
}


def main(args):
    parser = argparse.ArgumentParser(description="Degree-capped graph building game: strategies, solver and trace tools", allow_abbrev=False)
    parser.add_argument("command", choices=sorted(COMMANDS), help="subcommand")
    parser.add_argument("--config", type=str, default='', help="YAML file overriding configs/game_defaults.yaml")
    parser.add_argument("--log-level", dest='log_level', type=str, default=None, help="DEBUG, INFO, WARNING")
    if args is None:
        args = sys.argv[1:]
    try:
        known, rest = parser.parse_known_args(args)
    except SystemExit as e:
        return e.code if isinstance(e.code, int) else EXIT_USAGE

    try:
        config = get_config(known.config or None)
    except (ConfigKeyError, OSError) as e:
        logger.error('Config error: {}'.format(e))
        return EXIT_USAGE
    logging.getLogger().setLevel(known.log_level or config.logging.level)

    try:
        return COMMANDS[known.command](rest, config)
    except SystemExit as e:
        return e.code if isinstance(e.code, int) else EXIT_USAGE
    except (GameError, ConfigKeyError, TraceParseError, OSError) as e:
        logger.error('{}: {}'.format(type(e).__name__, e))
        return EXIT_USAGE
    except StrategyError as e:
        logger.error('{}: {}'.format(type(e).__name__, e))
        return EXIT_FAIL


if __name__ == "__main__":
    sys.exit(main(None))
