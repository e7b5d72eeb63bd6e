""" This file contains the trace monitors for the cap-3 avoider: the freedom budget, type-H
progress, witness persistence, and the shape checks on the main-table moves. Monitors return
reports and never raise. """

import logging
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Tuple

from degree_game.classify import TYPE_H, TYPE_Y, classify_component, deficient_vertices, effective_freedom
from degree_game.engine import GameTrace
from degree_game.graph_core import component_view, has_witness

logger = logging.getLogger(__name__)


@dataclass
class MonitorReport:
    name: str
    checked: int = 0
    violations: List[str] = field(default_factory=list)
    skipped: Optional[str] = None

    @property
    def passed(self) -> bool:
        return not self.violations

    def to_dict(self) -> Dict:
        return {"name": self.name, "checked": self.checked, "passed": self.passed,
                "violations": list(self.violations), "skipped": self.skipped}


def _avoider_trace(trace: GameTrace, name: str) -> Optional[MonitorReport]:
    if trace.config.k != 3 or trace.config.role != 'avoider' or trace.root is None:
        return MonitorReport(name, skipped='needs an avoider trace for k=3')
    return None


def monitor_freedom_budget(trace: GameTrace) -> MonitorReport:
    """
    Around every avoider move drawn inside C, the recorded F(C) + E(D) after the opponent's next
    move never exceeds the value after its previous one, and stays equal exactly when the opponent
    joined two isolated vertices.
    """
    report = _avoider_trace(trace, 'freedom_budget')
    if report is not None:
        return report
    report = MonitorReport('freedom_budget')
    graphs = trace.graphs()
    mine = trace.strategy_player()
    for j, rec in enumerate(trace.moves):
        if rec.player != mine or j == 0 or j + 1 >= len(trace.moves):
            continue
        before = graphs[j]
        c = component_view(before, trace.root).c_vertices
        if not (rec.edge.u in c and rec.edge.v in c):
            continue
        report.checked += 1
        old = trace.moves[j - 1].F_C + trace.moves[j - 1].E_D
        new = trace.moves[j + 1].F_C + trace.moves[j + 1].E_D
        reply = trace.moves[j + 1].edge
        fresh_pair = graphs[j + 1].degree(reply.u) == 0 and graphs[j + 1].degree(reply.v) == 0
        if new > old:
            report.violations.append('move {}: F+E grew from {} to {}'.format(j + 1, old, new))
        elif (new == old) != fresh_pair:
            report.violations.append('move {}: F+E {} -> {} but opponent {} two isolated vertices'.format(
                j + 1, old, new, 'joined' if fresh_pair else 'did not join'))
    return report


def monitor_typeh_progress(trace: GameTrace) -> MonitorReport:
    """
    At the positions where the avoider is to move and C is type H without a witness, E(D) must drop
    below its value within the next two such positions; and for n at or above the threshold
    some position must reach type H with E(D) = 0 or a witness.
    """
    report = _avoider_trace(trace, 'typeh_progress')
    if report is not None:
        return report
    report = MonitorReport('typeh_progress')
    graphs = trace.graphs()
    mine = trace.strategy_player()
    seen: List[Tuple[int, int]] = []
    settled = False
    for j, g in enumerate(graphs[1:]):
        witness = has_witness(g)
        c = component_view(g, trace.root).c_vertices
        is_h = classify_component(g, c).label == TYPE_H
        e = effective_freedom(g, component_view(g, trace.root).d_components)
        if witness or (is_h and e == 0):
            settled = True
        if trace.moves[j].player == mine or witness or not is_h:
            continue
        seen.append((j, e))
    for a, (j, e) in enumerate(seen):
        later = [e2 for _, e2 in seen[a + 1:a + 3]]
        if e <= 0 or len(later) < 2:
            continue
        report.checked += 1
        if min(later) >= e:
            report.violations.append('move {}: E(D) = {} not reduced by the next type-H positions {}'.format(j, e, later))
    if trace.config.n >= trace.config.n0_threshold:
        report.checked += 1
        if not settled:
            report.violations.append('no type-H position with E(D) = 0 and no witness in {} moves'.format(len(trace.moves)))
    return report


def monitor_witness_persistence(trace: GameTrace) -> MonitorReport:
    report = MonitorReport('witness_persistence')
    if trace.config.k != 3:
        report.skipped = 'witnesses are defined for k=3'
        return report
    first = None
    for j, g in enumerate(trace.graphs()[1:]):
        fired = bool(has_witness(g))
        if first is None and fired:
            first = j
        elif first is not None:
            report.checked += 1
            if not fired:
                report.violations.append('witness from move {} is gone at move {}'.format(first, j))
    return report


def monitor_no_type_y(trace: GameTrace) -> MonitorReport:
    """ C is never type Y right after a main-table avoider move. """
    report = _avoider_trace(trace, 'no_type_y')
    if report is not None:
        return report
    report = MonitorReport('no_type_y')
    graphs = trace.graphs()
    for j, rec in enumerate(trace.moves):
        if not rec.rule.startswith('avoid-'):
            continue
        report.checked += 1
        g = graphs[j + 1]
        if classify_component(g, g.component_of(trace.root)).label == TYPE_Y:
            report.violations.append('move {} ({}) left C type Y'.format(j, rec.rule))
    return report


def monitor_main_rows(trace: GameTrace) -> MonitorReport:
    """ Rows b to d leave at most one degree-1 vertex in C; row a removes exactly two. """
    report = _avoider_trace(trace, 'main_rows')
    if report is not None:
        return report
    report = MonitorReport('main_rows')
    graphs = trace.graphs()
    for j, rec in enumerate(trace.moves):
        if rec.rule not in ('avoid-row-a', 'avoid-row-b', 'avoid-row-c', 'avoid-row-d'):
            continue
        report.checked += 1
        before = len(deficient_vertices(graphs[j], graphs[j].component_of(trace.root))[0])
        after = len(deficient_vertices(graphs[j + 1], graphs[j + 1].component_of(trace.root))[0])
        if rec.rule == 'avoid-row-a' and after != before - 2:
            report.violations.append('move {}: row a took degree-1 count {} -> {}'.format(j, before, after))
        elif rec.rule != 'avoid-row-a' and after > 1:
            report.violations.append('move {}: {} left {} degree-1 vertices in C'.format(j, rec.rule, after))
    return report


MONITORS = (
    monitor_freedom_budget, monitor_typeh_progress, monitor_witness_persistence,
    monitor_no_type_y, monitor_main_rows,
)


def run_monitors(trace: GameTrace) -> List[MonitorReport]:
    reports = [m(trace) for m in MONITORS]
    for r in reports:
        if not r.passed:
            logger.warning('monitor {} failed: {}'.format(r.name, r.violations[:3]))
    return reports
