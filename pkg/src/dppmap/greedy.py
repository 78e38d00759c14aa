"""Cardinality-constrained greedy solvers for log-determinant maximization.

Four implementations of the same greedy rule, from slow-and-obvious to
lazy-and-incremental:

* :func:`naive_greedy`     - recomputes every marginal gain from brute-force
  log-determinants each step.
* :func:`lazy_greedy`      - same gains, but stale upper bounds in a priority
  queue defer recomputation of unpromising items.
* :func:`fast_greedy`      - incremental Cholesky pivots give every item's
  gain after each selection; one factor column per step.
* :func:`lazy_fast_greedy` - the combination: pivot upper bounds in a queue,
  rows refreshed only when they surface.

All four share one selection rule - argmax of the gain with ties to the
smaller index, stop when the best gain is nonpositive - and return identical
selection sequences (exactly, assuming gains are never within float noise of
a tie; the shared tie-break keeps even exact-tie instances aligned).
"""

from __future__ import annotations

import math
import time
from dataclasses import dataclass

import numpy as np

from . import reference
from .cholesky import PIVOT_FLOOR, CholeskyState
from .kernel import KernelOracle
from .pqueue import LazyMaxQueue
from .report import RunReport

ZERO_GAIN_PIVOT = 1.0  # pivot == 1  <=>  marginal gain == 0


@dataclass
class GreedyConfig:
    k: int
    stop_on_nonpositive: bool = True  # stop once the best gain drops to <= 0


def _ms(t0: float) -> float:
    return (time.perf_counter() - t0) * 1000.0


def _deadline_hit(deadline) -> bool:
    return deadline is not None and time.perf_counter() >= deadline


def _base_report(algo: str, oracle: KernelOracle, k: int) -> RunReport:
    return RunReport(algo=algo, n=oracle.n, d=oracle.d, k=k, input_kind=oracle.input_kind)


def pop_fresh_argmax(queue: LazyMaxQueue, state: CholeskyState, stop_threshold: float | None):
    """Pop the (pivot, index)-lexicographic argmax over live queue entries.

    Stale entries that surface are refreshed and re-pushed; a fresh entry on
    top is the true argmax because stale keys only overestimate.  Returns
    ``(index, None)`` on success.  With a ``stop_threshold``, returns
    ``(None, top_key)`` as soon as the top key is at or below it (every fresh
    gain is then at or below the threshold too); on an empty queue returns
    ``(None, -inf)``.
    """
    while True:
        top = queue.peek_entry()
        if top is None:
            return None, -math.inf
        i, key = top
        if stop_threshold is not None and key <= stop_threshold:
            return None, key
        if state.is_fresh(i):
            queue.pop_max()
            return i, None
        queue.pop_max()
        state.update_row(i)
        queue.push(i, state.pivots[i])


def naive_greedy(oracle: KernelOracle, cfg: GreedyConfig, deadline: float | None = None) -> RunReport:
    """Greedy with per-step brute-force gains over the materialized kernel."""
    report = _base_report("naive", oracle, cfg.k)
    evals0 = oracle.eval_count
    t0 = time.perf_counter()
    matrix = oracle.materialize()
    report.timings["setup_ms"] = _ms(t0)

    t1 = time.perf_counter()
    n = oracle.n
    selected: list[int] = []
    base = 0.0
    while len(selected) < cfg.k:
        if _deadline_hit(deadline):
            report.timed_out = True
            break
        report.steps_attempted += 1
        best_i, best_gain = -1, -math.inf
        for i in range(n):
            if i in selected:
                continue
            gain = reference.log_det(matrix, selected + [i]) - base
            if gain > best_gain:
                best_i, best_gain = i, gain
        if best_i < 0 or best_gain == -math.inf:
            report.terminated_early = True
            break
        if cfg.stop_on_nonpositive and best_gain <= 0.0:
            if best_gain == 0.0:
                report.boundary_gain_steps.append(report.steps_attempted)
            report.terminated_early = True
            break
        selected.append(best_i)
        base = reference.log_det(matrix, selected)
        report.gains.append(best_gain)
        report.objective_trace.append(base)
    report.selection = selected
    report.final_objective = base
    report.kernel_evals = oracle.eval_count - evals0
    report.timings["greedy_ms"] = _ms(t1)
    report.timings["total_ms"] = _ms(t0)
    return report


def lazy_greedy(oracle: KernelOracle, cfg: GreedyConfig, deadline: float | None = None) -> RunReport:
    """Greedy with brute-force gains behind a lazy priority queue."""
    report = _base_report("lazy", oracle, cfg.k)
    evals0 = oracle.eval_count
    t0 = time.perf_counter()
    matrix = oracle.materialize()
    report.timings["setup_ms"] = _ms(t0)

    t1 = time.perf_counter()
    n = oracle.n
    stamps = np.zeros(n, dtype=np.int64)
    queue = LazyMaxQueue.build([reference.log_det(matrix, [i]) for i in range(n)])
    gain_evals = n
    selected: list[int] = []
    base = 0.0
    while len(selected) < cfg.k:
        if _deadline_hit(deadline):
            report.timed_out = True
            break
        report.steps_attempted += 1
        winner = None
        winner_gain = -math.inf
        while True:
            top = queue.peek_entry()
            if top is None:
                break
            i, key = top
            if cfg.stop_on_nonpositive and key <= 0.0:
                winner_gain = key
                break
            if stamps[i] == len(selected):
                queue.pop_max()
                winner, winner_gain = i, key
                break
            queue.pop_max()
            gain = reference.log_det(matrix, selected + [i]) - base
            gain_evals += 1
            stamps[i] = len(selected)
            queue.push(i, gain)
        if winner is None:
            if winner_gain == 0.0:
                report.boundary_gain_steps.append(report.steps_attempted)
            report.terminated_early = True
            break
        if winner_gain == -math.inf:
            report.terminated_early = True
            break
        selected.append(winner)
        base = reference.log_det(matrix, selected)
        report.gains.append(winner_gain)
        report.objective_trace.append(base)
    report.selection = selected
    report.final_objective = base
    report.kernel_evals = oracle.eval_count - evals0
    report.pq_ops = queue.op_count
    report.extras["gain_evals"] = gain_evals
    report.timings["greedy_ms"] = _ms(t1)
    report.timings["total_ms"] = _ms(t0)
    return report


def fast_greedy(oracle: KernelOracle, cfg: GreedyConfig, deadline: float | None = None) -> RunReport:
    """Greedy via one incremental factor column per step.

    After each selection every remaining row is brought up to date, so the
    next argmax is a plain scan; the update sweep is skipped after the final
    selection.  The off-diagonal count is therefore exactly
    ``(T-1) * (n - T/2)`` for a run of ``T`` attempted steps.
    """
    report = _base_report("fast", oracle, cfg.k)
    evals0 = oracle.eval_count
    t0 = time.perf_counter()
    state = CholeskyState(oracle, cfg.k)
    n = oracle.n
    while len(state.selection) < cfg.k:
        if _deadline_hit(deadline):
            report.timed_out = True
            break
        report.steps_attempted += 1
        masked = np.where(state.in_selection, -math.inf, state.pivots)
        best = int(np.argmax(masked))
        piv = float(masked[best])
        if cfg.stop_on_nonpositive and piv <= ZERO_GAIN_PIVOT:
            if piv == ZERO_GAIN_PIVOT:
                report.boundary_gain_steps.append(report.steps_attempted)
            report.terminated_early = True
            break
        if piv <= PIVOT_FLOOR:
            report.terminated_early = True
            break
        report.gains.append(state.marginal_gain(best))
        state.commit(best)
        if len(state.selection) == cfg.k:
            break
        for i in range(n):
            if not state.in_selection[i]:
                state.update_row(i)
    report.selection = list(state.selection)
    report.objective_trace = list(state.objective_trace)
    report.final_objective = state.objective()
    report.offdiag_count = state.offdiag_count
    report.kernel_evals = oracle.eval_count - evals0
    report.timings["setup_ms"] = 0.0
    report.timings["greedy_ms"] = _ms(t0)
    report.timings["total_ms"] = _ms(t0)
    return report


def lazy_fast_greedy(oracle: KernelOracle, cfg: GreedyConfig, deadline: float | None = None) -> RunReport:
    """Greedy via incremental factor rows refreshed lazily from a queue."""
    report = _base_report("lazyfast", oracle, cfg.k)
    evals0 = oracle.eval_count
    t0 = time.perf_counter()
    state = CholeskyState(oracle, cfg.k)
    queue = LazyMaxQueue.build(state.pivots)
    threshold = ZERO_GAIN_PIVOT if cfg.stop_on_nonpositive else None
    while len(state.selection) < cfg.k:
        if _deadline_hit(deadline):
            report.timed_out = True
            break
        report.steps_attempted += 1
        best, stop_key = pop_fresh_argmax(queue, state, threshold)
        if best is None:
            if stop_key == ZERO_GAIN_PIVOT:
                report.boundary_gain_steps.append(report.steps_attempted)
            report.terminated_early = True
            break
        if state.pivots[best] <= PIVOT_FLOOR:
            report.terminated_early = True
            break
        report.gains.append(state.marginal_gain(best))
        state.commit(best)
    report.selection = list(state.selection)
    report.objective_trace = list(state.objective_trace)
    report.final_objective = state.objective()
    report.offdiag_count = state.offdiag_count
    report.kernel_evals = oracle.eval_count - evals0
    report.pq_ops = queue.op_count
    report.timings["setup_ms"] = 0.0
    report.timings["greedy_ms"] = _ms(t0)
    report.timings["total_ms"] = _ms(t0)
    return report
