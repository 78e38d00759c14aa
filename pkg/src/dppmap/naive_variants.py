"""Brute-force twins of the variant algorithms.

These recompute every marginal gain from reference log-determinants with no
factor state and no laziness, while consuming the exact same randomness
protocol as their accelerated counterparts in :mod:`dppmap.variants`.  They
exist to ground differential tests, not to be fast.
"""

from __future__ import annotations

import time

from . import reference
from .greedy import _deadline_hit, _ms
from .kernel import KernelOracle
from .report import RunReport
from .stream import DecisionStream
from .variants import VariantConfig, stochastic_sample_size

import numpy as np


def _gain_argmax(matrix, selected, base, candidates):
    """(index, gain) maximizing the marginal gain, ties to the smaller index."""
    best_i, best_gain = -1, -np.inf
    for i in candidates:
        gain = reference.log_det(matrix, list(selected) + [i]) - base
        if gain > best_gain or (gain == best_gain and i < best_i):
            best_i, best_gain = int(i), gain
    return best_i, best_gain


def naive_random_greedy(oracle: KernelOracle, cfg: VariantConfig, stream: DecisionStream,
                        deadline: float | None = None) -> RunReport:
    if oracle.n < 2 * cfg.k:
        raise ValueError(f"random greedy requires n >= 2k (n={oracle.n}, k={cfg.k})")
    report = RunReport(algo="random-naive", n=oracle.n, d=oracle.d, k=cfg.k,
                       input_kind=oracle.input_kind, seed=stream.seed)
    t0 = time.perf_counter()
    matrix = oracle.materialize()
    n = oracle.n
    selected: list[int] = []
    rank_draws: list[int] = []
    dummy_steps: list[int] = []
    for step in range(1, cfg.k + 1):
        if _deadline_hit(deadline):
            report.timed_out = True
            break
        report.steps_attempted += 1
        rank = stream.rank(cfg.k)
        rank_draws.append(rank)
        base = reference.log_det(matrix, selected)
        gains = sorted(
            ((reference.log_det(matrix, selected + [i]) - base, i)
             for i in range(n) if i not in selected),
            key=lambda gv: (-gv[0], gv[1]),
        )
        gain, cand = gains[rank - 1]
        if gain > 0.0:
            selected.append(cand)
            report.gains.append(gain)
            report.objective_trace.append(reference.log_det(matrix, selected))
        else:
            if gain == 0.0:
                report.boundary_gain_steps.append(step)
            dummy_steps.append(step)
    report.selection = selected
    report.final_objective = reference.log_det(matrix, selected)
    report.extras.update(rank_draws=rank_draws, dummy_steps=dummy_steps)
    report.timings["greedy_ms"] = _ms(t0)
    report.timings["total_ms"] = _ms(t0)
    return report


def naive_stochastic_greedy(oracle: KernelOracle, cfg: VariantConfig, stream: DecisionStream,
                            deadline: float | None = None) -> RunReport:
    if oracle.n < 3 * cfg.k:
        raise ValueError(f"stochastic greedy requires n >= 3k (n={oracle.n}, k={cfg.k})")
    if cfg.epsilon is None:
        raise ValueError("stochastic greedy requires epsilon")
    n = oracle.n
    s = stochastic_sample_size(n, cfg.k, cfg.epsilon)
    report = RunReport(algo="stochastic-naive", n=n, d=oracle.d, k=cfg.k,
                       input_kind=oracle.input_kind, seed=stream.seed, epsilon=cfg.epsilon)
    t0 = time.perf_counter()
    matrix = oracle.materialize()
    selected: list[int] = []
    skipped_steps: list[int] = []
    for step in range(1, cfg.k + 1):
        if _deadline_hit(deadline):
            report.timed_out = True
            break
        report.steps_attempted += 1
        pool = np.array([i for i in range(n) if i not in selected], dtype=np.int64)
        sample = stream.sample_sorted(pool, s)
        base = reference.log_det(matrix, selected)
        winner, gain = _gain_argmax(matrix, selected, base, sample)
        if gain > 0.0:
            selected.append(winner)
            report.gains.append(gain)
            report.objective_trace.append(reference.log_det(matrix, selected))
        else:
            if gain == 0.0:
                report.boundary_gain_steps.append(step)
            skipped_steps.append(step)
    report.selection = selected
    report.final_objective = reference.log_det(matrix, selected)
    report.extras.update(sample_size=s, skipped_steps=skipped_steps)
    report.timings["greedy_ms"] = _ms(t0)
    report.timings["total_ms"] = _ms(t0)
    return report


def naive_interlace_greedy(oracle: KernelOracle, cfg: VariantConfig,
                           deadline: float | None = None) -> RunReport:
    if oracle.n < 4 * cfg.k:
        raise ValueError(f"interlace greedy requires n >= 4k (n={oracle.n}, k={cfg.k})")
    report = RunReport(algo="interlace-naive", n=oracle.n, d=oracle.d, k=cfg.k,
                       input_kind=oracle.input_kind)
    t0 = time.perf_counter()
    matrix = oracle.materialize()
    n = oracle.n

    def interlaced_pair(seed_item):
        first: list[int] = []
        second: list[int] = []
        if seed_item is not None:
            first.append(seed_item)
            second.append(seed_item)
        start = 2 if seed_item is not None else 1
        for _ in range(start, cfg.k + 1):
            taken = set(first) | set(second)
            cands = [i for i in range(n) if i not in taken]
            if cands:
                base = reference.log_det(matrix, first)
                i, gain = _gain_argmax(matrix, first, base, cands)
                if gain >= 0.0:
                    first.append(i)
            taken = set(first) | set(second)
            cands = [i for i in range(n) if i not in taken]
            if cands:
                base = reference.log_det(matrix, second)
                j, gain = _gain_argmax(matrix, second, base, cands)
                if gain >= 0.0:
                    second.append(j)
        return first, second

    seq_a, seq_b = interlaced_pair(None)
    runs = [("A", seq_a), ("B", seq_b)]
    if seq_a:
        seq_c, seq_d = interlaced_pair(seq_a[0])
        runs += [("C", seq_c), ("D", seq_d)]

    best_label, best_len, best_obj = "A", 0, 0.0
    for label, seq in runs:
        for t in range(1, len(seq) + 1):
            obj = reference.log_det(matrix, seq[:t])
            if obj > best_obj:
                best_label, best_len, best_obj = label, t, obj
    best_seq = dict(runs)[best_label][:best_len]
    report.selection = list(best_seq)
    report.final_objective = best_obj
    report.objective_trace = [reference.log_det(matrix, best_seq[: t + 1]) for t in range(best_len)]
    report.extras["sequences"] = {label: list(seq) for label, seq in runs}
    report.extras["best_prefix"] = {"run": best_label, "length": best_len}
    report.timings["greedy_ms"] = _ms(t0)
    report.timings["total_ms"] = _ms(t0)
    return report
