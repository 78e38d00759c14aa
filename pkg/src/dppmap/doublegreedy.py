"""Unconstrained inference: randomized double greedy, naive and fast.

Double greedy sweeps the items once in index order, keeping a growing set and
an implicitly shrinking one, and flips a biased coin between "add" and
"remove" weighted by the clamped gains of each move.  The fast version gets
the add-gain from an incremental Cholesky factor of the kernel and - the
trick - the remove-gain from a second incremental factor of the *inverse*
kernel, via the complementary-minor identity relating principal minors of a
matrix and its inverse.  Both versions consume exactly one uniform draw per
item, so twin runs with a shared seed make identical decisions.
"""

from __future__ import annotations

import math
import time

import numpy as np

from . import reference
from .cholesky import CholeskyState
from .errors import SingularKernelError, SingularPivotError
from .greedy import _deadline_hit, _ms
from .kernel import KernelOracle
from .report import RunReport
from .stream import DecisionStream

INVERSE_GATE = 1e-8


def jacobi_gain_check(matrix: np.ndarray, subset, i: int) -> tuple[float, float]:
    """Both sides of the complementary-minor gain identity, by brute force.

    Returns ``(g(S + i) - g(S), f(comp(S) - i) - f(comp(S)))`` where ``f`` is
    ln det over the matrix and ``g`` ln det over its inverse.  A test helper:
    validates the identity off the hot path.
    """
    matrix = np.asarray(matrix, dtype=np.float64)
    n = matrix.shape[0]
    subset = sorted(subset)
    if i in subset:
        raise ValueError(f"item {i} is already in the subset")
    inv = reference.inverse(matrix)
    lhs = reference.log_det(inv, subset + [i]) - reference.log_det(inv, subset)
    comp = [j for j in range(n) if j not in subset]
    comp_minus = [j for j in comp if j != i]
    rhs = reference.log_det(matrix, comp_minus) - reference.log_det(matrix, comp)
    return lhs, rhs


def _decide(add_gain: float, remove_gain: float, draw: float) -> bool:
    """Add with probability a/(a+b) on clamped gains; the 0/0 corner adds."""
    a = max(add_gain, 0.0)
    b = max(remove_gain, 0.0)
    p = a / (a + b) if a + b > 0.0 else 1.0
    return draw < p


def fast_double_greedy(oracle: KernelOracle, stream: DecisionStream,
                       scale: float | None = None, shift: float | None = None,
                       deadline: float | None = None) -> RunReport:
    """Double greedy with incremental factors over the kernel and its inverse.

    The adjusted kernel (``scale``/``shift`` override the oracle's own, when
    given) is materialized and inverted up front; the run is gated on
    ``max|K Kinv - I| <= 1e-8``.  Timings are split into product / inverse /
    greedy phases.
    """
    if scale is not None or shift is not None:
        oracle = oracle.with_adjustment(
            oracle.scale if scale is None else scale,
            oracle.shift if shift is None else shift,
        )
    n = oracle.n
    report = RunReport(algo="double-fast", n=n, d=oracle.d, k=n,
                       input_kind=oracle.input_kind, seed=stream.seed)
    evals0 = oracle.eval_count
    t0 = time.perf_counter()
    matrix = oracle.materialize()
    report.timings["product_ms"] = _ms(t0)

    t1 = time.perf_counter()
    inv = reference.inverse(matrix)
    gate = float(np.max(np.sum(np.abs(matrix @ inv - np.eye(n)), axis=1)))  # induced inf-norm
    if gate > INVERSE_GATE:
        raise SingularKernelError(f"kernel numerically singular: |K Kinv - I|_inf = {gate:.3e}")
    report.timings["inverse_ms"] = _ms(t1)

    t2 = time.perf_counter()
    grow = CholeskyState(KernelOracle.from_dense_kernel(matrix), n)
    shrink = CholeskyState(KernelOracle.from_dense_kernel(inv), n)
    ab_gains: list[tuple[float, float]] = []
    try:
        for i in range(n):
            if _deadline_hit(deadline):
                report.timed_out = True
                break
            report.steps_attempted += 1
            grow.update_row(i)
            shrink.update_row(i)
            add_gain = grow.marginal_gain(i)
            remove_gain = shrink.marginal_gain(i)
            ab_gains.append((add_gain, remove_gain))
            if _decide(add_gain, remove_gain, stream.uniform()):
                grow.commit(i)
            else:
                shrink.commit(i)
    except SingularPivotError as exc:
        raise SingularKernelError(f"kernel numerically singular: {exc}") from None
    report.timings["greedy_ms"] = _ms(t2)

    # the shrink-side selection must be exactly the rejected prefix items
    rejected = [i for i in range(report.steps_attempted) if not grow.in_selection[i]]
    assert shrink.selection == rejected, "shrink-side selection drifted"

    report.selection = list(grow.selection)
    report.gains = [2.0 * math.log(p) for p in grow.selected_pivots]
    report.objective_trace = list(grow.objective_trace)
    report.final_objective = grow.objective()
    report.offdiag_count = grow.offdiag_count + shrink.offdiag_count
    report.kernel_evals = oracle.eval_count - evals0
    report.extras["ab_gains"] = [[a, b] for a, b in ab_gains]
    report.timings["setup_ms"] = report.timings["product_ms"] + report.timings["inverse_ms"]
    report.timings["total_ms"] = _ms(t0)
    return report


def naive_double_greedy(matrix: np.ndarray, stream: DecisionStream,
                        deadline: float | None = None) -> RunReport:
    """Double greedy with every gain from brute-force log-determinants."""
    matrix = np.asarray(matrix, dtype=np.float64)
    n = matrix.shape[0]
    report = RunReport(algo="double-naive", n=n, d=0, k=n, input_kind="L", seed=stream.seed)
    t0 = time.perf_counter()
    selected: list[int] = []
    ab_gains: list[tuple[float, float]] = []
    for i in range(n):
        if _deadline_hit(deadline):
            report.timed_out = True
            break
        report.steps_attempted += 1
        add_gain = reference.log_det(matrix, selected + [i]) - reference.log_det(matrix, selected)
        keep = selected + list(range(i, n))  # survivor set going into step i
        keep_minus = selected + list(range(i + 1, n))
        remove_gain = reference.log_det(matrix, keep_minus) - reference.log_det(matrix, keep)
        if not (math.isfinite(add_gain) and math.isfinite(remove_gain)):
            raise SingularKernelError("kernel numerically singular under brute-force gains")
        ab_gains.append((add_gain, remove_gain))
        if _decide(add_gain, remove_gain, stream.uniform()):
            selected.append(i)
            report.gains.append(add_gain)
            report.objective_trace.append(reference.log_det(matrix, selected))
    report.selection = selected
    report.final_objective = reference.log_det(matrix, selected)
    report.extras["ab_gains"] = [[a, b] for a, b in ab_gains]
    report.timings["greedy_ms"] = _ms(t0)
    report.timings["total_ms"] = _ms(t0)
    return report
