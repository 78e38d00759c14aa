"""Incremental, row-wise-independent Cholesky factor maintenance.

The factor is grown one selection at a time.  Row ``i`` holds the entries of
the factor restricted to the committed columns it has caught up with; its
pivot value ``p_i`` satisfies ``2*ln(p_i)`` = marginal gain of adding item
``i`` to the current selection.  Because refreshing a row only reads that row
and already-committed rows, rows can be refreshed in any order (and lazily)
without changing any computed value bit-for-bit.

Rows live in one contiguous (n, capacity) block and are filled in place,
which keeps per-row refreshes cache-local.
"""

from __future__ import annotations

import math

import numpy as np

from .errors import SingularPivotError, StaleRowError
from .kernel import KernelOracle, seq_dot

PIVOT_FLOOR = 1e-12


class CholeskyState:
    """Partially computed Cholesky factor over a kernel oracle.

    Parameters
    ----------
    oracle:
        Kernel entry source; never mutated.
    capacity:
        Maximum number of selections this state must support.
    lazy_diag:
        Defer the ``sqrt(diag)`` pivot initialization of each row until the
        row is first touched (used by the sampling-based variant, which never
        touches most rows).
    """

    def __init__(self, oracle: KernelOracle, capacity: int, lazy_diag: bool = False):
        n = oracle.n
        self.oracle = oracle
        self.capacity = max(int(capacity), 1)
        self.factor = np.zeros((n, self.capacity))
        self.pivots = np.empty(n)
        self.stamps = np.zeros(n, dtype=np.int64)
        self.selection: list[int] = []
        self.selected_pivots: list[float] = []
        self.objective_trace: list[float] = []
        self.in_selection = np.zeros(n, dtype=bool)
        self.offdiag_count = 0
        self._diag_ready = np.zeros(n, dtype=bool)
        if not lazy_diag:
            for i in range(n):
                self._init_pivot(i)

    @property
    def n(self) -> int:
        return self.oracle.n

    def _init_pivot(self, i: int) -> None:
        diag = self.oracle.entry(i, i)
        if diag < 0:
            raise ValueError(f"negative kernel diagonal at {i}: {diag}")
        self.pivots[i] = math.sqrt(diag)
        self._diag_ready[i] = True

    def touch(self, i: int) -> float:
        """Ensure row i's pivot is initialized; return the current pivot."""
        if not self._diag_ready[i]:
            self._init_pivot(i)
        return float(self.pivots[i])

    def is_fresh(self, i: int) -> bool:
        return self.stamps[i] == len(self.selection)

    def update_row(self, i: int) -> float:
        """Fill row i up to the current selection and return the new pivot.

        For each missing column t the new factor entry is
        ``(K[i, j_t] - <row_i[:t], row_jt[:t]>) / p_jt`` with ``p_jt`` the
        pivot frozen when ``j_t`` was committed, after which the row's own
        pivot shrinks by the Pythagorean update.  Each executed column bumps
        the off-diagonal counter exactly once.
        """
        if self.in_selection[i]:
            raise ValueError(f"row {i} is already committed")
        self.touch(i)
        start = int(self.stamps[i])
        m = len(self.selection)
        if start == m:
            return float(self.pivots[i])
        row = self.factor[i]
        piv = float(self.pivots[i])
        for t in range(start, m):
            jt = self.selection[t]
            denom = self.selected_pivots[t]
            if denom < PIVOT_FLOOR:
                raise SingularPivotError(f"numerically singular pivot {denom} at column {t}")
            val = (self.oracle.entry(i, jt) - seq_dot(row[:t], self.factor[jt, :t])) / denom
            row[t] = val
            piv = math.sqrt(max(piv * piv - val * val, 0.0))
        self.pivots[i] = piv
        self.offdiag_count += m - start
        self.stamps[i] = m
        return piv

    def marginal_gain(self, i: int) -> float:
        """2*ln(pivot) of a fresh row; -inf encodes a linearly dependent item."""
        if not self.is_fresh(i):
            raise StaleRowError(f"row {i} is stale (stamp {self.stamps[i]} < {len(self.selection)})")
        p = float(self.pivots[i])
        if p == 0.0:
            return -math.inf
        return 2.0 * math.log(p)

    def commit(self, i: int) -> int:
        """Append a fresh row to the selection, freezing its pivot.

        Returns the selection position of ``i``.
        """
        if not self.is_fresh(i):
            raise StaleRowError(f"cannot commit stale row {i}")
        p = float(self.pivots[i])
        if p <= PIVOT_FLOOR:
            raise SingularPivotError(f"pivot {p} at or below floor for row {i}")
        t = len(self.selection)
        if t >= self.capacity:
            raise ValueError("selection capacity exhausted")
        self.selection.append(i)
        self.selected_pivots.append(p)
        gain = 2.0 * math.log(p)
        prev = self.objective_trace[-1] if self.objective_trace else 0.0
        self.objective_trace.append(prev + gain)
        self.in_selection[i] = True
        return t

    def objective(self) -> float:
        return self.objective_trace[-1] if self.objective_trace else 0.0
