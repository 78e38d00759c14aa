"""Uniform access to kernel entries under feature-matrix and precomputed-matrix inputs.

An oracle answers ``entry(i, j)`` for a positive semi-definite kernel that is
either materialized (an n-by-n matrix, O(1) per entry) or implicit as a Gram
matrix of feature columns (dense or sparse, O(d) / O(nnz) per entry).  All
inner products are summed in ascending feature-index order with a single
accumulator, so entries are bit-for-bit reproducible across calls and across
the dense/sparse storage of the same features.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

B_DENSE = "bdense"
B_SPARSE = "bsparse"
L_DENSE = "ldense"


def seq_dot(a: np.ndarray, b: np.ndarray) -> float:
    """Dot product accumulated strictly left to right.

    ``np.cumsum`` walks the array with a single running accumulator, which
    pins the floating-point result to one summation order regardless of how
    the operands are stored.  Zero terms are exact no-ops, so a dense vector
    and its zeros-dropped sparse counterpart produce identical sums.
    """
    p = a * b
    if p.size == 0:
        return 0.0
    return float(np.cumsum(p)[-1])


@dataclass
class SparseColumns:
    """Compressed sparse columns: per column a sorted index array + values.

    Indices are strictly increasing within each column and below ``dim``;
    explicit zeros are never stored.
    """

    dim: int
    indices: list[np.ndarray] = field(default_factory=list)
    values: list[np.ndarray] = field(default_factory=list)

    @property
    def ncols(self) -> int:
        return len(self.indices)

    def validate(self) -> None:
        if len(self.indices) != len(self.values):
            raise ValueError("index/value column count mismatch")
        for c, (idx, val) in enumerate(zip(self.indices, self.values)):
            if idx.shape != val.shape:
                raise ValueError(f"column {c}: index/value length mismatch")
            signed = idx.astype(np.int64)
            if signed.size and np.any(np.diff(signed) <= 0):
                raise ValueError(f"column {c}: indices not strictly increasing")
            if signed.size and (signed[0] < 0 or signed[-1] >= self.dim):
                raise ValueError(f"column {c}: index out of range")
            if np.any(val == 0.0):
                raise ValueError(f"column {c}: explicit zero stored")

    @classmethod
    def from_dense(cls, dense: np.ndarray) -> "SparseColumns":
        """Drop zeros from a dense d-by-n matrix, one sparse column per item."""
        dense = np.asarray(dense, dtype=np.float64)
        d, n = dense.shape
        cols = cls(dim=d)
        for j in range(n):
            nz = np.nonzero(dense[:, j])[0]
            cols.indices.append(nz.astype(np.uint32))
            cols.values.append(dense[nz, j].copy())
        return cols

    def to_dense(self) -> np.ndarray:
        out = np.zeros((self.dim, self.ncols))
        for j, (idx, val) in enumerate(zip(self.indices, self.values)):
            out[idx.astype(np.intp), j] = val
        return out


def sparse_dot(a_idx: np.ndarray, a_val: np.ndarray, b_idx: np.ndarray, b_val: np.ndarray) -> float:
    """Inner product of two sparse columns over their common indices.

    The common indices are found by binary search over the sorted shorter
    side and the surviving products are summed in ascending index order,
    matching :func:`seq_dot` on the dense equivalents exactly.
    """
    if a_idx.size == 0 or b_idx.size == 0:
        return 0.0
    if a_idx.size > b_idx.size:
        a_idx, a_val, b_idx, b_val = b_idx, b_val, a_idx, a_val
    pos = np.searchsorted(b_idx, a_idx)
    pos_clip = np.minimum(pos, b_idx.size - 1)
    hit = b_idx[pos_clip] == a_idx
    if not np.any(hit):
        return 0.0
    return seq_dot(a_val[hit], b_val[pos_clip[hit]])


class KernelOracle:
    """Kernel-entry access with an optional affine adjustment.

    ``entry(i, j)`` reports ``scale * K[i, j] + shift * [i == j]`` where ``K``
    is the raw kernel (Gram matrix of features, or the stored matrix).  The
    default ``scale=1, shift=0`` leaves the kernel untouched; a positive
    ``shift`` regularizes a singular kernel without materializing a new one.

    Oracles are immutable after construction and safe for concurrent reads.
    ``eval_count`` tallies entry lookups for instrumentation.
    """

    def __init__(self, kind, n, d, scale=1.0, shift=0.0, feats=None, sparse=None, matrix=None):
        if shift < 0:
            raise ValueError("shift must be nonnegative")
        self.kind = kind
        self.n = int(n)
        self.d = int(d)
        self.scale = float(scale)
        self.shift = float(shift)
        self._feats = feats          # item-major (n, d), rows contiguous
        self._sparse = sparse
        self._matrix = matrix
        self.eval_count = 0

    # -- constructors ------------------------------------------------------

    @classmethod
    def from_dense_features(cls, features: np.ndarray, scale: float = 1.0, shift: float = 0.0) -> "KernelOracle":
        """Wrap a d-by-n feature matrix (one column per item)."""
        features = np.asarray(features, dtype=np.float64)
        if features.ndim != 2:
            raise ValueError("feature matrix must be 2-D")
        d, n = features.shape
        feats = np.ascontiguousarray(features.T)
        return cls(B_DENSE, n, d, scale, shift, feats=feats)

    @classmethod
    def from_sparse_features(cls, columns: SparseColumns, scale: float = 1.0, shift: float = 0.0) -> "KernelOracle":
        columns.validate()
        return cls(B_SPARSE, columns.ncols, columns.dim, scale, shift, sparse=columns)

    @classmethod
    def from_dense_kernel(cls, matrix: np.ndarray, scale: float = 1.0, shift: float = 0.0) -> "KernelOracle":
        """Wrap a precomputed n-by-n kernel matrix (O(1) entry access)."""
        matrix = np.asarray(matrix, dtype=np.float64)
        if matrix.ndim != 2 or matrix.shape[0] != matrix.shape[1]:
            raise ValueError("kernel matrix must be square")
        matrix = np.ascontiguousarray(matrix)
        return cls(L_DENSE, matrix.shape[0], 0, scale, shift, matrix=matrix)

    def with_adjustment(self, scale: float, shift: float) -> "KernelOracle":
        """Same backing storage, different affine adjustment."""
        return KernelOracle(self.kind, self.n, self.d, scale, shift,
                            feats=self._feats, sparse=self._sparse, matrix=self._matrix)

    # -- access ------------------------------------------------------------

    @property
    def cost_class(self) -> str:
        return {B_DENSE: "O(d)", B_SPARSE: "O(nnz)", L_DENSE: "O(1)"}[self.kind]

    @property
    def input_kind(self) -> str:
        return "L" if self.kind == L_DENSE else "B"

    def entry(self, i: int, j: int) -> float:
        if not (0 <= i < self.n and 0 <= j < self.n):
            raise IndexError(f"kernel index ({i}, {j}) out of range for n={self.n}")
        self.eval_count += 1
        if self.kind == L_DENSE:
            raw = float(self._matrix[i, j])
        elif self.kind == B_DENSE:
            raw = seq_dot(self._feats[i], self._feats[j])
        else:
            s = self._sparse
            raw = sparse_dot(s.indices[i], s.values[i], s.indices[j], s.values[j])
        v = self.scale * raw
        if i == j:
            v += self.shift
        return v

    def diag(self, i: int) -> float:
        return self.entry(i, i)

    def materialize(self) -> np.ndarray:
        """Dense adjusted kernel, for reference-path algorithms.

        Built with BLAS for the feature-backed kinds, so individual entries
        may differ from ``entry()`` in the last bits; counted as one symmetric
        sweep of lookups.
        """
        self.eval_count += self.n * (self.n + 1) // 2
        if self.kind == L_DENSE:
            raw = self._matrix.copy()
        elif self.kind == B_DENSE:
            raw = self._feats @ self._feats.T
        else:
            dense = self._sparse.to_dense()
            raw = dense.T @ dense
        out = self.scale * raw
        if self.shift:
            out[np.diag_indices_from(out)] += self.shift
        return out
