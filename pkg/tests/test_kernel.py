import numpy as np
import pytest

from dppmap.kernel import KernelOracle, SparseColumns, seq_dot, sparse_dot


def test_seq_dot_matches_left_fold():
    rng = np.random.default_rng(0)
    for _ in range(20):
        a = rng.standard_normal(257)
        b = rng.standard_normal(257)
        acc = 0.0
        for x, y in zip(a.tolist(), b.tolist()):
            acc += x * y
        assert seq_dot(a, b) == acc


def test_seq_dot_empty():
    assert seq_dot(np.empty(0), np.empty(0)) == 0.0


def test_entry_orthogonal_columns():
    ora = KernelOracle.from_dense_features(np.array([[1.0, 0.0], [0.0, 1.0]]))
    assert ora.entry(0, 1) == 0.0


def test_entry_hand_inner_product():
    ora = KernelOracle.from_dense_features(np.array([[2.0, 1.0], [0.0, 1.0]]))
    assert ora.entry(0, 1) == 2.0
    assert ora.entry(1, 1) == 2.0


def test_entry_diagonal_shift():
    ora = KernelOracle.from_dense_kernel(np.array([[4.0, 2.0], [2.0, 4.0]]), shift=0.1)
    assert ora.entry(0, 0) == pytest.approx(4.1, abs=0)
    assert ora.entry(0, 1) == 2.0


def test_entry_bounds():
    ora = KernelOracle.from_dense_kernel(np.eye(3))
    with pytest.raises(IndexError):
        ora.entry(0, 3)
    with pytest.raises(IndexError):
        ora.entry(-1, 0)


def test_entry_counts_evals():
    ora = KernelOracle.from_dense_kernel(np.eye(3))
    ora.entry(0, 0)
    ora.entry(1, 2)
    assert ora.eval_count == 2


def _col(pairs, dim=8):
    idx = np.array(sorted(pairs), dtype=np.uint32)
    val = np.array([pairs[i] for i in sorted(pairs)], dtype=float)
    return idx, val


def test_sparse_dot_disjoint():
    a = _col({})
    b = _col({3: 1.0})
    assert sparse_dot(*a, *b) == 0.0


def test_sparse_dot_single_overlap():
    a = _col({1: 1.0, 2: 1.0})
    b = _col({2: 1.0, 5: 1.0})
    assert sparse_dot(*a, *b) == 1.0


def test_sparse_dot_self():
    a = _col({0: 2.0, 4: 3.0})
    assert sparse_dot(*a, *a) == 13.0


def test_sparse_matches_dense_exactly():
    """Zeros-dropped sparse columns agree with the dense path bit for bit."""
    rng = np.random.default_rng(7)
    for _ in range(10):
        d, n = rng.integers(3, 20), rng.integers(2, 10)
        dense = rng.standard_normal((int(d), int(n)))
        dense[rng.random(dense.shape) < 0.5] = 0.0
        ora_d = KernelOracle.from_dense_features(dense)
        ora_s = KernelOracle.from_sparse_features(SparseColumns.from_dense(dense))
        for i in range(int(n)):
            for j in range(int(n)):
                assert ora_d.entry(i, j) == ora_s.entry(i, j)


def test_symmetry_bitwise():
    rng = np.random.default_rng(8)
    dense = rng.standard_normal((16, 9))
    ora = KernelOracle.from_dense_features(dense)
    for i in range(9):
        for j in range(9):
            assert ora.entry(i, j) == ora.entry(j, i)


def test_gram_minors_psd():
    rng = np.random.default_rng(9)
    dense = rng.standard_normal((12, 10))
    ora = KernelOracle.from_dense_features(dense)
    for _ in range(5):
        subset = rng.permutation(10)[:8]
        gram = np.array([[ora.entry(int(i), int(j)) for j in subset] for i in subset])
        assert np.min(np.linalg.eigvalsh(gram)) >= -1e-10


def test_scale_and_shift():
    base = np.array([[4.0, 2.0], [2.0, 4.0]])
    ora = KernelOracle.from_dense_kernel(base, scale=0.9, shift=0.1)
    assert ora.entry(0, 0) == pytest.approx(0.9 * 4.0 + 0.1)
    assert ora.entry(0, 1) == pytest.approx(0.9 * 2.0)
    again = ora.with_adjustment(1.0, 0.0)
    assert again.entry(0, 0) == 4.0


def test_materialize_matches_entries():
    rng = np.random.default_rng(10)
    dense = rng.standard_normal((6, 5))
    ora = KernelOracle.from_dense_features(dense, scale=0.9, shift=0.1)
    mat = ora.materialize()
    for i in range(5):
        for j in range(5):
            assert mat[i, j] == pytest.approx(ora.entry(i, j), rel=1e-12, abs=1e-12)


def test_sparse_columns_validation():
    cols = SparseColumns(dim=4)
    cols.indices.append(np.array([2, 1], dtype=np.uint32))  # not increasing
    cols.values.append(np.array([1.0, 1.0]))
    with pytest.raises(ValueError):
        cols.validate()
    cols = SparseColumns(dim=4)
    cols.indices.append(np.array([1], dtype=np.uint32))
    cols.values.append(np.array([0.0]))  # explicit zero
    with pytest.raises(ValueError):
        cols.validate()


def test_cost_class_labels():
    assert KernelOracle.from_dense_kernel(np.eye(2)).cost_class == "O(1)"
    assert KernelOracle.from_dense_features(np.eye(2)).cost_class == "O(d)"
    cols = SparseColumns.from_dense(np.eye(2))
    assert KernelOracle.from_sparse_features(cols).cost_class == "O(nnz)"
