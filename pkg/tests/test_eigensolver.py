import math

import numpy as np
import pytest
import scipy.sparse as sp

from eigenprobe.linalg import dense_eigh, spectral_norm_sym, top_eigenpairs
from eigenprobe.validation import EigensolverError


def test_diagonal_window():
    sub = top_eigenpairs(np.diag([3.0, 2.0, 1.0]), k=2, window_start=0)
    assert np.allclose(sub.values, [3.0, 2.0])
    # basis is (e1, e2) up to sign
    assert np.allclose(np.abs(sub.basis), np.eye(3)[:, :2], atol=1e-10)


def test_population_sbm_n8():
    # two-block expectation matrix: nonzero eigenvalues (p+q)n/2, (p-q)n/2
    n, p, q = 8, 0.75, 0.25
    m = np.array([1, 1, 1, 1, -1, -1, -1, -1], dtype=float)
    a_star = (p + q) / 2.0 * np.ones((n, n)) + (p - q) / 2.0 * np.outer(m, m)
    sub = top_eigenpairs(a_star, k=2, window_start=0)
    assert np.allclose(sub.values, [(p + q) * 4, (p - q) * 4], atol=1e-12)
    u2 = sub.basis[:, 1]
    assert np.allclose(np.abs(u2), 1.0 / math.sqrt(8), atol=1e-10)
    assert np.allclose(np.abs(u2 @ m) / math.sqrt(8), 1.0, atol=1e-10)


def test_random_32_matches_dense_oracle():
    rng = np.random.default_rng(7)
    a = rng.standard_normal((32, 32))
    a = (a + a.T) / 2.0
    sub = top_eigenpairs(sp.csr_matrix(a), k=3, method="lanczos")
    vals_ref, _ = dense_eigh(a)
    assert np.max(np.abs(sub.values - vals_ref[:3])) < 1e-8


def test_window_start_selection():
    vals = np.array([9.0, 5.0, 4.0, -1.0, -6.0])
    rng = np.random.default_rng(3)
    q, _ = np.linalg.qr(rng.standard_normal((5, 5)))
    a = (q * vals) @ q.T
    sub = top_eigenpairs(sp.csr_matrix(a), k=2, window_start=1, method="lanczos")
    assert np.allclose(sub.values, [5.0, 4.0], atol=1e-9)
    assert sub.window_start == 1


def test_multiplicity_recovered():
    a = sp.csr_matrix(np.diag([3.0, 3.0, 2.0, 0.0]))
    sub = top_eigenpairs(a, k=3, method="lanczos")
    assert np.allclose(sub.values, [3.0, 3.0, 2.0], atol=1e-10)
    assert sub.orthonormality_defect() < 1e-10
    assert sub.has_ties


def test_residual_contract():
    rng = np.random.default_rng(11)
    for n in (16, 48, 128):
        a = rng.standard_normal((n, n))
        a = (a + a.T) / 2.0
        tol = 1e-10
        sub = top_eigenpairs(sp.csr_matrix(a), k=3, tol=tol, method="lanczos")
        normest = spectral_norm_sym(a)
        assert np.all(sub.residuals <= tol * normest)
        assert sub.orthonormality_defect() < 1e-8


def test_oracle_equivalence_with_subspace_distance():
    # dense and sparse paths agree on random matrices; subspaces match when
    # the eigen-gap is healthy
    rng = np.random.default_rng(23)
    for trial in range(25):
        n = int(rng.integers(4, 65))
        a = rng.standard_normal((n, n))
        a = (a + a.T) / 2.0
        k = int(rng.integers(1, 4))
        sparse_sub = top_eigenpairs(sp.csr_matrix(a), k=k, method="lanczos")
        vals_ref, vecs_ref = dense_eigh(a)
        assert np.max(np.abs(sparse_sub.values - vals_ref[:k])) < 1e-8
        gap = vals_ref[k - 1] - vals_ref[k] if k < n else np.inf
        if gap > 1e-3:
            p_sparse = sparse_sub.basis @ sparse_sub.basis.T
            p_ref = vecs_ref[:, :k] @ vecs_ref[:, :k].T
            assert np.linalg.norm(p_sparse - p_ref, 2) < 1e-6


def test_invalid_window():
    a = np.eye(4)
    with pytest.raises(ValueError):
        top_eigenpairs(a, k=5)
    with pytest.raises(ValueError):
        top_eigenpairs(a, k=2, window_start=3)
    with pytest.raises(ValueError):
        top_eigenpairs(a, k=0)


def test_nonconvergence_is_explicit():
    rng = np.random.default_rng(2)
    a = rng.standard_normal((600, 600))
    a = (a + a.T) / 2.0
    with pytest.raises(EigensolverError):
        top_eigenpairs(sp.csr_matrix(a), k=2, tol=1e-14, max_iter=4, method="lanczos")


def test_determinism():
    rng = np.random.default_rng(9)
    a = rng.standard_normal((80, 80))
    a = sp.csr_matrix((a + a.T) / 2.0)
    s1 = top_eigenpairs(a, k=3, method="lanczos")
    s2 = top_eigenpairs(a, k=3, method="lanczos")
    assert np.array_equal(s1.values, s2.values)
    assert np.array_equal(s1.basis, s2.basis)
