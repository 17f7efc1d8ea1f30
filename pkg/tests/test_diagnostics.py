import math

import numpy as np
import pytest

from eigenprobe.diagnostics import (
    leave_one_out_probe,
    misclassification,
    nmc_report,
    perturbation_report,
    tail_audit_binom_diff,
    tail_audit_row_concentration,
)
from eigenprobe.ensembles import NmcModel, TwoBlockModel, planted_lowrank
from eigenprobe.estimators import SpectralCompletion, linearize
from eigenprobe.linalg import dense_eigh, top_eigenpairs
from eigenprobe.linalg.subspace import SpectralSubspace


def test_misclassification_counting():
    a = np.array([1, 1, 1, -1, -1, 1, 1, 1, 1, 1])
    b = np.array([1, 1, 1, 1, 1, 1, 1, -1, 1, 1])
    assert misclassification(a, b) == 0.3


def test_misclassification_sign_minimization():
    y = np.array([1, -1, 1, -1])
    assert misclassification(y, y) == 0.0
    assert misclassification(-y, y) == 0.0
    assert misclassification(y, -y) == 0.0


def test_misclassification_validates():
    with pytest.raises(ValueError):
        misclassification(np.array([1, 2]), np.array([1, -1]))
    with pytest.raises(ValueError):
        misclassification(np.array([1, -1, 1]), np.array([1, -1]))


def test_report_on_population_input():
    model = TwoBlockModel.with_random_membership(64, 6.0, 1.0, seed=1)
    pop = model.population()
    a_star = pop.matrix()
    sub = top_eigenpairs(a_star, k=1, window_start=1)
    rep = perturbation_report(sub, pop, a_star)
    assert rep.err_raw < 1e-9
    assert rep.err_linearization_vs_truth < 1e-9
    assert rep.err_residual < 1e-9
    assert abs(rep.margin - math.sqrt(64) * np.abs(pop.basis).min()) < 1e-9


def test_decomposition_identity_shared_sign():
    model = TwoBlockModel.with_random_membership(300, 6.0, 1.0, seed=2)
    adj, _ = model.sample(4)
    pop = model.population()
    sub = top_eigenpairs(adj, k=1, window_start=1)
    rep = perturbation_report(sub, pop, adj)
    u = sub.basis[:, 0]
    s = rep.sign[0, 0]
    lin = linearize(adj, pop)[:, 0]
    u_star = pop.basis[:, 0]
    lhs = u - s * u_star
    rhs = s * (lin - u_star) + (u - s * lin)
    assert np.max(np.abs(lhs - rhs)) < 1e-12
    # triangle inequality between the reported quantities
    assert rep.err_raw <= rep.err_linearization_vs_truth + rep.err_residual + 1e-12


def test_report_sign_flip_invariance():
    model = TwoBlockModel.with_random_membership(200, 8.0, 1.0, seed=3)
    adj, _ = model.sample(0)
    pop = model.population()
    sub = top_eigenpairs(adj, k=1, window_start=1)
    flipped = SpectralSubspace(
        values=sub.values, basis=-sub.basis, window_start=1, residuals=sub.residuals
    )
    r1 = perturbation_report(sub, pop, adj)
    r2 = perturbation_report(flipped, pop, adj)
    for field in ("err_raw", "err_linearization_vs_truth", "err_residual",
                  "sub_err_aligned", "sub_err_linear", "u_two_to_inf", "margin"):
        assert abs(getattr(r1, field) - getattr(r2, field)) < 1e-12


def test_nmc_report_exact_svd():
    m_star = planted_lowrank(30, 3, 0.8, seed=4)
    model = NmcModel(m_star=m_star, p=1.0, sigma=0.0, rank=3)
    m, truth = model.sample(0)
    est = SpectralCompletion(rank=3).fit(m)
    rep = nmc_report(est, truth)
    assert rep.max_err < 1e-8
    assert rep.vec_max_err < 1e-8
    assert rep.degenerate


def test_nmc_report_rotation_invariance():
    m_star = planted_lowrank(40, 3, 0.8, seed=5)
    model = NmcModel(m_star=m_star, p=0.7, sigma=0.2, rank=3)
    m, truth = model.sample(1)
    est = SpectralCompletion(rank=3).fit(m)
    rep = nmc_report(est, truth)
    rng = np.random.default_rng(0)
    rot, _ = np.linalg.qr(rng.standard_normal((3, 3)))

    class Rotated:
        # same reconstruction, factors rotated jointly: sgn(H) absorbs it
        u_ = est.u_ @ rot
        v_ = est.v_ @ rot

        @staticmethod
        def reconstruct():
            return est.reconstruct()

    rep_rot = nmc_report(Rotated, truth)
    assert abs(rep.vec_max_err - rep_rot.vec_max_err) < 1e-10
    assert abs(rep.vec_frob_err - rep_rot.vec_frob_err) < 1e-10


def test_nmc_ratios_permutation_invariance():
    m_star = planted_lowrank(36, 3, 0.8, seed=6)
    model = NmcModel(m_star=m_star, p=0.8, sigma=0.3, rank=3)
    m, truth = model.sample(2)
    est = SpectralCompletion(rank=3).fit(m)
    rep = nmc_report(est, truth)
    perm = np.random.default_rng(1).permutation(36)
    m_perm = m.toarray()[perm, :]
    model_perm = NmcModel(m_star=m_star[perm, :], p=0.8, sigma=0.3, rank=3)
    est_perm = SpectralCompletion(rank=3).fit(m_perm)
    rep_perm = nmc_report(est_perm, model_perm.truth())
    assert abs(rep.r_mat - rep_perm.r_mat) < 1e-9
    assert abs(rep.r_vec - rep_perm.r_vec) < 1e-9


def test_loo_probe_validates_inputs():
    model = TwoBlockModel.with_random_membership(20, 4.0, 1.0, seed=7)
    adj, _ = model.sample(0)
    pop = model.population()
    with pytest.raises(ValueError):
        leave_one_out_probe(adj.toarray(), pop, 25)
    with pytest.raises(ValueError):
        leave_one_out_probe(np.zeros((600, 600)), pop, 0)


def test_loo_probe_population_matches_dense_oracle():
    model = TwoBlockModel.with_random_membership(40, 6.0, 1.0, seed=8)
    pop = model.population()
    a_star = pop.matrix()
    probe = leave_one_out_probe(a_star, pop, m=3)
    # oracle: redo both eigensolves with the reference dense solver
    _, vecs = dense_eigh(a_star)
    zeroed = a_star.copy()
    zeroed[3, :] = 0.0
    zeroed[:, 3] = 0.0
    _, vecs_m = dense_eigh(zeroed)
    u, u_m = vecs[:, 1], vecs_m[:, 1]
    expected = min(np.linalg.norm(u - u_m), np.linalg.norm(u + u_m))
    assert abs(probe["dist_u"] - expected) < 1e-8


@pytest.mark.slow
def test_loo_probe_distance_scales_with_u_inf():
    model = TwoBlockModel.with_random_membership(400, 8.0, 1.0, seed=9)
    pop = model.population()
    good = 0
    trials = 10
    for t in range(trials):
        adj, _ = model.sample(t)
        dense = adj.toarray()
        worst = 0.0
        u_inf = None
        for m in (5, 77, 200, 311, 399):
            probe = leave_one_out_probe(dense, pop, m)
            worst = max(worst, probe["dist_u"])
            u_inf = probe["u_inf"]
        good += worst <= 20.0 * u_inf
    assert good >= 0.95 * trials


def test_tail_binom_diff_requires_separation():
    with pytest.raises(ValueError):
        tail_audit_binom_diff(2.0, 2.0, 0.0, 1000, 10_000)


def test_tail_binom_diff_default_values():
    audit = tail_audit_binom_diff(6.0, 2.0, 0.0, 2000, 100_000)
    expected_bound = 2000.0 ** (-((math.sqrt(6) - math.sqrt(2)) ** 2) / 2.0)
    assert abs(audit.bound_formula_value - expected_bound) < 1e-12
    assert audit.empirical_probability <= audit.bound_formula_value
    assert audit.passed


def test_tail_binom_diff_large_epsilon_trivial():
    audit = tail_audit_binom_diff(6.0, 2.0, 50.0, 500, 10_000)
    assert audit.bound_formula_value >= 1.0
    assert audit.passed


def test_tail_row_concentration_zero_vector():
    audit = tail_audit_row_concentration(np.zeros(50), 0.1, 1.0, 10_000)
    assert audit.empirical_probability == 0.0
    assert audit.passed


def test_tail_row_concentration_ones_and_spike():
    n = 1000
    p = math.log(n) / n
    ones = tail_audit_row_concentration(np.ones(n), p, 1.0, 30_000)
    assert abs(ones.bound_formula_value - 2.0 / n) < 1e-12
    assert ones.passed
    spike = np.zeros(n)
    spike[0] = 1.0
    spiky = tail_audit_row_concentration(spike, p, 1.0, 30_000)
    assert spiky.passed
