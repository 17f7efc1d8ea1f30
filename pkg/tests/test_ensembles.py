import io
import math

import numpy as np
import pytest
import scipy.sparse as sp

from eigenprobe import rng as R
from eigenprobe.diagnostics import chernoff_upper_bound
from eigenprobe.ensembles import (
    NmcModel,
    ThreeBlockModel,
    TwoBlockModel,
    Z2SyncModel,
    eigen_gap,
    paper_lowrank_scale,
    planted_lowrank,
    write_instance,
)
from eigenprobe.linalg import dense_eigh, spectral_norm_sym, top_eigenpairs


def test_sample_is_bit_identical():
    m = TwoBlockModel.with_random_membership(100, 6.0, 2.0, seed=1)
    a1, t1 = m.sample(9)
    a2, t2 = m.sample(9)
    assert (a1 != a2).nnz == 0
    assert np.array_equal(t1, t2)
    y1, _ = Z2SyncModel.with_random_signal(40, 1.3, seed=2).sample(4)
    y2, _ = Z2SyncModel.with_random_signal(40, 1.3, seed=2).sample(4)
    assert np.array_equal(y1, y2)


def test_sampled_adjacency_exactly_symmetric_and_binary():
    m = TwoBlockModel.with_random_membership(200, 5.0, 1.0, seed=3)
    a, _ = m.sample(0)
    assert (abs(a - a.T)).nnz == 0
    assert set(np.unique(a.data)) <= {1.0}
    m3 = ThreeBlockModel.with_random_labels(99, 7.0, 1.0, seed=4)
    a3, _ = m3.sample(0)
    assert (abs(a3 - a3.T)).nnz == 0


def test_self_loops_flag():
    with_loops = TwoBlockModel.with_random_membership(300, 20.0, 5.0, seed=5)
    a, _ = with_loops.sample(1)
    assert a.diagonal().sum() > 0
    without = TwoBlockModel(n=300, a=20.0, b=5.0, membership=with_loops.membership,
                            self_loops=False)
    a, _ = without.sample(1)
    assert a.diagonal().sum() == 0


def test_probability_above_one_is_rejected_by_name():
    with pytest.raises(ValueError, match="p"):
        TwoBlockModel.with_random_membership(10, 30.0, 1.0, seed=0)


def test_membership_must_be_balanced():
    with pytest.raises(ValueError):
        TwoBlockModel(n=4, a=2.0, b=1.0, membership=np.array([1, 1, 1, -1]))


def test_degenerate_equal_rates_has_rank_one_population():
    m = TwoBlockModel.with_random_membership(50, 3.0, 3.0, seed=1)
    pop = m.population()
    assert pop.values[0] == 0.0
    assert pop.spectrum[1] == 0.0
    vals, _ = dense_eigh(pop.matrix())
    assert abs(vals[1]) < 1e-12  # second population eigenvalue is exactly 0


def test_z2_noiseless_and_population():
    z = Z2SyncModel.with_random_signal(64, 0.0, seed=7)
    y, x = z.sample(0)
    assert np.array_equal(y, np.outer(x, x))
    sub = top_eigenpairs(y, k=1)
    u = sub.basis[:, 0]
    assert np.allclose(np.abs(u), 1.0 / 8.0, atol=1e-12)
    pop = z.population()
    assert pop.gap == 64.0
    assert pop.kappa == 1.0


def test_population_formulas_sbm2():
    n, a, b = 5000, 4.5, 0.25
    m = TwoBlockModel.with_random_membership(n, a, b, seed=1)
    pop = m.population()
    logn = math.log(n)
    assert abs(pop.spectrum[0] - (a + b) / 2.0 * logn) < 1e-9
    assert abs(pop.values[0] - (a - b) / 2.0 * logn) < 1e-9
    assert np.allclose(np.abs(pop.basis[:, 0]), 1.0 / math.sqrt(n))
    assert np.array_equal(np.sign(pop.basis[:, 0]).astype(int), m.membership)
    assert abs(pop.gap - min(b, (a - b) / 2.0) * logn) < 1e-9


def test_population_formulas_sbm3():
    n, a, b = 30, 8.0, 1.0
    m = ThreeBlockModel.with_random_labels(n, a, b, seed=1)
    pop = m.population()
    logn = math.log(n)
    assert abs(pop.spectrum[0] - (a + 2 * b) * logn / 3.0) < 1e-12
    assert np.allclose(pop.values, (a - b) * logn / 3.0)
    z = m.labels
    u2, u3 = pop.basis[:, 0], pop.basis[:, 1]
    assert np.allclose(u2[z == 1], 2.0 / math.sqrt(2 * n))
    assert np.allclose(u2[z != 1], -1.0 / math.sqrt(2 * n))
    assert np.allclose(u3[z == 2], math.sqrt(3.0 / (2 * n)))
    assert np.allclose(u3[z == 3], -math.sqrt(3.0 / (2 * n)))
    assert np.allclose(u3[z == 1], 0.0)


@pytest.mark.parametrize("builder", [
    lambda: Z2SyncModel.with_random_signal(48, 0.5, seed=2),
    lambda: TwoBlockModel.with_random_membership(48, 5.0, 1.0, seed=2),
    lambda: ThreeBlockModel.with_random_labels(48, 7.0, 1.0, seed=2),
    lambda: NmcModel(m_star=planted_lowrank(24, 3, 0.6, seed=2), p=0.8, sigma=0.1, rank=3),
])
def test_gap_matches_brute_force_enumeration(builder):
    model = builder()
    pop = model.population()
    vals, _ = dense_eigh(pop.matrix())
    s, r = pop.window_start, pop.subspace.r
    brute = eigen_gap(vals, s, r)
    assert abs(pop.gap - brute) < 1e-8 * max(1.0, abs(pop.gap))
    assert pop.kappa >= 1.0


def test_planted_lowrank_rank_and_scale():
    m = planted_lowrank(500, 5, paper_lowrank_scale(500), seed=3)
    sv = np.linalg.svd(m, compute_uv=False)
    assert sv[5] / sv[0] < 1e-10
    assert np.linalg.matrix_rank(m) == 5


def test_planted_lowrank_frobenius_moment_oracle():
    # E ||M_L M_R^T||_F^2 = n^2 r scale^4; Monte Carlo mean within 10%
    n, r, scale = 40, 3, 0.7
    sq = [np.linalg.norm(planted_lowrank(n, r, scale, seed=t)) ** 2 for t in range(100)]
    expected = n**2 * r * scale**4
    assert abs(np.mean(sq) - expected) / expected < 0.10


def test_nmc_unbiased_single_entry():
    m_star = planted_lowrank(6, 2, 1.0, seed=5)
    model = NmcModel(m_star=m_star, p=0.3, sigma=0.5, rank=2)
    i, j = 2, 4
    draws = np.array([model.sample(t)[0][i, j] for t in range(10_000)])
    se = draws.std() / math.sqrt(draws.size)
    assert abs(draws.mean() - m_star[i, j]) < 4 * se


def test_nmc_sample_is_rescaled_observation():
    m_star = np.full((5, 4), 2.0)
    model = NmcModel(m_star=m_star, p=0.5, sigma=0.0, rank=1)
    m, _ = model.sample(1)
    data = m.tocoo().data
    assert np.allclose(data, 2.0 / 0.5)


def test_mean_degree_concentrates():
    # average degree ~ (a+b)/2 log n; a Chernoff audit at 2x the mean would
    # flag essentially no realization
    n, a, b = 5000, 4.5, 0.25
    m = TwoBlockModel.with_random_membership(n, a, b, seed=6)
    adj, _ = m.sample(0)
    mean_degree = adj.nnz / n
    expected = (a + b) / 2.0 * math.log(n)
    assert 0.8 * expected < mean_degree < 1.2 * expected
    bound = chernoff_upper_bound(mean=n * expected / 2.0, factor=2.0)
    assert bound < 1e-100


@pytest.mark.slow
def test_spectral_concentration_violation_rate():
    # ||A - EA||_2 <= c1 sqrt(log n) with a run-reported c1; violations at
    # rate > 5% would flag the sampler
    n = 2000
    m = TwoBlockModel.with_random_membership(n, 4.5, 0.25, seed=7)
    pop_mv = m.population_matvec()
    pilot = []
    for t in range(8):
        adj, _ = m.sample(R.seed_from("conc-pilot", t))
        pilot.append(spectral_norm_sym(lambda v: adj @ v - pop_mv(v), n=n, tol=1e-4))
    c1 = 1.05 * max(pilot) / math.sqrt(math.log(n))
    violations = 0
    trials = 40
    for t in range(trials):
        adj, _ = m.sample(R.seed_from("conc-main", t))
        norm = spectral_norm_sym(lambda v: adj @ v - pop_mv(v), n=n, tol=1e-4)
        violations += norm > c1 * math.sqrt(math.log(n))
    assert violations / trials <= 0.05


def test_write_instance_roundtrip():
    m = TwoBlockModel.with_random_membership(20, 4.0, 1.0, seed=8)
    adj, _ = m.sample(0)
    buf = io.StringIO()
    write_instance(buf, adj, m)
    lines = buf.getvalue().strip().split("\n")
    assert lines[0] == "# sbm2 20 20"
    triples = [line.split() for line in lines[1:]]
    rebuilt = sp.coo_matrix(
        (
            [float(v) for _, _, v in triples],
            ([int(i) for i, _, _ in triples], [int(j) for _, j, _ in triples]),
        ),
        shape=(20, 20),
    )
    full = rebuilt + sp.triu(rebuilt, 1).T
    assert (full != adj).nnz == 0


def test_truth_factors_for_completion():
    m_star = planted_lowrank(30, 4, 0.8, seed=9)
    model = NmcModel(m_star=m_star, p=1.0, sigma=0.0, rank=4)
    truth = model.truth()
    assert np.max(np.abs(truth.u.T @ truth.u - np.eye(4))) < 1e-10
    assert np.max(np.abs(truth.v.T @ truth.v - np.eye(4))) < 1e-10
    recon = (truth.u * truth.values) @ truth.v.T
    assert np.max(np.abs(recon - m_star)) < 1e-8
