"""Monte Carlo checks pinned to specific operating points, away from the
acceptance suite's cells: deep inside and far outside the recovery regions."""

import math

import numpy as np
import pytest

from eigenprobe.diagnostics import nmc_report
from eigenprobe.ensembles import NmcModel, Z2SyncModel, paper_lowrank_scale, planted_lowrank
from eigenprobe.estimators import SpectralCompletion
from eigenprobe.experiments.drivers import _z2_trial, z2_boundary


@pytest.mark.slow
def test_z2_well_inside_and_well_outside_the_boundary():
    n = 1000
    boundary = z2_boundary(n)
    inside = sum(_z2_trial((n, 0.5 * boundary, 11, t)) for t in range(100))
    outside = sum(_z2_trial((n, 2.0 * boundary, 11, t)) for t in range(100))
    assert inside >= 99
    assert outside <= 5


def test_z2_audit_uniform_eigenvector_is_incoherent():
    model = Z2SyncModel.with_random_signal(10_000, 0.5, seed=0)
    audit = model.audit()
    assert audit.incoherence_ok
    assert audit.gamma == max(3.0 / math.sqrt(math.log(10_000)), 1.0 / 100.0)


def test_completion_reference_setting_single_trial():
    # reference operating point (scaled to one draw): errors finite, ratios well defined
    n, r, sigma = 1000, 5, 1.0
    p = 10.0 * math.log(n) / n
    m_star = planted_lowrank(n, r, paper_lowrank_scale(n), seed=3)
    model = NmcModel(m_star=m_star, p=p, sigma=sigma, rank=r)
    m, truth = model.sample(0)
    est = SpectralCompletion(rank=r).fit(m)
    rep = nmc_report(est, truth)
    assert np.isfinite(rep.max_err) and rep.max_err > 0
    assert np.isfinite(rep.r_mat) and np.isfinite(rep.r_vec)
    assert not rep.degenerate
    assert rep.max_err <= rep.frob_err  # sup norm never exceeds Frobenius
