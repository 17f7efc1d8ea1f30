"""Property-based checks of the algebraic invariants."""

import math

import numpy as np
import scipy.sparse as sp
from hypothesis import given, settings
from hypothesis import strategies as st
from hypothesis.extra.numpy import arrays

from eigenprobe.diagnostics import misclassification
from eigenprobe.ensembles import AssumptionAudit, eigen_gap
from eigenprobe.linalg import matrix_sign, two_to_inf
from eigenprobe.validation import DegenerateAlignmentError, matvec_of

labels = st.integers(min_value=0, max_value=1).map(lambda b: 2 * b - 1)


@given(st.lists(labels, min_size=1, max_size=60), st.data())
def test_misclassification_bounds_and_sign_invariance(est, data):
    truth = data.draw(st.lists(labels, min_size=len(est), max_size=len(est)))
    est = np.array(est)
    truth = np.array(truth)
    rate = misclassification(est, truth)
    assert 0.0 <= rate <= 0.5
    assert rate == misclassification(-est, truth)
    assert rate == misclassification(est, -truth)


@given(arrays(np.float64, (3, 3), elements=st.floats(-5, 5)))
def test_matrix_sign_is_orthonormal_or_degenerate(h):
    try:
        s = matrix_sign(h)
    except DegenerateAlignmentError:
        return
    assert np.max(np.abs(s @ s.T - np.eye(3))) < 1e-10


@given(
    arrays(np.float64, st.tuples(st.integers(1, 8), st.integers(1, 5)),
           elements=st.floats(-100, 100)),
)
def test_two_to_inf_is_max_row_norm(x):
    expected = max(np.linalg.norm(x[i]) for i in range(x.shape[0]))
    assert abs(two_to_inf(x) - expected) <= 1e-12 * max(1.0, expected)


@given(st.lists(st.floats(-50, 50), min_size=2, max_size=20), st.data())
def test_eigen_gap_matches_direct_enumeration(vals, data):
    spectrum = np.sort(np.array(vals))[::-1]
    n = spectrum.size
    s = data.draw(st.integers(0, n - 1))
    r = data.draw(st.integers(1, n - s))
    gap = eigen_gap(spectrum, s, r)
    before = math.inf if s == 0 else spectrum[s - 1] - spectrum[s]
    after = math.inf if s + r >= n else spectrum[s + r - 1] - spectrum[s + r]
    direct = min(before, after, float(np.min(np.abs(spectrum[s:s + r]))))
    assert gap == direct


@settings(max_examples=30)
@given(st.integers(2, 24), st.integers(0, 1000))
def test_dense_and_sparse_matvec_agree(n, seed):
    rng = np.random.default_rng(seed)
    a = rng.standard_normal((n, n))
    a = (a + a.T) / 2.0
    v = rng.standard_normal(n)
    dense = matvec_of(a)(v)
    sparse = matvec_of(sp.csr_matrix(a))(v)
    scale = max(1.0, float(np.abs(dense).max()))
    assert np.max(np.abs(dense - sparse)) <= 1e-12 * scale


def _phi_grid_checks(audit):
    xs = np.linspace(0.01, 1.0, 100)
    vals = audit.phi(xs)
    assert audit.phi(0.0) == 0.0
    assert np.all(np.diff(vals) >= -1e-12)          # nondecreasing
    ratio = vals / xs
    assert np.all(np.diff(ratio) <= 1e-12)          # phi(x)/x nonincreasing


def test_phi_monotonicity_grid_both_kinds():
    linear = AssumptionAudit(
        variant="z2", gamma=0.1, phi_kind="linear-gaussian", phi_scale=1.0,
        incoherence_lhs=0, incoherence_rhs=1, incoherence_ok=True,
        scaling_lhs=0.5, scaling_ok=True,
    )
    log_type = AssumptionAudit(
        variant="sbm2", gamma=0.1, phi_kind="log-bernoulli", phi_scale=13.0,
        incoherence_lhs=0, incoherence_rhs=1, incoherence_ok=True,
        scaling_lhs=0.5, scaling_ok=True,
    )
    _phi_grid_checks(linear)
    _phi_grid_checks(log_type)
