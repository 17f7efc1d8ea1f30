"""Entrywise perturbation diagnostics and empirical tail-bound audits.

The central object is the error decomposition of an empirical eigenvector
around its population counterpart,

    u - u*  =  (A u* / lambda* - u*)  +  (u - A u* / lambda*),

whose two pieces are the first-order (linear in A) perturbation and the
higher-order remainder.  The report measures all three quantities in the
scaled sup norm, with one shared sign (rank one) or one shared orthogonal
alignment through the matrix sign function (higher rank).
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import rng as _rng
from .ensembles import CompletionTruth, PopulationModel
from .estimators import SpectralCompletion, linearize
from .linalg.norms import frobenius, max_abs, two_to_inf
from .linalg.sign import matrix_sign
from .linalg.subspace import SpectralSubspace, top_eigenpairs

DENSE_PROBE_LIMIT = 512


# ---------------------------------------------------------------------------
# misclassification

def misclassification(est, truth) -> float:
    """Sign-minimized disagreement fraction between two +-1 label vectors.

    min over s in {+-1} of  n^-1 #   { i : est_i != s * truth_i };  always in
    [0, 1/2] because one of s, -s disagrees on at most half the nodes.
    """
    est = np.asarray(est)
    truth = np.asarray(truth)
    if est.shape != truth.shape or est.ndim != 1:
        raise ValueError("label vectors must be 1-d and of equal length")
    if not (np.all(np.isin(est, (-1, 1))) and np.all(np.isin(truth, (-1, 1)))):
        raise ValueError("labels must be +-1")
    # integer counts first: the sign-flip symmetry is then exact in floats
    k = int(np.count_nonzero(est != truth))
    return min(k, est.size - k) / est.size


# ---------------------------------------------------------------------------
# perturbation report

@dataclass(frozen=True)
class PerturbationReport:
    """Scaled entrywise errors of one trial.

    ``err_raw``: sqrt(n) ||u - s u*||_inf, ``err_linearization_vs_truth``:
    sqrt(n) ||A u*/lambda* - u*||_inf, ``err_residual``: sqrt(n)
    ||u - s A u*/lambda*||_inf, with the shared sign/alignment chosen to
    minimize the residual.  ``sub_*`` are the unscaled two-to-infinity
    counterparts; ``margin`` is the scaled sign margin against the
    population pattern.
    """

    err_raw: float
    err_linearization_vs_truth: float
    err_residual: float
    sub_err_aligned: float       # ||U sgn(H) - U*||_{2->inf}
    sub_err_linear: float        # ||U sgn(H) - A U* (Lambda*)^-1||_{2->inf}
    u_two_to_inf: float          # ||U||_{2->inf}
    margin: float
    sign: np.ndarray             # the shared alignment (r x r orthogonal)


def perturbation_report(subspace: SpectralSubspace, pop: PopulationModel, a) -> PerturbationReport:
    """Compare an empirical eigenvector window against the population window
    and its first-order linearization, under one shared alignment."""
    u = subspace.basis
    u_star = pop.basis
    if u.shape != u_star.shape:
        raise ValueError(f"window shapes differ: {u.shape} vs {u_star.shape}")
    n, r = u.shape
    lin = linearize(a, pop)
    sqrt_n = math.sqrt(n)
    if r == 1:
        res_plus = np.abs(u[:, 0] - lin[:, 0]).max()
        res_minus = np.abs(u[:, 0] + lin[:, 0]).max()
        s = 1.0 if res_plus <= res_minus else -1.0
        sign = np.array([[s]])
        err_res = sqrt_n * min(res_plus, res_minus)
        err_raw = sqrt_n * min(
            np.abs(u[:, 0] - u_star[:, 0]).max(), np.abs(u[:, 0] + u_star[:, 0]).max()
        )
    else:
        sign = matrix_sign(u.T @ u_star)
        err_res = sqrt_n * max_abs(u @ sign - lin)
        err_raw = sqrt_n * max_abs(u @ sign - u_star)
    aligned = u @ sign
    err_lin = sqrt_n * max_abs(lin - u_star)
    truth = np.where(u_star[:, 0] >= 0, 1, -1)
    prod = sqrt_n * truth * aligned[:, 0]
    margin = float(max(prod.min(), (-prod).min()))
    return PerturbationReport(
        err_raw=float(err_raw),
        err_linearization_vs_truth=float(err_lin),
        err_residual=float(err_res),
        sub_err_aligned=two_to_inf(aligned - u_star),
        sub_err_linear=two_to_inf(aligned - lin),
        u_two_to_inf=two_to_inf(u),
        margin=margin,
        sign=sign,
    )


# ---------------------------------------------------------------------------
# completion report

@dataclass(frozen=True)
class NmcReport:
    """Reconstruction and singular-subspace errors for one completion trial,
    plus the two scaled max-vs-Frobenius ratio statistics that the theory
    predicts stay flat in n."""

    max_err: float
    frob_err: float
    vec_max_err: float
    vec_frob_err: float
    r_mat: float
    r_vec: float
    eta: float
    degenerate: bool


RATIO_FLOOR = 1e-14


def nmc_report(est: SpectralCompletion, truth: CompletionTruth) -> NmcReport:
    """Errors of a fitted completion estimator against the planted truth.

    The alignment is the matrix sign of H = (U^T U* + V^T V*) / 2, shared
    between the two singular subspaces; the log factor inside the ratios
    uses the dilation dimension n1 + n2.
    """
    u, v = est.u_, est.v_
    u_star, v_star = truth.u, truth.v
    if u.shape != u_star.shape or v.shape != v_star.shape:
        raise ValueError("estimate/truth factor shapes differ")
    n1, _ = u.shape
    n2, _ = v.shape
    h = 0.5 * (u.T @ u_star + v.T @ v_star)
    sign = matrix_sign(h)
    diff = est.reconstruct() - truth.m_star
    max_err = max_abs(diff)
    frob_err = frobenius(diff)
    vec_max_err = max(two_to_inf(u @ sign - u_star), two_to_inf(v @ sign - v_star))
    vec_frob_err = max(frobenius(u @ sign - u_star), frobenius(v @ sign - v_star))
    eta = max(two_to_inf(u_star), two_to_inf(v_star))
    sqrt_log = math.sqrt(math.log(n1 + n2))
    mat_denom = eta**2 * sqrt_log * frob_err
    vec_denom = eta * sqrt_log * vec_frob_err
    degenerate = mat_denom <= RATIO_FLOOR or vec_denom <= RATIO_FLOOR
    return NmcReport(
        max_err=float(max_err),
        frob_err=float(frob_err),
        vec_max_err=float(vec_max_err),
        vec_frob_err=float(vec_frob_err),
        r_mat=float(max_err / mat_denom) if mat_denom > RATIO_FLOOR else math.nan,
        r_vec=float(vec_max_err / vec_denom) if vec_denom > RATIO_FLOOR else math.nan,
        eta=float(eta),
        degenerate=degenerate,
    )


# ---------------------------------------------------------------------------
# leave-one-out probe

def leave_one_out_probe(a, pop: PopulationModel, m: int) -> dict:
    """Distance between the eigenvector window of A and of A with row and
    column ``m`` zeroed out.

    A numerical illustration of the decoupling device used in the analysis
    (the zeroed copy is independent of row m); dense only and capped at
    n <= 512 because it performs full eigensolves.
    """
    a = np.asarray(a, dtype=float)
    n = a.shape[0]
    if n > DENSE_PROBE_LIMIT:
        raise ValueError(f"probe is a dense-only tool, n must be <= {DENSE_PROBE_LIMIT}")
    if not 0 <= m < n:
        raise ValueError(f"m must be in [0, {n})")
    s, r = pop.window_start, pop.subspace.r
    a_m = a.copy()
    a_m[m, :] = 0.0
    a_m[:, m] = 0.0
    sub = top_eigenpairs(a, k=r, window_start=s, method="dense")
    sub_m = top_eigenpairs(a_m, k=r, window_start=s, method="dense")
    u, u_m = sub.basis, sub_m.basis
    if r == 1:
        dist_u = min(
            float(np.linalg.norm(u[:, 0] - u_m[:, 0])),
            float(np.linalg.norm(u[:, 0] + u_m[:, 0])),
        )
    else:
        dist_u = float(np.linalg.norm(u @ matrix_sign(u.T @ u_m) - u_m))
    proj_gap = u @ u.T - u_m @ u_m.T
    subspace_dist = float(np.linalg.norm(proj_gap, 2))
    return {
        "dist_u": dist_u,
        "subspace_dist": subspace_dist,
        "u_inf": float(np.abs(u).max()),
    }


# ---------------------------------------------------------------------------
# tail-bound audits

@dataclass(frozen=True)
class TailAudit:
    """Monte Carlo check of an analytic tail bound.

    Passes when the empirical frequency does not exceed the bound beyond
    three standard errors of Monte Carlo noise:
    empirical <= bound * (1 + 3 rel_se) + 3 abs_se.
    """

    name: str
    bound_formula_value: float
    empirical_probability: float
    std_error: float
    samples: int

    @property
    def passed(self) -> bool:
        se = self.std_error
        p_hat = self.empirical_probability
        rel = se / p_hat if p_hat > 0 else 0.0
        return bool(p_hat <= self.bound_formula_value * (1.0 + 3.0 * rel) + 3.0 * se)


def _finish_tail(name, bound, hits, samples) -> TailAudit:
    p_hat = hits / samples
    se = math.sqrt(p_hat * (1.0 - p_hat) / samples)
    return TailAudit(
        name=name,
        bound_formula_value=float(bound),
        empirical_probability=float(p_hat),
        std_error=float(se),
        samples=int(samples),
    )


def tail_audit_binom_diff(a: float, b: float, epsilon: float, n: int, samples: int,
                          seed: int = 0) -> TailAudit:
    """Lower tail of a difference of Binomial(n/2, . log n / n) sums.

    Analytic bound: n^(-(sqrt(a)-sqrt(b))^2 / 2 + epsilon log(a/b) / 2) for
    the event  sum W - sum Z <= epsilon log n.
    """
    if not a > b > 0:
        raise ValueError("need a > b > 0 (the bound degenerates otherwise)")
    if samples < 10_000:
        raise ValueError("need at least 10^4 samples for a stable audit")
    logn = math.log(n)
    half = n // 2
    rng = _rng.stream("tail-binom-diff", float(a), float(b), float(epsilon), n, samples, seed)
    w = rng.binomial(half, a * logn / n, size=samples)
    z = rng.binomial(half, b * logn / n, size=samples)
    hits = int(np.count_nonzero(w - z <= epsilon * logn))
    exponent = -((math.sqrt(a) - math.sqrt(b)) ** 2) / 2.0 + epsilon * math.log(a / b) / 2.0
    return _finish_tail("binom-diff", n**exponent, hits, samples)


def tail_audit_row_concentration(w: np.ndarray, p: float, alpha: float, samples: int,
                                 seed: int = 0, chunk: int = 4096) -> TailAudit:
    """Weighted centered Bernoulli row sums against the Bernstein-flavored
    bound 2 exp(-alpha n p) for the event

        | sum_i w_i (X_i - p) |  >  (2+alpha) p n ||w||_inf / (1 v log(sqrt(n) ||w||_inf / ||w||_2)).
    """
    w = np.asarray(w, dtype=float)
    n = w.size
    if not 0.0 < p <= 1.0:
        raise ValueError("p must be in (0, 1]")
    if alpha < 0:
        raise ValueError("alpha must be nonnegative")
    w_inf = float(np.abs(w).max()) if n else 0.0
    w_2 = float(np.linalg.norm(w))
    if w_inf == 0.0:
        threshold = 0.0
    else:
        threshold = (2.0 + alpha) * p * n * w_inf / max(1.0, math.log(math.sqrt(n) * w_inf / w_2))
    rng = _rng.stream("tail-row-conc", w, float(p), float(alpha), samples, seed)
    hits = 0
    done = 0
    mean = p * w.sum()
    while done < samples:
        m = min(chunk, samples - done)
        x = (rng.random((m, n)) < p).astype(float)
        s = x @ w - mean
        hits += int(np.count_nonzero(np.abs(s) > threshold))
        done += m
    return _finish_tail("row-concentration", 2.0 * math.exp(-alpha * n * p), hits, samples)


def chernoff_upper_bound(mean: float, factor: float) -> float:
    """P(S >= factor * mean) <= exp(-(factor-1)^2 mean / (1 + factor)) for
    sums of independent [0,1] variables."""
    eps = factor - 1.0
    if eps <= 0:
        return 1.0
    return math.exp(-(eps**2) * mean / (2.0 + eps))
