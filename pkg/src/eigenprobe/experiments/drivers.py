"""Monte Carlo drivers behind the experiment subcommands.

Each driver expands its grid into (cell, trial) work items, runs them
(serially or across processes), aggregates in a fixed order and writes one
or two CSV files.  Every trial derives its own Philox stream from
(master seed, cell coordinates, trial index), so two cells never share a
stream and reruns are byte-identical whatever the worker count.
"""

from __future__ import annotations

import math

import numpy as np

from .. import rng as _rng
from ..diagnostics import (
    misclassification,
    nmc_report,
    perturbation_report,
    tail_audit_binom_diff,
    tail_audit_row_concentration,
)
from ..ensembles import (
    NmcModel,
    ThreeBlockModel,
    TwoBlockModel,
    Z2SyncModel,
    paper_lowrank_scale,
    planted_lowrank,
)
from ..estimators import SpectralBisection, SpectralCompletion, SpectralSync, ThreeBlockEmbedding
from ..linalg.subspace import top_eigenpairs
from .grids import GridSpec
from .runner import run_items, write_csv


def z2_boundary(n: int) -> float:
    """Exact-recovery threshold noise level: sqrt(n / (2 log n))."""
    return math.sqrt(n / (2.0 * math.log(n))) if n > 1 else 0.0


def sbm_theory_exponent(a: float, b: float) -> float:
    """Predicted log(mean misclassification)/log n:  -(sqrt a - sqrt b)^2 / 2."""
    return -((math.sqrt(a) - math.sqrt(b)) ** 2) / 2.0


# ---------------------------------------------------------------------------
# trial workers (module level so they pickle)

def _z2_trial(args) -> int:
    n, sigma, master_seed, trial = args
    model = Z2SyncModel.with_random_signal(
        n, sigma, _rng.seed_from("instance", "z2-phase", master_seed, n, sigma)
    )
    y, truth = model.sample(_rng.seed_from("trial", "z2-phase", master_seed, n, sigma, trial))
    labels = SpectralSync().fit_predict(y)
    return int(misclassification(labels, truth) == 0.0)


def _sbm_phase_trial(args) -> int:
    n, a, b, master_seed, trial = args
    model = TwoBlockModel.with_random_membership(
        n, a, b, _rng.seed_from("instance", "sbm-phase", master_seed, n, a, b)
    )
    adj, truth = model.sample(_rng.seed_from("trial", "sbm-phase", master_seed, n, a, b, trial))
    labels = SpectralBisection().fit_predict(adj)
    return int(misclassification(labels, truth) == 0.0)


def _sbm_miscl_trial(args) -> float:
    n, a, b, master_seed, trial = args
    model = TwoBlockModel.with_random_membership(
        n, a, b, _rng.seed_from("instance", "sbm-miscl", master_seed, n, a, b)
    )
    adj, truth = model.sample(_rng.seed_from("trial", "sbm-miscl", master_seed, n, a, b, trial))
    labels = SpectralBisection().fit_predict(adj)
    return misclassification(labels, truth)


def _sbm3_trial(args) -> int:
    n, a, b, master_seed, trial = args
    model = ThreeBlockModel.with_random_labels(
        n, a, b, _rng.seed_from("instance", "sbm3", master_seed, n, a, b)
    )
    adj, truth = model.sample(_rng.seed_from("trial", "sbm3", master_seed, n, a, b, trial))
    emb = ThreeBlockEmbedding().fit(adj, truth)
    return int(bool((emb.separation_ > 0).all()))


def _linearization_trial(args) -> dict:
    n, a, b, master_seed, trial, want_histogram = args
    model = TwoBlockModel.with_random_membership(
        n, a, b, _rng.seed_from("instance", "sbm-linearization", master_seed, n, a, b)
    )
    adj, truth = model.sample(
        _rng.seed_from("trial", "sbm-linearization", master_seed, n, a, b, trial)
    )
    pop = model.population()
    sub = top_eigenpairs(adj, k=1, window_start=1)
    rep = perturbation_report(sub, pop, adj)
    labels = np.where(sub.basis[:, 0] >= 0, 1, -1)
    rate = misclassification(labels, truth)
    row = {
        "trial": trial,
        "n": n,
        "a": a,
        "b": b,
        "success": rate == 0.0,
        "misclassification": rate,
        "err_raw": rep.err_raw,
        "err_linearization_vs_truth": rep.err_linearization_vs_truth,
        "err_residual": rep.err_residual,
        "sub_err_aligned": rep.sub_err_aligned,
        "sub_err_linear": rep.sub_err_linear,
        "u_two_to_inf": rep.u_two_to_inf,
        "margin": rep.margin,
    }
    if want_histogram:
        s = rep.sign[0, 0]
        row["histogram"] = (math.sqrt(n) * s * sub.basis[:, 0], truth)
    return row


def _nmc_trial(args) -> dict:
    n, rank, sigma, p_log_factor, master_seed, trial = args
    p = min(1.0, p_log_factor * math.log(n) / n)
    m_star = planted_lowrank(
        n, rank, paper_lowrank_scale(n),
        _rng.seed_from("mstar", "nmc-ratios", master_seed, n, trial),
    )
    model = NmcModel(m_star=m_star, p=p, sigma=sigma, rank=rank)
    m, truth = model.sample(_rng.seed_from("trial", "nmc-ratios", master_seed, n, trial))
    est = SpectralCompletion(rank=rank).fit(m)
    rep = nmc_report(est, truth)
    return {
        "max_err": rep.max_err,
        "frob_err": rep.frob_err,
        "vec_max_err": rep.vec_max_err,
        "vec_frob_err": rep.vec_frob_err,
        "r_mat": rep.r_mat,
        "r_vec": rep.r_vec,
        "eta": rep.eta,
        "degenerate": rep.degenerate,
    }


# ---------------------------------------------------------------------------
# drivers

def run_z2_phase(grid: GridSpec, workers: int = 1, out_path=None):
    """Success proportion per (n, sigma) cell, with the theoretical boundary
    noise level alongside."""
    assert grid.kind == "z2-phase"
    cells = grid.cells()
    items = [(int(n), float(s), grid.master_seed, t) for (n, s) in cells for t in range(grid.trials)]
    flags = run_items(_z2_trial, items, workers)
    rows = []
    for ci, (n, sigma) in enumerate(cells):
        cell_flags = flags[ci * grid.trials:(ci + 1) * grid.trials]
        wins = int(sum(cell_flags))
        rows.append(
            {
                "n": int(n),
                "sigma": float(sigma),
                "boundary_sigma": z2_boundary(int(n)),
                "trials": grid.trials,
                "successes": wins,
                "success_rate": wins / grid.trials,
            }
        )
    if out_path is not None:
        write_csv(
            out_path,
            ["n", "sigma", "boundary_sigma", "trials", "successes", "success_rate"],
            rows,
            comments=[
                "z2-phase: exact-recovery proportion of the leading-eigenvector sign estimator",
                f"master_seed={grid.master_seed} trials={grid.trials}",
                "boundary_sigma = sqrt(n / (2 log n))",
            ],
            expected_rows=grid.n_cells,
        )
    return rows


def _sbm_cell_valid(n: int, a: float, b: float) -> bool:
    if not (a > b > 0.0):
        return False
    return a * math.log(n) / n <= 1.0 and b * math.log(n) / n <= 1.0


def run_sbm_phase(grid: GridSpec, workers: int = 1, out_path=None):
    """Success proportion per (a, b) cell at fixed n.  Cells whose parameters
    fall outside the model (a <= b, nonpositive rates, probability above 1)
    are recorded as skipped rows so the heatmap stays rectangular."""
    assert grid.kind == "sbm-phase"
    n = int(grid.params["n"])
    cells = grid.cells()
    valid = [(a, b) for (a, b) in cells if _sbm_cell_valid(n, a, b)]
    items = [
        (n, float(a), float(b), grid.master_seed, t) for (a, b) in valid for t in range(grid.trials)
    ]
    flags = run_items(_sbm_phase_trial, items, workers)
    by_cell = {}
    for ci, cell in enumerate(valid):
        by_cell[cell] = flags[ci * grid.trials:(ci + 1) * grid.trials]
    rows = []
    for (a, b) in cells:
        if (a, b) in by_cell:
            wins = int(sum(by_cell[(a, b)]))
            rows.append(
                {
                    "n": n,
                    "a": float(a),
                    "b": float(b),
                    "trials": grid.trials,
                    "successes": wins,
                    "success_rate": wins / grid.trials,
                    "skipped": False,
                }
            )
        else:
            rows.append(
                {
                    "n": n,
                    "a": float(a),
                    "b": float(b),
                    "trials": grid.trials,
                    "successes": None,
                    "success_rate": None,
                    "skipped": True,
                }
            )
    if out_path is not None:
        write_csv(
            out_path,
            ["n", "a", "b", "trials", "successes", "success_rate", "skipped"],
            rows,
            comments=[
                "sbm-phase: exact-recovery proportion of the second-eigenvector sign estimator",
                f"master_seed={grid.master_seed} trials={grid.trials} n={n}",
                "skipped=1 marks cells outside the model (a <= b or rate above 1); theoretical boundary: sqrt(a) - sqrt(b) = +-sqrt(2)",
            ],
            expected_rows=grid.n_cells,
        )
    return rows


def run_sbm_misclassification(grid: GridSpec, workers: int = 1, out_path=None):
    """Mean misclassification rate per (n, a) cell at fixed b, on the scale
    log(mean rate)/log n next to the theoretical exponent."""
    assert grid.kind == "sbm-miscl"
    b = float(grid.params["b"])
    cells = grid.cells()
    valid = [(n, a) for (n, a) in cells if _sbm_cell_valid(int(n), float(a), b)]
    items = [
        (int(n), float(a), b, grid.master_seed, t) for (n, a) in valid for t in range(grid.trials)
    ]
    rates = run_items(_sbm_miscl_trial, items, workers)
    by_cell = {}
    for ci, cell in enumerate(valid):
        by_cell[cell] = rates[ci * grid.trials:(ci + 1) * grid.trials]
    rows = []
    for (n, a) in cells:
        n = int(n)
        if (n, a) in by_cell:
            mean_rate = float(np.mean(by_cell[(n, a)]))
            log_col = math.log(mean_rate) / math.log(n) if mean_rate > 0 else -math.inf
            rows.append(
                {
                    "n": n,
                    "a": float(a),
                    "b": b,
                    "trials": grid.trials,
                    "mean_rate": mean_rate,
                    "log_mean_over_log_n": log_col,
                    "theory_exponent": sbm_theory_exponent(float(a), b),
                    "skipped": False,
                }
            )
        else:
            rows.append(
                {
                    "n": n,
                    "a": float(a),
                    "b": b,
                    "trials": grid.trials,
                    "mean_rate": None,
                    "log_mean_over_log_n": None,
                    "theory_exponent": sbm_theory_exponent(float(a), b) if a > 0 else None,
                    "skipped": True,
                }
            )
    if out_path is not None:
        write_csv(
            out_path,
            ["n", "a", "b", "trials", "mean_rate", "log_mean_over_log_n", "theory_exponent", "skipped"],
            rows,
            comments=[
                "sbm-miscl: mean misclassification rate of the second-eigenvector sign estimator",
                f"master_seed={grid.master_seed} trials={grid.trials} b={b}",
                "aggregation is mean-then-log: log_mean_over_log_n = log(mean rate over trials) / log n; zero mean rates give -inf",
                "theory_exponent = -(sqrt(a) - sqrt(b))^2 / 2",
            ],
            expected_rows=grid.n_cells,
        )
    return rows


def run_sbm_linearization(grid: GridSpec, workers: int = 1, out_path=None, histogram_path=None):
    """Per-trial perturbation reports for one (n, a, b) setting, plus the
    rescaled second-eigenvector coordinates of the first trial for the
    histogram figure."""
    assert grid.kind == "sbm-linearization"
    n = int(grid.params["n"])
    a = float(grid.params["a"])
    b = float(grid.params["b"])
    items = [(n, a, b, grid.master_seed, t, t == 0) for t in range(grid.trials)]
    results = run_items(_linearization_trial, items, workers)
    hist_rows = []
    rows = []
    for res in results:
        res = dict(res)
        hist = res.pop("histogram", None)
        rows.append(res)
        if hist is not None:
            values, truth = hist
            hist_rows = [
                {"node": i, "value": float(values[i]), "truth": int(truth[i])} for i in range(n)
            ]
    columns = [
        "trial", "n", "a", "b", "success", "misclassification",
        "err_raw", "err_linearization_vs_truth", "err_residual",
        "sub_err_aligned", "sub_err_linear", "u_two_to_inf", "margin",
    ]
    if out_path is not None:
        write_csv(
            out_path,
            columns,
            rows,
            comments=[
                "sbm-linearization: per-trial entrywise errors, all scaled by sqrt(n), sign-minimized",
                f"master_seed={grid.master_seed} trials={grid.trials} n={n} a={a} b={b}",
            ],
            expected_rows=grid.trials,
        )
    if histogram_path is not None:
        write_csv(
            histogram_path,
            ["node", "value", "truth"],
            hist_rows,
            comments=[
                "sqrt(n) * second eigenvector coordinates of the first trial (sign aligned to the linearization)",
                f"master_seed={grid.master_seed} n={n} a={a} b={b}",
            ],
            expected_rows=n,
        )
    return rows, hist_rows


def run_nmc_ratios(grid: GridSpec, workers: int = 1, out_path=None):
    """Per-n averages of the completion report, including the two ratio
    statistics that should stay flat as n grows."""
    assert grid.kind == "nmc-ratios"
    rank = int(grid.params["rank"])
    sigma = float(grid.params["sigma"])
    p_log_factor = float(grid.params["p_log_factor"])
    cells = grid.cells()
    items = [
        (int(n), rank, sigma, p_log_factor, grid.master_seed, t)
        for (n,) in cells
        for t in range(grid.trials)
    ]
    reports = run_items(_nmc_trial, items, workers)
    rows = []
    for ci, (n,) in enumerate(cells):
        cell = reports[ci * grid.trials:(ci + 1) * grid.trials]
        degenerate = sum(1 for r in cell if r["degenerate"])
        clean = [r for r in cell if not r["degenerate"]]

        def mean_of(key):
            if not clean:
                return None
            return float(np.mean([r[key] for r in clean]))

        rows.append(
            {
                "n": int(n),
                "p": min(1.0, p_log_factor * math.log(int(n)) / int(n)),
                "rank": rank,
                "sigma": sigma,
                "trials": grid.trials,
                "degenerate_trials": degenerate,
                "mean_max_err": mean_of("max_err"),
                "mean_frob_err": mean_of("frob_err"),
                "mean_vec_max_err": mean_of("vec_max_err"),
                "mean_vec_frob_err": mean_of("vec_frob_err"),
                "mean_r_mat": mean_of("r_mat"),
                "mean_r_vec": mean_of("r_vec"),
                "mean_eta": mean_of("eta"),
            }
        )
    if out_path is not None:
        write_csv(
            out_path,
            [
                "n", "p", "rank", "sigma", "trials", "degenerate_trials",
                "mean_max_err", "mean_frob_err", "mean_vec_max_err", "mean_vec_frob_err",
                "mean_r_mat", "mean_r_vec", "mean_eta",
            ],
            rows,
            comments=[
                "nmc-ratios: per-n averages of completion errors; r_mat and r_vec are the scaled max/Frobenius ratios",
                f"master_seed={grid.master_seed} trials={grid.trials} rank={rank} sigma={sigma} p={p_log_factor}*log(n)/n",
                "ratio denominators carry the eta and sqrt(log n) scalings; degenerate trials (vanishing denominators) are excluded from the means",
            ],
            expected_rows=grid.n_cells,
        )
    return rows


def run_sbm3_separation(n: int, a: float, b: float, trials: int, master_seed: int,
                        workers: int = 1):
    """Fraction of trials in which every node sits strictly closer to its own
    aligned population center than to any other."""
    items = [(n, a, b, master_seed, t) for t in range(trials)]
    flags = run_items(_sbm3_trial, items, workers)
    return int(sum(flags)), trials


# ---------------------------------------------------------------------------
# audits

TAIL_PRESETS = {
    "lem-tail-default": ("binom-diff", {"a": 6.0, "b": 2.0, "epsilon": 0.0, "n": 2000, "samples": 100_000}),
    "row-conc-ones": ("row-concentration", {"n": 1000, "alpha": 1.0, "samples": 100_000, "shape": "ones"}),
    "row-conc-spiky": ("row-concentration", {"n": 1000, "alpha": 1.0, "samples": 100_000, "shape": "spike"}),
}


def run_tail_audit(preset: str, seed: int = 0):
    kind, prm = TAIL_PRESETS[preset]
    if kind == "binom-diff":
        return tail_audit_binom_diff(
            prm["a"], prm["b"], prm["epsilon"], prm["n"], prm["samples"], seed=seed
        )
    n = prm["n"]
    if prm["shape"] == "ones":
        w = np.ones(n)
    else:
        w = np.zeros(n)
        w[0] = 1.0
    return tail_audit_row_concentration(w, math.log(n) / n, prm["alpha"], prm["samples"], seed=seed)


def run_audits(out_path=None, seed: int = 0, sbm_params=(5000, 4.5, 0.25), z2_n: int = 10000):
    """All shipped audits: the two concentration-assumption checks plus the
    three tail-bound presets; one row per audit."""
    rows = []
    z2 = Z2SyncModel.with_random_signal(z2_n, 1.0, seed)
    aud = z2.audit()
    rows.append(
        {
            "audit": "assumptions-z2",
            "detail": f"n={z2_n}",
            "analytic_bound": 1.0,
            "empirical": aud.scaling_lhs,
            "std_error": 0.0,
            "passed": aud.scaling_ok,
            "extra": f"gamma={aud.gamma!r} incoherence_ok={int(aud.incoherence_ok)}",
        }
    )
    n, a, b = sbm_params
    sbm = TwoBlockModel.with_random_membership(int(n), float(a), float(b), seed)
    aud = sbm.audit()
    rows.append(
        {
            "audit": "assumptions-sbm2",
            "detail": f"n={n} a={a} b={b}",
            "analytic_bound": 1.0,
            "empirical": aud.scaling_lhs,
            "std_error": 0.0,
            "passed": aud.scaling_ok,
            "extra": f"gamma={aud.gamma!r} c1={aud.c1!r} incoherence_ok={int(aud.incoherence_ok)}",
        }
    )
    for preset in TAIL_PRESETS:
        ta = run_tail_audit(preset, seed=seed)
        rows.append(
            {
                "audit": f"tail-{preset}",
                "detail": ta.name,
                "analytic_bound": ta.bound_formula_value,
                "empirical": ta.empirical_probability,
                "std_error": ta.std_error,
                "passed": ta.passed,
                "extra": f"samples={ta.samples}",
            }
        )
    if out_path is not None:
        write_csv(
            out_path,
            ["audit", "detail", "analytic_bound", "empirical", "std_error", "passed", "extra"],
            rows,
            comments=[
                "audits: analytic bound vs Monte Carlo estimate; assumption rows compare the scaling product against 1",
                f"seed={seed}",
            ],
            expected_rows=len(rows),
        )
    return rows
