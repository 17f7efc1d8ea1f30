"""Command line interface.

Subcommands: ``sample`` (write one instance to a text file), ``estimate``
(run one estimator on a fresh sample and print the outcome), ``diagnose``
(perturbation / completion / leave-one-out reports), ``audit``
(assumption and tail-bound audits) and ``experiment`` (the Monte Carlo
drivers, writing CSV).  Identical invocations with the same seed print
identical output and write identical files.
"""

from __future__ import annotations

import argparse
import json
import math
import sys
from pathlib import Path

import numpy as np

from . import rng as _rng
from .diagnostics import leave_one_out_probe, misclassification, nmc_report, perturbation_report
from .ensembles import (
    NmcModel,
    ThreeBlockModel,
    TwoBlockModel,
    Z2SyncModel,
    paper_lowrank_scale,
    planted_lowrank,
    write_instance,
)
from .estimators import SpectralBisection, SpectralCompletion, SpectralSync, ThreeBlockEmbedding
from .experiments import drivers
from .experiments.grids import PRESETS, grid_from_dict
from .experiments.runner import default_workers
from .linalg.subspace import top_eigenpairs


def _fmt(v) -> str:
    if isinstance(v, (bool, np.bool_)):
        return "true" if v else "false"
    if isinstance(v, float):
        return repr(v)
    return str(v)


def _emit(pairs):
    for key, value in pairs:
        print(f"{key}: {_fmt(value)}")


def _build_model(args):
    variant = args.variant
    if variant == "z2":
        if args.sigma is None:
            raise SystemExit("z2 requires --sigma")
        return Z2SyncModel.with_random_signal(args.n, args.sigma, args.seed)
    if variant == "sbm":
        if args.a is None or args.b is None:
            raise SystemExit("sbm requires --a and --b")
        return TwoBlockModel.with_random_membership(args.n, args.a, args.b, args.seed)
    if variant == "sbm3":
        if args.a is None or args.b is None:
            raise SystemExit("sbm3 requires --a and --b")
        return ThreeBlockModel.with_random_labels(args.n, args.a, args.b, args.seed)
    if variant == "nmc":
        rank = args.rank
        p = args.p if args.p is not None else min(1.0, 10.0 * math.log(args.n) / args.n)
        sigma = args.sigma if args.sigma is not None else 1.0
        m_star = planted_lowrank(
            args.n, rank, paper_lowrank_scale(args.n), _rng.seed_from("cli-mstar", args.seed)
        )
        return NmcModel(m_star=m_star, p=p, sigma=sigma, rank=rank)
    raise SystemExit(f"unknown variant {variant}")


def _cmd_sample(args) -> int:
    model = _build_model(args)
    matrix, _ = model.sample(args.seed)
    out = Path(args.output)
    out.parent.mkdir(parents=True, exist_ok=True)
    write_instance(str(out), matrix, model)
    print(f"wrote: {out}")
    return 0


def _cmd_estimate(args) -> int:
    model = _build_model(args)
    matrix, truth = model.sample(args.seed)
    if args.variant == "z2":
        est = SpectralSync().fit(matrix, truth)
        rate = misclassification(est.labels_, truth)
        _emit(
            [
                ("variant", "z2"), ("n", args.n), ("sigma", args.sigma), ("seed", args.seed),
                ("boundary_sigma", drivers.z2_boundary(args.n)),
                ("success", rate == 0.0), ("misclassification", rate), ("margin", est.margin_),
            ]
        )
    elif args.variant == "sbm":
        est = SpectralBisection().fit(matrix, truth)
        rate = misclassification(est.labels_, truth)
        _emit(
            [
                ("variant", "sbm"), ("n", args.n), ("a", args.a), ("b", args.b), ("seed", args.seed),
                ("success", rate == 0.0), ("misclassification", rate), ("margin", est.margin_),
                ("ambiguous_second_eigenvalue", est.ambiguous_),
            ]
        )
    elif args.variant == "sbm3":
        est = ThreeBlockEmbedding().fit(matrix, truth)
        sep = est.separation_
        _emit(
            [
                ("variant", "sbm3"), ("n", args.n), ("a", args.a), ("b", args.b), ("seed", args.seed),
                ("all_margins_positive", bool((sep > 0).all())),
                ("min_margin_sqrt_n", float(sep.min() * math.sqrt(args.n))),
                ("positive_fraction", float((sep > 0).mean())),
            ]
        )
    else:
        est = SpectralCompletion(rank=model.rank).fit(matrix)
        rep = nmc_report(est, model.truth())
        _emit(
            [
                ("variant", "nmc"), ("n", args.n), ("rank", model.rank), ("p", model.p),
                ("sigma", model.sigma), ("seed", args.seed),
                ("max_err", rep.max_err), ("frob_err", rep.frob_err),
                ("vec_max_err", rep.vec_max_err), ("r_mat", rep.r_mat), ("r_vec", rep.r_vec),
                ("rank_deficient", est.rank_deficient_),
            ]
        )
    return 0


def _cmd_diagnose(args) -> int:
    if args.what == "perturbation":
        model = TwoBlockModel.with_random_membership(args.n, args.a, args.b, args.seed)
        matrix, _ = model.sample(args.seed)
        sub = top_eigenpairs(matrix, k=1, window_start=1)
        rep = perturbation_report(sub, model.population(), matrix)
        _emit(
            [
                ("variant", "sbm"), ("n", args.n), ("a", args.a), ("b", args.b), ("seed", args.seed),
                ("err_raw", rep.err_raw),
                ("err_linearization_vs_truth", rep.err_linearization_vs_truth),
                ("err_residual", rep.err_residual),
                ("sub_err_aligned", rep.sub_err_aligned),
                ("sub_err_linear", rep.sub_err_linear),
                ("u_two_to_inf", rep.u_two_to_inf),
                ("margin", rep.margin),
            ]
        )
    elif args.what == "nmc":
        ns = argparse.Namespace(
            variant="nmc", n=args.n, sigma=args.sigma, p=args.p, rank=args.rank, seed=args.seed
        )
        return _cmd_estimate(ns)
    else:  # loo
        model = TwoBlockModel.with_random_membership(args.n, args.a, args.b, args.seed)
        matrix, _ = model.sample(args.seed)
        probe = leave_one_out_probe(matrix.toarray(), model.population(), args.m)
        _emit(
            [
                ("variant", "sbm"), ("n", args.n), ("a", args.a), ("b", args.b),
                ("seed", args.seed), ("m", args.m),
                ("dist_u", probe["dist_u"]), ("subspace_dist", probe["subspace_dist"]),
                ("u_inf", probe["u_inf"]),
            ]
        )
    return 0


def _cmd_audit(args) -> int:
    if args.what == "assumptions":
        if args.variant == "z2":
            model = Z2SyncModel.with_random_signal(args.n, args.sigma or 1.0, args.seed)
            aud = model.audit()
        else:
            model = TwoBlockModel.with_random_membership(args.n, args.a, args.b, args.seed)
            aud = model.audit()
        _emit(
            [
                ("variant", aud.variant), ("n", args.n),
                ("gamma", aud.gamma), ("phi_kind", aud.phi_kind), ("phi_scale", aud.phi_scale),
                ("c1", aud.c1 if aud.c1 is not None else float("nan")),
                ("incoherence_lhs", aud.incoherence_lhs), ("incoherence_rhs", aud.incoherence_rhs),
                ("incoherence_ok", aud.incoherence_ok),
                ("scaling_lhs", aud.scaling_lhs), ("scaling_ok", aud.scaling_ok),
            ]
        )
    else:
        ta = drivers.run_tail_audit(args.preset, seed=args.seed)
        _emit(
            [
                ("preset", args.preset), ("bound", ta.bound_formula_value),
                ("empirical", ta.empirical_probability), ("std_error", ta.std_error),
                ("samples", ta.samples), ("passed", ta.passed),
            ]
        )
    return 0


def _grid_for(args):
    if args.grid is not None:
        data = json.loads(Path(args.grid).read_text())
        grid = grid_from_dict(data)
        if grid.kind != args.kind:
            raise SystemExit(f"grid file kind {grid.kind!r} does not match subcommand {args.kind!r}")
        return grid
    scale = "paper" if args.paper_scale else "desk"
    return PRESETS[args.kind](scale, args.seed)


def _cmd_experiment(args) -> int:
    grid = _grid_for(args)
    out_dir = Path(args.output)
    out_dir.mkdir(parents=True, exist_ok=True)
    workers = args.workers
    if args.kind == "z2-phase":
        drivers.run_z2_phase(grid, workers, out_dir / "z2_phase.csv")
        written = ["z2_phase.csv"]
    elif args.kind == "sbm-phase":
        drivers.run_sbm_phase(grid, workers, out_dir / "sbm_phase.csv")
        written = ["sbm_phase.csv"]
    elif args.kind == "sbm-miscl":
        drivers.run_sbm_misclassification(grid, workers, out_dir / "sbm_miscl.csv")
        written = ["sbm_miscl.csv"]
    elif args.kind == "sbm-linearization":
        drivers.run_sbm_linearization(
            grid, workers, out_dir / "sbm_linearization.csv", out_dir / "sbm_linearization_histogram.csv"
        )
        written = ["sbm_linearization.csv", "sbm_linearization_histogram.csv"]
    elif args.kind == "nmc-ratios":
        drivers.run_nmc_ratios(grid, workers, out_dir / "nmc_ratios.csv")
        written = ["nmc_ratios.csv"]
    else:
        raise SystemExit(f"unknown experiment {args.kind}")
    for name in written:
        print(f"wrote: {out_dir / name}")
    return 0


def _cmd_audits_csv(args) -> int:
    out_dir = Path(args.output)
    out_dir.mkdir(parents=True, exist_ok=True)
    drivers.run_audits(out_dir / "audits.csv", seed=args.seed)
    print(f"wrote: {out_dir / 'audits.csv'}")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="eigenprobe",
        description="Spectral estimators, entrywise perturbation diagnostics, Monte Carlo experiments",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add_model_flags(p, variants):
        p.add_argument("variant", choices=variants)
        p.add_argument("--n", type=int, required=True)
        p.add_argument("--a", type=float, default=None)
        p.add_argument("--b", type=float, default=None)
        p.add_argument("--sigma", type=float, default=None)
        p.add_argument("--p", type=float, default=None)
        p.add_argument("--rank", type=int, default=5)
        p.add_argument("--seed", type=int, default=0)

    p = sub.add_parser("sample", help="write one sampled instance to a text edge list")
    add_model_flags(p, ("z2", "sbm", "sbm3", "nmc"))
    p.add_argument("-o", "--output", required=True)
    p.set_defaults(func=_cmd_sample)

    p = sub.add_parser("estimate", help="sample one instance and run its estimator")
    add_model_flags(p, ("z2", "sbm", "sbm3", "nmc"))
    p.set_defaults(func=_cmd_estimate)

    p = sub.add_parser("diagnose", help="perturbation / completion / leave-one-out reports")
    dsub = p.add_subparsers(dest="what", required=True)
    d1 = dsub.add_parser("perturbation")
    for flag, typ, req, dft in (("--n", int, True, None), ("--a", float, True, None),
                                ("--b", float, True, None), ("--seed", int, False, 0)):
        d1.add_argument(flag, type=typ, required=req, default=dft)
    d1.set_defaults(func=_cmd_diagnose)
    d2 = dsub.add_parser("nmc")
    for flag, typ, req, dft in (("--n", int, True, None), ("--rank", int, False, 5),
                                ("--sigma", float, False, 1.0), ("--p", float, False, None),
                                ("--seed", int, False, 0)):
        d2.add_argument(flag, type=typ, required=req, default=dft)
    d2.set_defaults(func=_cmd_diagnose)
    d3 = dsub.add_parser("loo")
    for flag, typ, req, dft in (("--n", int, True, None), ("--a", float, True, None),
                                ("--b", float, True, None), ("--m", int, True, None),
                                ("--seed", int, False, 0)):
        d3.add_argument(flag, type=typ, required=req, default=dft)
    d3.set_defaults(func=_cmd_diagnose)

    p = sub.add_parser("audit", help="assumption and tail-bound audits")
    asub = p.add_subparsers(dest="what", required=True)
    a1 = asub.add_parser("assumptions")
    a1.add_argument("--variant", choices=("z2", "sbm"), required=True)
    a1.add_argument("--n", type=int, required=True)
    a1.add_argument("--a", type=float, default=None)
    a1.add_argument("--b", type=float, default=None)
    a1.add_argument("--sigma", type=float, default=None)
    a1.add_argument("--seed", type=int, default=0)
    a1.set_defaults(func=_cmd_audit)
    a2 = asub.add_parser("tails")
    a2.add_argument("--preset", choices=sorted(drivers.TAIL_PRESETS), required=True)
    a2.add_argument("--seed", type=int, default=0)
    a2.set_defaults(func=_cmd_audit)
    a3 = asub.add_parser("all", help="run every audit and write audits.csv")
    a3.add_argument("--seed", type=int, default=0)
    a3.add_argument("-o", "--output", default=".")
    a3.set_defaults(func=_cmd_audits_csv)

    p = sub.add_parser("experiment", help="Monte Carlo drivers writing CSV")
    p.add_argument("kind", choices=sorted(PRESETS))
    scale = p.add_mutually_exclusive_group()
    scale.add_argument("--paper-scale", action="store_true")
    scale.add_argument("--desk-scale", action="store_true", default=True)
    p.add_argument("--grid", default=None, help="JSON grid file overriding the presets")
    p.add_argument("--seed", type=int, default=0, help="master seed")
    p.add_argument("--workers", type=int, default=default_workers())
    p.add_argument("-o", "--output", default=".")
    p.set_defaults(func=_cmd_experiment)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (ValueError, NotImplementedError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
