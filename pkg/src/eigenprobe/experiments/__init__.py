from .drivers import (
    run_audits,
    run_nmc_ratios,
    run_sbm3_separation,
    run_sbm_linearization,
    run_sbm_misclassification,
    run_sbm_phase,
    run_tail_audit,
    run_z2_phase,
    sbm_theory_exponent,
    z2_boundary,
)
from .grids import PRESETS, Axis, GridSpec, grid_from_dict
from .runner import default_workers, run_items, write_csv

__all__ = [
    "Axis",
    "GridSpec",
    "PRESETS",
    "default_workers",
    "grid_from_dict",
    "run_audits",
    "run_items",
    "run_nmc_ratios",
    "run_sbm3_separation",
    "run_sbm_linearization",
    "run_sbm_misclassification",
    "run_sbm_phase",
    "run_tail_audit",
    "run_z2_phase",
    "sbm_theory_exponent",
    "write_csv",
    "z2_boundary",
]
