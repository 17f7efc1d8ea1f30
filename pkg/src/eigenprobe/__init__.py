"""Vanilla spectral estimators for low-rank-plus-noise random matrices,
entrywise perturbation diagnostics, and a seeded Monte Carlo harness."""

from .diagnostics import (
    NmcReport,
    PerturbationReport,
    TailAudit,
    leave_one_out_probe,
    misclassification,
    nmc_report,
    perturbation_report,
    tail_audit_binom_diff,
    tail_audit_row_concentration,
)
from .ensembles import (
    AssumptionAudit,
    CompletionTruth,
    NmcModel,
    PopulationModel,
    ThreeBlockModel,
    TwoBlockModel,
    Z2SyncModel,
    eigen_gap,
    paper_lowrank_scale,
    planted_lowrank,
    three_block_basis,
    write_instance,
)
from .estimators import (
    SpectralBisection,
    SpectralCompletion,
    SpectralSync,
    ThreeBlockEmbedding,
    label_margin,
    linearize,
    sign_labels,
)
from .linalg import (
    Aligner,
    SpectralSubspace,
    TruncatedSVD,
    matrix_sign,
    norms,
    top_eigenpairs,
    truncated_svd,
)
from .validation import DegenerateAlignmentError, EigensolverError

__version__ = "0.1.0"

__all__ = [
    "Aligner",
    "AssumptionAudit",
    "CompletionTruth",
    "DegenerateAlignmentError",
    "EigensolverError",
    "NmcModel",
    "NmcReport",
    "PerturbationReport",
    "PopulationModel",
    "SpectralBisection",
    "SpectralCompletion",
    "SpectralSubspace",
    "SpectralSync",
    "TailAudit",
    "ThreeBlockEmbedding",
    "ThreeBlockModel",
    "TruncatedSVD",
    "TwoBlockModel",
    "Z2SyncModel",
    "eigen_gap",
    "label_margin",
    "leave_one_out_probe",
    "linearize",
    "matrix_sign",
    "misclassification",
    "nmc_report",
    "norms",
    "paper_lowrank_scale",
    "perturbation_report",
    "planted_lowrank",
    "sign_labels",
    "tail_audit_binom_diff",
    "tail_audit_row_concentration",
    "three_block_basis",
    "top_eigenpairs",
    "truncated_svd",
    "write_instance",
]
