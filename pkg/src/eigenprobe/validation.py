"""Input validation helpers shared by the estimators and the linear algebra
routines.  Matrices are plain numpy arrays or scipy sparse matrices; these
helpers canonicalize them and enforce the structural preconditions (symmetry,
finiteness, binary entries) instead of a bespoke matrix wrapper type.
"""

from __future__ import annotations

import numpy as np
import scipy.sparse as sp


class DegenerateAlignmentError(ValueError):
    """The empirical and population subspaces are numerically orthogonal.

    Raised when the overlap matrix H = U^T U* is singular, i.e. the input is
    outside the perturbation regime every downstream guarantee assumes."""


class EigensolverError(RuntimeError):
    """Iterative eigensolver failed to meet its residual contract.

    Carries the best residuals achieved so diagnostics stay possible."""

    def __init__(self, message: str, residuals=None):
        super().__init__(message)
        self.residuals = residuals


def is_sparse(a) -> bool:
    return sp.issparse(a)


def check_square(a, name: str = "A"):
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise ValueError(f"{name} must be square, got shape {a.shape}")
    return a


def check_symmetric(a, name: str = "A", tol: float | None = None):
    """Canonicalize a symmetric matrix (dense ndarray or CSR).

    Roundoff-level asymmetry (within ``tol``, default 1e-10 relative to the
    largest entry) is repaired by reflecting one triangle so the returned
    matrix is exactly symmetric; larger asymmetry raises.
    """
    if is_sparse(a):
        a = a.tocsr()
        check_square(a, name)
        if not np.all(np.isfinite(a.data)):
            raise ValueError(f"{name} has non-finite entries")
        scale = float(np.abs(a.data).max()) if a.nnz else 0.0
        limit = (1e-10 * max(scale, 1.0)) if tol is None else tol
        gap = abs(a - a.T)
        asym = gap.max() if gap.nnz else 0.0
        if asym > limit:
            raise ValueError(f"{name} is not symmetric (max asymmetry {asym:.3e})")
        if asym > 0.0:
            a = sp.triu(a) + sp.triu(a, 1).T.tocsr()
        return a
    a = np.asarray(a, dtype=float)
    check_square(a, name)
    if not np.all(np.isfinite(a)):
        raise ValueError(f"{name} has non-finite entries")
    scale = float(np.abs(a).max()) if a.size else 0.0
    limit = (1e-10 * max(scale, 1.0)) if tol is None else tol
    asym = np.max(np.abs(a - a.T)) if a.size else 0.0
    if asym > limit:
        raise ValueError(f"{name} is not symmetric (max asymmetry {asym:.3e})")
    if asym > 0.0:
        a = np.tril(a) + np.tril(a, -1).T
    return a


def check_rect(m, name: str = "M"):
    """Canonicalize a rectangular matrix (dense ndarray or CSR)."""
    if is_sparse(m):
        m = m.tocsr()
        if m.ndim != 2:
            raise ValueError(f"{name} must be 2-dimensional")
        if not np.all(np.isfinite(m.data)):
            raise ValueError(f"{name} has non-finite entries")
        return m
    m = np.asarray(m, dtype=float)
    if m.ndim != 2:
        raise ValueError(f"{name} must be 2-dimensional")
    if not np.all(np.isfinite(m)):
        raise ValueError(f"{name} has non-finite entries")
    return m


def check_binary(a, name: str = "A"):
    values = a.data if is_sparse(a) else np.asarray(a)
    if values.size and not np.all((values == 0) | (values == 1)):
        raise ValueError(f"{name} must be a binary adjacency matrix")
    return a


def check_labels(y, n: int, values=(-1, 1), name: str = "labels"):
    y = np.asarray(y)
    if y.shape != (n,):
        raise ValueError(f"{name} must have shape ({n},), got {y.shape}")
    if not np.all(np.isin(y, values)):
        raise ValueError(f"{name} must take values in {values}")
    return y.astype(int)


def matvec_of(a):
    """Matrix-vector product closure for ndarray / sparse / callable inputs."""
    if callable(a):
        return a
    if is_sparse(a):
        return lambda v: a @ v
    arr = np.asarray(a, dtype=float)
    return lambda v: arr @ v
