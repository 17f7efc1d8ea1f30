"""Truncated SVD through the symmetric dilation.

The dilation ``D = [[0, M], [M^T, 0]]`` of an n1 x n2 matrix is symmetric
with spectrum {+sigma_i, -sigma_i, 0...}; the eigenvector for +sigma_i is
(u_i; w_i)/sqrt(2) with u_i, w_i the singular vectors of M.  Extracting the
top-r eigenpairs of D therefore yields the rank-r SVD of M using only the
symmetric machinery of this package.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from ..validation import check_rect, is_sparse
from .subspace import DENSE_CUTOFF, DEFAULT_TOL, SpectralSubspace, top_eigenpairs

RANK_TOL = 1e-10


@dataclass(frozen=True)
class TruncatedSVD:
    left: SpectralSubspace
    right: SpectralSubspace
    values: np.ndarray
    rank_deficient: bool

    @property
    def u(self) -> np.ndarray:
        return self.left.basis

    @property
    def v(self) -> np.ndarray:
        return self.right.basis

    def reconstruct(self) -> np.ndarray:
        return (self.u * self.values) @ self.v.T


def dilation_matvec(m):
    """Matvec of the symmetric dilation of ``m`` acting on stacked (v1; v2)."""
    n1, n2 = m.shape
    mt = m.T.tocsr() if is_sparse(m) else m.T

    def matvec(v):
        out = np.empty(n1 + n2)
        out[:n1] = m @ v[n1:]
        out[n1:] = mt @ v[:n1]
        return out

    return matvec


def dilation_dense(m) -> np.ndarray:
    m = m.toarray() if is_sparse(m) else np.asarray(m, dtype=float)
    n1, n2 = m.shape
    out = np.zeros((n1 + n2, n1 + n2))
    out[:n1, n1:] = m
    out[n1:, :n1] = m.T
    return out


def truncated_svd(
    m,
    r: int,
    tol: float = DEFAULT_TOL,
    max_iter: int | None = None,
    method: str = "auto",
    rank_tol: float = RANK_TOL,
) -> TruncatedSVD:
    """Top-r singular triplets of ``m`` via its symmetric dilation.

    A nearly rank-deficient result (sigma_r <= rank_tol * sigma_1) sets the
    ``rank_deficient`` flag instead of failing.
    """
    m = check_rect(m)
    n1, n2 = m.shape
    if not 1 <= r <= min(n1, n2):
        raise ValueError(f"r must be in [1, {min(n1, n2)}], got {r}")
    if method == "auto":
        method = "dense" if (not is_sparse(m) and n1 + n2 <= DENSE_CUTOFF) else "lanczos"
    if method == "dense":
        sub = top_eigenpairs(dilation_dense(m), k=r, tol=tol, max_iter=max_iter, method="dense")
    else:
        sub = top_eigenpairs(
            (dilation_matvec(m), n1 + n2), k=r, tol=tol, max_iter=max_iter, method="lanczos"
        )
    values = np.maximum(sub.values, 0.0)
    u = sub.basis[:n1, :] * np.sqrt(2.0)
    w = sub.basis[n1:, :] * np.sqrt(2.0)
    # column norms are 1 up to solver roundoff; renormalize exactly
    u_norm = np.linalg.norm(u, axis=0)
    w_norm = np.linalg.norm(w, axis=0)
    u_norm[u_norm == 0.0] = 1.0
    w_norm[w_norm == 0.0] = 1.0
    u = u / u_norm
    w = w / w_norm
    res_left = np.linalg.norm(m @ w - u * values, axis=0)
    res_right = np.linalg.norm(m.T @ u - w * values, axis=0)
    rank_deficient = bool(values[-1] <= rank_tol * max(values[0], 0.0) or values[-1] == 0.0)
    left = SpectralSubspace(values=values, basis=u, window_start=0, residuals=res_left)
    right = SpectralSubspace(values=values, basis=w, window_start=0, residuals=res_right)
    return TruncatedSVD(left=left, right=right, values=values, rank_deficient=rank_deficient)
