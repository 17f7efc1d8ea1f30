"""Eigenpair windows of symmetric matrices."""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from ..validation import check_symmetric, is_sparse, matvec_of
from .lanczos import lanczos_top

DENSE_CUTOFF = 512
DEFAULT_TOL = 1e-10


@dataclass(frozen=True)
class SpectralSubspace:
    """A window of eigenpairs: values descending, column-orthonormal basis.

    ``window_start`` is the number of (larger) eigenvalues skipped before
    the window; ``residuals[i] = ||A b_i - values_i b_i||_2``.
    """

    values: np.ndarray
    basis: np.ndarray
    window_start: int = 0
    residuals: np.ndarray = field(default=None)  # type: ignore[assignment]

    def __post_init__(self):
        values = np.asarray(self.values, dtype=float)
        basis = np.asarray(self.basis, dtype=float)
        if basis.ndim != 2 or basis.shape[1] != values.size:
            raise ValueError("basis must have one column per value")
        if values.size > 1 and np.any(np.diff(values) > 1e-10 * max(1.0, np.abs(values).max())):
            raise ValueError("values must be sorted descending")
        object.__setattr__(self, "values", values)
        object.__setattr__(self, "basis", basis)
        if self.residuals is None:
            object.__setattr__(self, "residuals", np.zeros(values.size))

    @property
    def r(self) -> int:
        return int(self.values.size)

    @property
    def has_ties(self) -> bool:
        if self.values.size < 2:
            return False
        scale = max(1.0, float(np.abs(self.values).max()))
        return bool(np.any(np.abs(np.diff(self.values)) <= 1e-12 * scale))

    def orthonormality_defect(self) -> float:
        g = self.basis.T @ self.basis
        return float(np.max(np.abs(g - np.eye(self.r)))) if self.r else 0.0


def top_eigenpairs(
    a,
    k: int,
    window_start: int = 0,
    tol: float = DEFAULT_TOL,
    max_iter: int | None = None,
    method: str = "auto",
) -> SpectralSubspace:
    """Eigenpairs ``window_start+1 .. window_start+k`` ranked by algebraic
    value, descending.

    ``a`` may be a dense array, a scipy sparse matrix, or a ``(matvec, n)``
    pair.  ``method`` is one of ``auto`` (dense LAPACK for small dense
    inputs, Lanczos otherwise), ``lanczos`` or ``dense``.
    """
    if isinstance(a, tuple):
        matvec, n = a
        dense_ok = False
    else:
        a = check_symmetric(a)
        n = a.shape[0]
        matvec = matvec_of(a)
        dense_ok = not is_sparse(a)
    if k < 1 or window_start < 0 or window_start + k > n:
        raise ValueError(
            f"need 1 <= window_start + k <= n, got window_start={window_start}, k={k}, n={n}"
        )
    if method == "auto":
        method = "dense" if (dense_ok and n <= DENSE_CUTOFF) else "lanczos"
    if method == "dense":
        if not dense_ok:
            raise ValueError("dense method requires a dense array input")
        values, vectors = np.linalg.eigh(a)
        values, vectors = values[::-1], vectors[:, ::-1]
        sel = slice(window_start, window_start + k)
        basis = np.ascontiguousarray(vectors[:, sel])
        vals = values[sel].copy()
        residuals = np.linalg.norm(a @ basis - basis * vals, axis=0)
    elif method == "lanczos":
        vals_all, vecs_all, res_all = lanczos_top(
            matvec, n, window_start + k, tol=tol, max_iter=max_iter
        )
        vals = vals_all[window_start:]
        basis = vecs_all[:, window_start:]
        residuals = res_all[window_start:]
    else:
        raise ValueError(f"unknown method {method!r}")
    return SpectralSubspace(values=vals, basis=basis, window_start=window_start, residuals=residuals)


def spectral_norm_sym(a, n: int | None = None, tol: float = 1e-6, max_iter: int = 2000) -> float:
    """Certified lower estimate of the spectral norm of a symmetric operator,
    via power iteration on A^2 (converges to max |eigenvalue|)."""
    matvec = matvec_of(a)
    if n is None:
        n = a.shape[0]
    if n == 0:
        return 0.0
    from .. import rng as _rng

    v = _rng.standard_normal(_rng.stream("specnorm-start", n), n)
    v /= np.linalg.norm(v)
    est = 0.0
    for _ in range(max_iter):
        w = matvec(matvec(v))
        nw = np.linalg.norm(w)
        if nw == 0.0:
            return 0.0
        v = w / nw
        new = np.linalg.norm(matvec(v))
        if new - est <= tol * max(new, 1e-300):
            return float(new)
        est = new
    return float(est)
