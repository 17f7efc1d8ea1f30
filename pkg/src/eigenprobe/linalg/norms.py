"""Matrix norm toolbox: Frobenius, entrywise max, two-to-infinity (max row
l2 norm) exactly; spectral norm as a certified lower estimate from power
iteration on X^T X with relative tolerance 1e-6."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from ..validation import is_sparse
from .. import rng as _rng


@dataclass(frozen=True)
class NormBundle:
    spectral_estimate: float
    frobenius: float
    max_abs: float
    two_to_inf: float


def frobenius(x) -> float:
    if is_sparse(x):
        return float(np.sqrt((x.data**2).sum()))
    return float(np.linalg.norm(np.asarray(x, dtype=float)))


def max_abs(x) -> float:
    if is_sparse(x):
        return float(np.abs(x.data).max()) if x.nnz else 0.0
    x = np.asarray(x, dtype=float)
    return float(np.abs(x).max()) if x.size else 0.0


def two_to_inf(x) -> float:
    """max_{||v||_2 = 1} ||X v||_inf  ==  max row l2 norm."""
    if is_sparse(x):
        row_sq = np.asarray(x.multiply(x).sum(axis=1)).ravel()
        return float(np.sqrt(row_sq.max())) if row_sq.size else 0.0
    x = np.asarray(x, dtype=float)
    if x.size == 0:
        return 0.0
    return float(np.sqrt((x**2).sum(axis=1).max()))


def spectral_estimate(x, tol: float = 1e-6, max_iter: int = 5000) -> float:
    """Power iteration on X^T X; the returned ||X v||_2 for the final unit
    vector v is a guaranteed lower bound on the spectral norm."""
    shape = x.shape
    if shape[0] == 0 or shape[1] == 0:
        return 0.0
    v = _rng.standard_normal(_rng.stream("power-start", shape[0], shape[1]), shape[1])
    v /= np.linalg.norm(v)
    est = 0.0
    for _ in range(max_iter):
        w = x.T @ (x @ v)
        nw = np.linalg.norm(w)
        if nw == 0.0:
            return 0.0
        v = w / nw
        new = float(np.linalg.norm(x @ v))
        if new - est <= tol * max(new, 1e-300):
            return new
        est = new
    return est


def norms(x) -> NormBundle:
    return NormBundle(
        spectral_estimate=spectral_estimate(x),
        frobenius=frobenius(x),
        max_abs=max_abs(x),
        two_to_inf=two_to_inf(x),
    )
