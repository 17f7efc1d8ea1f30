"""Orthogonal alignment between subspace bases via the matrix sign function."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from ..validation import DegenerateAlignmentError

SINGULAR_FLOOR = 1e-12


def matrix_sign(h: np.ndarray) -> np.ndarray:
    """Orthonormal polar factor of ``h``: U V^T from the SVD h = U S V^T.

    This is the orthogonal matrix closest to ``h`` in Frobenius norm, i.e.
    the optimal rotation aligning the two bases whose overlap matrix ``h``
    is.  A singular ``h`` means the bases are (numerically) orthogonal and
    no meaningful alignment exists, which raises
    :class:`DegenerateAlignmentError`.
    """
    h = np.asarray(h, dtype=float)
    if h.ndim != 2 or h.shape[0] != h.shape[1]:
        raise ValueError(f"h must be square, got {h.shape}")
    if not np.all(np.isfinite(h)):
        raise ValueError("h has non-finite entries")
    u, s, vt = np.linalg.svd(h)
    if h.shape[0] and s[-1] < SINGULAR_FLOOR:
        raise DegenerateAlignmentError(
            f"overlap matrix is numerically singular (smallest singular value {s[-1]:.3e}); "
            "the subspaces are nearly orthogonal"
        )
    return u @ vt


@dataclass(frozen=True)
class Aligner:
    """Overlap ``h = U^T U*`` and its orthonormal polar factor ``sign``."""

    h: np.ndarray
    sign: np.ndarray

    @classmethod
    def between(cls, basis: np.ndarray, reference: np.ndarray) -> "Aligner":
        h = basis.T @ reference
        return cls(h=h, sign=matrix_sign(h))

    def apply(self, basis: np.ndarray) -> np.ndarray:
        """Rotate ``basis`` onto the reference frame: basis @ sign."""
        return basis @ self.sign
