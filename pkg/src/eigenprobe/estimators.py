"""One-shot spectral estimators.

Each estimator computes a single eigenvector window of the observed matrix
and reads the answer straight off it: the sign pattern of the leading
eigenvector for sign synchronization, the sign pattern of the second
eigenvector for the planted bisection, the (second, third) eigenvector
rows as a plane embedding for the three-block model, and a truncated SVD
for completion.  No trimming, refinement or cleanup steps; the point is
that the vanilla one-step estimator already works.

The classes follow the scikit-learn estimator protocol (``fit``,
``fit_predict``, ``get_params``) so they compose with the usual tooling.
Passing ground-truth labels to ``fit`` additionally populates the
margin/separation diagnostics.
"""

from __future__ import annotations

import math

import numpy as np
from sklearn.base import BaseEstimator, ClusterMixin

from .ensembles import PopulationModel, three_block_basis
from .linalg.sign import matrix_sign
from .linalg.subspace import DEFAULT_TOL, top_eigenpairs
from .linalg.svd import truncated_svd
from .validation import check_binary, check_labels, check_rect, check_symmetric, is_sparse

AMBIGUOUS_GAP_FACTOR = 1e-8


def sign_labels(u: np.ndarray) -> np.ndarray:
    """Entrywise sign with the convention sgn(0) = +1."""
    return np.where(u >= 0, 1, -1).astype(int)


def label_margin(u: np.ndarray, truth: np.ndarray) -> float:
    """max over global sign s of  sqrt(n) * min_i  s * truth_i * u_i.

    Positive iff the sign pattern of u recovers ``truth`` exactly."""
    n = u.size
    prod = math.sqrt(n) * truth * u
    return float(max(prod.min(), (-prod).min()))


def linearize(a, pop: PopulationModel) -> np.ndarray:
    """First-order prediction of the eigenvector window: A U* (Lambda*)^-1.

    Linear in the observed matrix; one matvec per window column."""
    if np.any(pop.values == 0):
        raise ValueError("population window contains a zero eigenvalue")
    return (a @ pop.basis) / pop.values


class SpectralSync(ClusterMixin, BaseEstimator):
    """Sign synchronization: labels are the signs of the leading eigenvector.

    Attributes after ``fit``: ``labels_``, ``eigenvector_``, ``eigenvalue_``,
    ``source_eigen_index_`` and, when truth was supplied, ``margin_``.
    """

    def __init__(self, tol: float = DEFAULT_TOL, max_iter: int | None = None):
        self.tol = tol
        self.max_iter = max_iter

    def fit(self, X, y=None):
        X = check_symmetric(X)
        sub = top_eigenpairs(X, k=1, window_start=0, tol=self.tol, max_iter=self.max_iter)
        u = sub.basis[:, 0]
        self.subspace_ = sub
        self.eigenvector_ = u
        self.eigenvalue_ = float(sub.values[0])
        self.source_eigen_index_ = 0
        self.labels_ = sign_labels(u)
        if y is not None:
            y = check_labels(y, u.size)
            self.margin_ = label_margin(u, y)
        return self

    def fit_predict(self, X, y=None):
        return self.fit(X, y).labels_


class SpectralBisection(ClusterMixin, BaseEstimator):
    """Two-block partition from the second eigenvector of the adjacency
    matrix (or, with ``centered=True``, the top eigenvector of
    A - (dhat/n) 11^T, which behaves the same).

    ``ambiguous_`` flags a second eigenvalue nearly tied with the third,
    where "the" second eigenvector is not well defined.
    """

    def __init__(
        self,
        tol: float = DEFAULT_TOL,
        max_iter: int | None = None,
        centered: bool = False,
        validate_binary: bool = True,
    ):
        self.tol = tol
        self.max_iter = max_iter
        self.centered = centered
        self.validate_binary = validate_binary

    def fit(self, X, y=None):
        X = check_symmetric(X)
        if self.validate_binary:
            check_binary(X)
        n = X.shape[0]
        if self.centered:
            dhat = float(X.sum()) / n
            if is_sparse(X):
                shift = dhat / n

                def matvec(v):
                    return X @ v - shift * v.sum() * np.ones(n)

                sub = top_eigenpairs((matvec, n), k=min(2, n), window_start=0,
                                     tol=self.tol, max_iter=self.max_iter)
            else:
                sub = top_eigenpairs(X - (dhat / n) * np.ones((n, n)), k=min(2, n),
                                     window_start=0, tol=self.tol, max_iter=self.max_iter)
            u = sub.basis[:, 0]
            gap_pair = (sub.values[0], sub.values[1]) if n > 1 else (sub.values[0], -math.inf)
            scale = abs(sub.values[0])
            self.source_eigen_index_ = 0
        else:
            k = min(3, n)
            sub = top_eigenpairs(X, k=k, window_start=0, tol=self.tol, max_iter=self.max_iter)
            if n < 2:
                raise ValueError("need n >= 2 for a bisection")
            u = sub.basis[:, 1]
            gap_pair = (sub.values[1], sub.values[2]) if k >= 3 else (sub.values[1], -math.inf)
            scale = abs(sub.values[0])
            self.source_eigen_index_ = 1
        self.subspace_ = sub
        self.eigenvector_ = u
        self.eigenvalues_ = sub.values.copy()
        self.ambiguous_ = bool(gap_pair[0] - gap_pair[1] < AMBIGUOUS_GAP_FACTOR * scale)
        self.labels_ = sign_labels(u)
        if y is not None:
            y = check_labels(y, n)
            self.margin_ = label_margin(u, y)
        return self

    def fit_predict(self, X, y=None):
        return self.fit(X, y).labels_


class ThreeBlockEmbedding(BaseEstimator):
    """Plane embedding of a three-block graph: rows of the (second, third)
    eigenvector matrix of the adjacency.

    With ground-truth labels, ``fit`` also aligns the population block
    centers onto the embedding frame through the matrix sign function of
    the basis overlap and computes the per-node separation margin

        min_{j != z_i} ||U_i - v_j Q||_2  -  ||U_i - v_{z_i} Q||_2 ,

    positive exactly when node i sits closest to its own center.  No
    clustering step is attempted: recovering the centers without the truth
    is deliberately out of scope.
    """

    def __init__(self, tol: float = DEFAULT_TOL, max_iter: int | None = None,
                 validate_binary: bool = True):
        self.tol = tol
        self.max_iter = max_iter
        self.validate_binary = validate_binary

    def fit(self, X, y=None):
        X = check_symmetric(X)
        if self.validate_binary:
            check_binary(X)
        n = X.shape[0]
        if n < 3:
            raise ValueError("need n >= 3")
        sub = top_eigenpairs(X, k=3, window_start=0, tol=self.tol, max_iter=self.max_iter)
        self.subspace_ = sub
        self.eigenvalues_ = sub.values.copy()
        self.embedding_ = np.ascontiguousarray(sub.basis[:, 1:3])
        if y is not None:
            y = check_labels(y, n, values=(1, 2, 3))
            self.separation_, self.alignment_ = self._separation(y)
        return self

    def fit_transform(self, X, y=None):
        return self.fit(X, y).embedding_

    def centers(self, n: int) -> np.ndarray:
        """Population block centers (rows of U* restricted to each block)."""
        return np.array(
            [
                [math.sqrt(2.0 / n), 0.0],
                [-1.0 / math.sqrt(2 * n), math.sqrt(3.0 / (2 * n))],
                [-1.0 / math.sqrt(2 * n), -math.sqrt(3.0 / (2 * n))],
            ]
        )

    def _separation(self, z: np.ndarray):
        n = z.size
        u_star = three_block_basis(z)
        q = matrix_sign(self.embedding_.T @ u_star).T
        centers = self.centers(n) @ q
        dists = np.linalg.norm(self.embedding_[:, None, :] - centers[None, :, :], axis=2)
        own = dists[np.arange(n), z - 1]
        masked = dists.copy()
        masked[np.arange(n), z - 1] = np.inf
        other = masked.min(axis=1)
        return other - own, q


class SpectralCompletion(BaseEstimator):
    """Rank-r completion: the truncated SVD of the rescaled observation
    matrix, returned as factors plus the rank-r reconstruction."""

    def __init__(self, rank: int, tol: float = DEFAULT_TOL, max_iter: int | None = None):
        self.rank = rank
        self.tol = tol
        self.max_iter = max_iter

    def fit(self, X, y=None):
        X = check_rect(X)
        svd = truncated_svd(X, self.rank, tol=self.tol, max_iter=self.max_iter)
        self.svd_ = svd
        self.u_ = svd.u
        self.v_ = svd.v
        self.singular_values_ = svd.values.copy()
        self.rank_deficient_ = svd.rank_deficient
        return self

    def reconstruct(self) -> np.ndarray:
        return self.svd_.reconstruct()
