"""Lanczos iteration with full reorthogonalization and locked deflation.

Eigenpairs are extracted one at a time: each run performs Lanczos on the
operator restricted to the orthogonal complement of the already-locked
eigenvectors, so multiple eigenvalues are recovered copy by copy (a single
Krylov chain can only ever see one copy).  Full reorthogonalization (two
classical Gram-Schmidt passes per step against the locked set and the
current chain) keeps the basis orthonormal to machine precision; on
breakdown the chain restarts with a fresh deterministic vector and a zero
coupling coefficient, keeping T block tridiagonal.  Start vectors come
from a fixed internal stream, independent of any trial seed, so the output
is a pure function of the operator.
"""

from __future__ import annotations

import numpy as np
from scipy.linalg import eigh_tridiagonal

from .. import rng as _rng
from ..validation import EigensolverError


def _start_vector(n: int, sequence: int) -> np.ndarray:
    v = _rng.standard_normal(_rng.stream("lanczos-start", n, sequence), n)
    return v / np.linalg.norm(v)


def _orthogonalize(v, locked, chain, j):
    """Two CGS passes against the locked vectors and the first j chain vectors."""
    for _ in range(2):
        if locked is not None and locked.shape[1]:
            v = v - locked @ (locked.T @ v)
        if j:
            basis = chain[:, :j]
            v = v - basis @ (basis.T @ v)
    return v


def _next_eigenpair(matvec, n, locked, tol, budget, seq0, normest_hint):
    """One Lanczos run on the complement of ``locked``.

    Returns (value, vector, residual, iterations_used, new_seq) or raises
    EigensolverError.  The run converges the dominant (largest algebraic)
    eigenpair of the restricted operator.
    """
    n_locked = locked.shape[1]
    dim = n - n_locked
    m_cap = min(dim, budget)
    if m_cap < 1:
        raise EigensolverError("Lanczos iteration budget exhausted", residuals=None)
    chain = np.empty((n, min(m_cap, 64)))
    alphas: list[float] = []
    betas: list[float] = []
    seq = seq0
    v = _orthogonalize(_start_vector(n, seq), locked, chain, 0)
    seq += 1
    nv = np.linalg.norm(v)
    attempts = 0
    while nv <= 1e-8 and attempts < 8:
        v = _orthogonalize(_start_vector(n, seq), locked, chain, 0)
        seq += 1
        attempts += 1
        nv = np.linalg.norm(v)
    if nv <= 1e-8:
        raise EigensolverError("could not find a start direction in the complement", residuals=None)
    chain[:, 0] = v / nv
    beta_prev = 0.0
    check_at = 4
    j = 0
    while True:
        if j + 1 >= chain.shape[1] and chain.shape[1] < m_cap:
            grown = np.empty((n, min(m_cap, 2 * chain.shape[1])))
            grown[:, : chain.shape[1]] = chain
            chain = grown
        w = matvec(chain[:, j])
        alpha = float(chain[:, j] @ w)
        alphas.append(alpha)
        w = w - alpha * chain[:, j]
        if j > 0:
            w = w - beta_prev * chain[:, j - 1]
        w = _orthogonalize(w, locked, chain, j + 1)
        beta = float(np.linalg.norm(w))
        m = j + 1
        done = m >= m_cap
        scale = max(np.max(np.abs(alphas)), np.max(np.abs(betas), initial=0.0), normest_hint, 1e-300)
        broke_down = beta <= 1e-13 * scale

        if done or broke_down or m >= check_at:
            vals, vecs = eigh_tridiagonal(
                np.asarray(alphas), np.asarray(betas), select="i", select_range=(m - 1, m - 1)
            )
            theta = float(vals[0])
            y = vecs[:, 0]
            normest = max(abs(theta), abs(min(alphas)), normest_hint)
            est = abs(beta * y[-1])
            if est <= 0.25 * tol * max(normest, 1e-300) or done or broke_down:
                vector = chain[:, :m] @ y
                vector = _orthogonalize(vector, locked, chain, 0)
                nv = np.linalg.norm(vector)
                if nv > 0:
                    vector /= nv
                residual = float(np.linalg.norm(matvec(vector) - theta * vector))
                if residual <= 0.5 * tol * max(normest, 1e-300):
                    return theta, vector, residual, m, seq
                if done:
                    raise EigensolverError(
                        f"Lanczos did not reach residual {tol:g}*{normest:g} within the "
                        f"iteration budget (best residual {residual:g})",
                        residuals=np.array([residual]),
                    )
            if not done:
                check_at = m + max(4, m // 4)

        if done:
            raise EigensolverError("Lanczos iteration budget exhausted", residuals=None)

        if broke_down:
            v = _orthogonalize(_start_vector(n, seq), locked, chain, j + 1)
            seq += 1
            nv = np.linalg.norm(v)
            attempts = 0
            while nv <= 1e-8 and attempts < 8:
                v = _orthogonalize(_start_vector(n, seq), locked, chain, j + 1)
                seq += 1
                attempts += 1
                nv = np.linalg.norm(v)
            if nv <= 1e-8:
                raise EigensolverError(
                    "Lanczos restart could not find a new direction", residuals=None
                )
            chain[:, j + 1] = v / nv
            betas.append(0.0)
            beta_prev = 0.0
        else:
            chain[:, j + 1] = w / beta
            betas.append(beta)
            beta_prev = beta
        j += 1


def lanczos_top(matvec, n: int, k: int, tol: float = 1e-10, max_iter: int | None = None):
    """Top ``k`` algebraic eigenpairs of a symmetric operator.

    Returns ``(values, vectors, residuals)`` with values descending and
    ``residuals[i] = ||A v_i - values_i v_i||_2``.  ``max_iter`` caps the
    matvec count of each deflation run (default ``5 n``; a run also never
    exceeds the dimension of the complement it works in).
    """
    if not 1 <= k <= n:
        raise ValueError(f"k must be in [1, {n}], got {k}")
    budget = 5 * n if max_iter is None else max_iter
    locked = np.empty((n, 0))
    values: list[float] = []
    residuals: list[float] = []
    seq = 0
    normest_hint = 0.0
    for _ in range(k):
        theta, vector, residual, iters, seq = _next_eigenpair(
            matvec, n, locked, tol, budget, seq, normest_hint
        )
        locked = np.column_stack([locked, vector])
        values.append(theta)
        residuals.append(residual)
        normest_hint = max(normest_hint, abs(theta))
    order = np.argsort(-np.asarray(values), kind="stable")
    vals = np.asarray(values)[order]
    vecs = locked[:, order]
    res = np.asarray(residuals)[order]
    return vals, vecs, res
