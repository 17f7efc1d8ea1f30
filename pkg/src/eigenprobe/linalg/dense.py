"""Reference dense symmetric eigensolver.

Householder reduction to tridiagonal form followed by implicit-shift QL
iteration with accumulated rotations (the classical EISPACK tred2/tql2
pair, vectorized over rows with numpy).  It shares no code with either
production path (LAPACK for small dense inputs, Lanczos for everything
else), so the test suite uses it as the independent oracle both are
checked against.
"""

from __future__ import annotations

import math

import numpy as np

_EPS = np.finfo(float).eps


def tridiagonalize(a: np.ndarray):
    """Reduce symmetric ``a`` to tridiagonal T = Q^T a Q.

    Returns ``(d, e, q)`` with diagonal ``d`` (n,), subdiagonal ``e`` (n-1,)
    and orthogonal ``q`` (n, n) such that ``a == q @ T @ q.T``.
    """
    a = np.array(a, dtype=float)
    n = a.shape[0]
    q = np.eye(n)
    for k in range(n - 2):
        x = a[k + 1:, k]
        nx = np.linalg.norm(x)
        if nx == 0.0:
            continue
        alpha = -nx if x[0] >= 0 else nx
        v = x.copy()
        v[0] -= alpha
        vn = np.linalg.norm(v)
        if vn <= _EPS * nx:
            continue
        v /= vn
        b = a[k + 1:, k + 1:]
        w = b @ v
        u = w - (v @ w) * v
        b -= 2.0 * np.outer(v, u) + 2.0 * np.outer(u, v)
        a[k + 1, k] = alpha
        a[k + 2:, k] = 0.0
        a[k, k + 1] = alpha
        a[k, k + 2:] = 0.0
        q[:, k + 1:] -= 2.0 * np.outer(q[:, k + 1:] @ v, v)
    d = np.diag(a).copy()
    e = np.diag(a, -1).copy() if n > 1 else np.zeros(0)
    return d, e, q


def tql2(d, e, z, max_sweeps: int = 64):
    """Implicit-shift QL iteration on a tridiagonal matrix.

    ``z`` accumulates the rotations: pass the basis from
    :func:`tridiagonalize`, or the identity to diagonalize T itself.
    Returns ``(values, vectors)`` unsorted; ``vectors[:, i]`` pairs with
    ``values[i]``.
    """
    d = np.array(d, dtype=float)
    n = d.size
    if n == 0:
        return d, z
    e = np.append(np.asarray(e, dtype=float), 0.0)
    # deflation threshold floor: without it, off-diagonal roundoff next to a
    # zero diagonal block (rank-deficient input) never deflates
    anorm = float(np.max(np.abs(d)) + (np.max(np.abs(e)) if n > 1 else 0.0))
    floor = _EPS * anorm
    for l in range(n):
        sweeps = 0
        while True:
            m = l
            while m < n - 1:
                dd = abs(d[m]) + abs(d[m + 1])
                if abs(e[m]) <= max(_EPS * dd, floor):
                    break
                m += 1
            if m == l:
                break
            sweeps += 1
            if sweeps > max_sweeps:
                raise RuntimeError("tql2 failed to converge")
            g = (d[l + 1] - d[l]) / (2.0 * e[l])
            r = math.hypot(g, 1.0)
            g = d[m] - d[l] + e[l] / (g + math.copysign(r, g))
            s = c = 1.0
            p = 0.0
            underflow = False
            for i in range(m - 1, l - 1, -1):
                f = s * e[i]
                b = c * e[i]
                r = math.hypot(f, g)
                e[i + 1] = r
                if r == 0.0:
                    d[i + 1] -= p
                    e[m] = 0.0
                    underflow = True
                    break
                s = f / r
                c = g / r
                g = d[i + 1] - p
                r = (d[i] - g) * s + 2.0 * c * b
                p = s * r
                d[i + 1] = g + p
                g = c * r - b
                f_col = z[:, i + 1].copy()
                z[:, i + 1] = s * z[:, i] + c * f_col
                z[:, i] = c * z[:, i] - s * f_col
            if underflow:
                continue
            d[l] -= p
            e[l] = g
            e[m] = 0.0
    return d, z


def dense_eigh(a: np.ndarray):
    """All eigenpairs of a symmetric dense matrix, descending by value.

    Returns ``(values, vectors)`` with ``vectors[:, i]`` the unit eigenvector
    of ``values[i]``.
    """
    a = np.asarray(a, dtype=float)
    n = a.shape[0]
    if n == 0:
        return np.zeros(0), np.zeros((0, 0))
    if n == 1:
        return a[0, :1].copy(), np.ones((1, 1))
    d, e, q = tridiagonalize(a)
    values, vectors = tql2(d, e, q)
    order = np.argsort(-values, kind="stable")
    return values[order], vectors[:, order]
