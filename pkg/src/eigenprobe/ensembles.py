"""Generative models: spiked Wigner sign synchronization, two- and
three-block planted partitions, and noisy matrix completion.

Each model knows how to sample an instance (a deterministic function of
(model, seed) built on the Philox streams in :mod:`eigenprobe.rng`), how to
produce its closed-form population counterpart (expected matrix spectrum,
eigen-gap and condition number for the estimator-relevant window), and how
to audit the concentration assumptions the theory needs.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable, Optional

import numpy as np
import scipy.sparse as sp

from . import rng as _rng
from .linalg.subspace import SpectralSubspace, spectral_norm_sym
from .linalg.svd import truncated_svd

_CHUNK = 1 << 21


# ---------------------------------------------------------------------------
# chunked Bernoulli position samplers (memory stays O(chunk))

def _bernoulli_triangle(rng, m: int, p: float, include_diagonal: bool):
    """Success positions (i, j), i <= j (or i < j), of iid Bernoulli(p)
    draws over the upper triangle of an m x m block, row-major order."""
    if include_diagonal:
        row_len = np.arange(m, 0, -1, dtype=np.int64)
    else:
        row_len = np.arange(m - 1, -1, -1, dtype=np.int64)
    offsets = np.concatenate([[0], np.cumsum(row_len)])
    total = int(offsets[-1])
    out_i, out_j = [], []
    start = 0
    while start < total:
        size = min(_CHUNK, total - start)
        u = rng.random(size)
        hits = np.nonzero(u < p)[0]
        if hits.size:
            flat = hits + start
            i = np.searchsorted(offsets, flat, side="right") - 1
            j = flat - offsets[i] + i + (0 if include_diagonal else 1)
            out_i.append(i)
            out_j.append(j)
        start += size
    if not out_i:
        return np.zeros(0, dtype=np.int64), np.zeros(0, dtype=np.int64)
    return np.concatenate(out_i), np.concatenate(out_j)


def _bernoulli_rect(rng, n_rows: int, n_cols: int, p: float):
    """Success positions of iid Bernoulli(p) draws over a full n_rows x
    n_cols block, row-major order."""
    total = n_rows * n_cols
    out_i, out_j = [], []
    start = 0
    while start < total:
        size = min(_CHUNK, total - start)
        u = rng.random(size)
        hits = np.nonzero(u < p)[0]
        if hits.size:
            flat = hits + start
            out_i.append(flat // n_cols)
            out_j.append(flat % n_cols)
        start += size
    if not out_i:
        return np.zeros(0, dtype=np.int64), np.zeros(0, dtype=np.int64)
    return np.concatenate(out_i), np.concatenate(out_j)


def _symmetric_binary_csr(n: int, rows, cols) -> sp.csr_matrix:
    """CSR adjacency from upper-triangle positions, reflected to be exactly
    symmetric."""
    off = rows != cols
    r = np.concatenate([rows, cols[off]])
    c = np.concatenate([cols, rows[off]])
    a = sp.coo_matrix((np.ones(r.size), (r, c)), shape=(n, n))
    return a.tocsr()


# ---------------------------------------------------------------------------
# population description

def eigen_gap(spectrum: np.ndarray, window_start: int, r: int) -> float:
    """Gap separating the window from both the rest of the spectrum and 0:
    (lam_s - lam_{s+1}) ^ (lam_{s+r} - lam_{s+r+1}) ^ min |lam window|,
    with lam_0 = +inf and lam_{n+1} = -inf."""
    s = window_start
    lam_before = math.inf if s == 0 else float(spectrum[s - 1])
    lam_after = -math.inf if s + r >= spectrum.size else float(spectrum[s + r])
    window = spectrum[s:s + r]
    return float(min(lam_before - window[0], window[-1] - lam_after, np.min(np.abs(window))))


@dataclass(frozen=True)
class PopulationModel:
    """Closed-form spectral data of E[A] for the estimator-relevant window."""

    subspace: SpectralSubspace         # (U*, Lambda*) for the window
    spectrum: np.ndarray               # full population spectrum, descending
    gap: float                         # eigen-gap of the window
    kappa: float                       # max |window| / gap
    _materialize: Optional[Callable[[], np.ndarray]] = field(default=None, repr=False)

    @property
    def values(self) -> np.ndarray:
        return self.subspace.values

    @property
    def basis(self) -> np.ndarray:
        return self.subspace.basis

    @property
    def window_start(self) -> int:
        return self.subspace.window_start

    def matrix(self) -> np.ndarray:
        """Dense E[A] (meant for small n; everything scalable works off the
        factors instead)."""
        if self._materialize is None:
            raise ValueError("this population model has no dense materializer")
        return self._materialize()


def _population(values, basis, window_start, spectrum, materialize):
    spectrum = np.asarray(spectrum, dtype=float)
    gap = eigen_gap(spectrum, window_start, len(values))
    window_max = float(np.max(np.abs(values)))
    kappa = window_max / gap if gap > 0 else math.inf
    sub = SpectralSubspace(
        values=np.asarray(values, dtype=float),
        basis=np.asarray(basis, dtype=float),
        window_start=window_start,
    )
    return PopulationModel(
        subspace=sub, spectrum=spectrum, gap=gap, kappa=kappa, _materialize=materialize
    )


# ---------------------------------------------------------------------------
# assumption audit

@dataclass(frozen=True)
class AssumptionAudit:
    """Concentration-assumption check for one model.

    ``phi_kind`` is 'linear-gaussian' (phi(x) = scale * x) or
    'log-bernoulli' (phi(x) = scale / (1 v log(1/x))).  ``c1`` is the
    empirical spectral-concentration constant used to build gamma when the
    theory leaves it unspecified; failed checks are data, not errors.
    """

    variant: str
    gamma: float
    phi_kind: str
    phi_scale: float
    incoherence_lhs: float   # ||E[A]||_{2->inf}
    incoherence_rhs: float   # gamma * gap
    incoherence_ok: bool
    scaling_lhs: float       # 32 kappa max(gamma, phi(gamma))
    scaling_ok: bool
    c1: Optional[float] = None

    def phi(self, x):
        x = np.asarray(x, dtype=float)
        if self.phi_kind == "linear-gaussian":
            out = self.phi_scale * x
        elif self.phi_kind == "log-bernoulli":
            with np.errstate(divide="ignore"):
                denom = np.maximum(1.0, np.log(np.divide(1.0, x, where=x > 0)))
            out = np.where(x > 0, self.phi_scale / denom, 0.0)
        else:
            raise ValueError(f"unknown phi kind {self.phi_kind!r}")
        return out if out.ndim else float(out)


def _phi_value(kind: str, scale: float, x: float) -> float:
    if x <= 0:
        return 0.0
    if kind == "linear-gaussian":
        return scale * x
    if kind == "log-bernoulli":
        return scale / max(1.0, math.log(1.0 / x))
    raise ValueError(f"unknown phi kind {kind!r}")


def _finish_audit(variant, gamma, phi_kind, phi_scale, two_inf, gap, kappa, c1=None):
    lhs = 32.0 * kappa * max(gamma, _phi_value(phi_kind, phi_scale, gamma))
    return AssumptionAudit(
        variant=variant,
        gamma=gamma,
        phi_kind=phi_kind,
        phi_scale=phi_scale,
        incoherence_lhs=two_inf,
        incoherence_rhs=gamma * gap,
        incoherence_ok=bool(two_inf <= gamma * gap),
        scaling_lhs=lhs,
        scaling_ok=bool(lhs <= 1.0),
        c1=c1,
    )


# ---------------------------------------------------------------------------
# models

@dataclass(frozen=True)
class Z2SyncModel:
    """Rank-one signal plus Gaussian Wigner noise: Y = x x^T + sigma W,
    x in {+-1}^n, W symmetric with N(0,1) strict upper entries and zero
    diagonal."""

    n: int
    sigma: float
    signal: np.ndarray

    def __post_init__(self):
        if self.n < 1:
            raise ValueError("n must be positive")
        if self.sigma < 0:
            raise ValueError("sigma must be nonnegative")
        x = np.asarray(self.signal)
        if x.shape != (self.n,) or not np.all(np.isin(x, (-1, 1))):
            raise ValueError("signal must be a +-1 vector of length n")
        object.__setattr__(self, "signal", x.astype(float))

    @classmethod
    def with_random_signal(cls, n: int, sigma: float, seed: int) -> "Z2SyncModel":
        u = _rng.stream("z2-signal", n, seed).random(n)
        return cls(n=n, sigma=sigma, signal=np.where(u < 0.5, -1.0, 1.0))

    def _fingerprint(self):
        return ("z2", self.n, float(self.sigma), self.signal)

    def sample(self, seed: int):
        """One draw: (dense symmetric Y, true labels)."""
        rng = _rng.stream("sample", self._fingerprint(), seed)
        n = self.n
        y = np.outer(self.signal, self.signal)
        if self.sigma > 0 and n > 1:
            iu = np.triu_indices(n, 1)
            w = np.zeros((n, n))
            w[iu] = _rng.standard_normal(rng, iu[0].size)
            y += self.sigma * (w + w.T)
        return y, self.signal.astype(int)

    def population(self) -> PopulationModel:
        n = self.n
        spectrum = np.zeros(n)
        spectrum[0] = n
        x = self.signal
        return _population(
            values=[float(n)],
            basis=(x / math.sqrt(n)).reshape(-1, 1),
            window_start=0,
            spectrum=spectrum,
            materialize=lambda: np.outer(x, x),
        )

    def audit(self) -> AssumptionAudit:
        n = self.n
        gamma = max(3.0 / math.sqrt(math.log(n)), 1.0 / math.sqrt(n)) if n > 1 else 1.0
        pop = self.population()
        return _finish_audit(
            variant="z2",
            gamma=gamma,
            phi_kind="linear-gaussian",
            phi_scale=1.0,
            two_inf=math.sqrt(n),
            gap=pop.gap,
            kappa=pop.kappa,
        )


def _log_n_prob(coef: float, n: int, name: str) -> float:
    p = coef * math.log(n) / n
    if not 0.0 <= p <= 1.0:
        raise ValueError(f"derived probability {name} = {coef} * log(n)/n = {p:.4g} is outside [0, 1]")
    return p


@dataclass(frozen=True)
class TwoBlockModel:
    """Planted bisection: equal blocks, within-block edge probability
    a log(n)/n, across-block b log(n)/n, self-loops included by default.

    ``membership`` is the +-1 block indicator.  a == b is allowed (the
    degenerate rank-one population); estimation-grade uses require a > b.
    """

    n: int
    a: float
    b: float
    membership: np.ndarray
    self_loops: bool = True

    def __post_init__(self):
        if self.n < 2 or self.n % 2:
            raise ValueError("n must be even and >= 2")
        if not self.a >= self.b > 0:
            raise ValueError("need a >= b > 0")
        _log_n_prob(self.a, self.n, "p")
        _log_n_prob(self.b, self.n, "q")
        m = np.asarray(self.membership)
        if m.shape != (self.n,) or not np.all(np.isin(m, (-1, 1))):
            raise ValueError("membership must be a +-1 vector of length n")
        if int(np.sum(m == 1)) != self.n // 2:
            raise ValueError("blocks must have exactly n/2 members each")
        object.__setattr__(self, "membership", m.astype(int))

    @classmethod
    def with_random_membership(cls, n: int, a: float, b: float, seed: int, self_loops: bool = True):
        perm = _rng.stream("sbm2-membership", n, seed).permutation(n)
        m = np.full(n, -1, dtype=int)
        m[perm[: n // 2]] = 1
        return cls(n=n, a=a, b=b, membership=m, self_loops=self_loops)

    @property
    def p(self) -> float:
        return self.a * math.log(self.n) / self.n

    @property
    def q(self) -> float:
        return self.b * math.log(self.n) / self.n

    def _fingerprint(self):
        return ("sbm2", self.n, float(self.a), float(self.b), self.membership, self.self_loops)

    def sample(self, seed: int):
        """One draw: (sparse CSR adjacency, +-1 labels)."""
        rng = _rng.stream("sample", self._fingerprint(), seed)
        idx_plus = np.nonzero(self.membership == 1)[0]
        idx_minus = np.nonzero(self.membership == -1)[0]
        rows, cols = [], []
        for idx in (idx_plus, idx_minus):
            li, lj = _bernoulli_triangle(rng, idx.size, self.p, self.self_loops)
            rows.append(idx[li])
            cols.append(idx[lj])
        ri, rj = _bernoulli_rect(rng, idx_plus.size, idx_minus.size, self.q)
        rows.append(idx_plus[ri])
        cols.append(idx_minus[rj])
        r = np.concatenate(rows)
        c = np.concatenate(cols)
        lo, hi = np.minimum(r, c), np.maximum(r, c)
        return _symmetric_binary_csr(self.n, lo, hi), self.membership.copy()

    def population(self) -> PopulationModel:
        n, p, q = self.n, self.p, self.q
        lam1 = (p + q) * n / 2.0
        lam2 = (p - q) * n / 2.0
        m = self.membership.astype(float)
        spectrum = np.zeros(n)
        spectrum[0], spectrum[1] = lam1, lam2
        u2 = m / math.sqrt(n)

        def materialize():
            base = np.full((n, n), (p + q) / 2.0)
            return base + np.outer(m, m) * (p - q) / 2.0

        return _population(
            values=[lam2],
            basis=u2.reshape(-1, 1),
            window_start=1,
            spectrum=spectrum,
            materialize=materialize,
        )

    def population_matvec(self):
        n, p, q = self.n, self.p, self.q
        m = self.membership.astype(float)

        def matvec(v):
            return (p + q) / 2.0 * v.sum() * np.ones(n) + (p - q) / 2.0 * (m @ v) * m

        return matvec

    def two_to_inf_population(self) -> float:
        logn = math.log(self.n)
        return logn / math.sqrt(self.n) * math.sqrt((self.a**2 + self.b**2) / 2.0)

    def estimate_c1(self, draws: int = 5) -> float:
        """Empirical spectral-concentration constant: max over pilot draws
        of ||A - E A||_2 / sqrt(log n).  The theory asserts such a constant
        exists but does not give it numerically."""
        pop_mv = self.population_matvec()
        worst = 0.0
        for t in range(draws):
            a_s, _ = self.sample(_rng.seed_from("c1-pilot", self._fingerprint(), t))
            mv = lambda v: a_s @ v - pop_mv(v)
            worst = max(worst, spectral_norm_sym(mv, n=self.n, tol=1e-4))
        return worst / math.sqrt(math.log(self.n))

    def audit(self, c1: float | None = None) -> AssumptionAudit:
        if self.a == self.b:
            raise ValueError("assumption audit needs a > b (positive eigen-gap)")
        if c1 is None:
            c1 = self.estimate_c1()
        logn = math.log(self.n)
        denom = min(self.b, (self.a - self.b) / 2.0)
        gamma = c1 / (denom * math.sqrt(logn))
        pop = self.population()
        return _finish_audit(
            variant="sbm2",
            gamma=gamma,
            phi_kind="log-bernoulli",
            phi_scale=(2.0 * self.a + 4.0) / denom,
            two_inf=self.two_to_inf_population(),
            gap=pop.gap,
            kappa=pop.kappa,
            c1=c1,
        )


def three_block_basis(labels: np.ndarray) -> np.ndarray:
    """Orthonormal (u*_2, u*_3) block-pattern pair for {1,2,3} labels."""
    z = np.asarray(labels)
    n = z.size
    u2 = np.where(z == 1, 2.0, -1.0) / math.sqrt(2 * n)
    u3 = np.where(z == 2, 1.0, np.where(z == 3, -1.0, 0.0)) * math.sqrt(3.0 / (2 * n))
    return np.column_stack([u2, u3])


@dataclass(frozen=True)
class ThreeBlockModel:
    """Planted 3-way partition with equal blocks; probabilities as in
    :class:`TwoBlockModel`.  ``labels`` take values in {1, 2, 3}."""

    n: int
    a: float
    b: float
    labels: np.ndarray
    self_loops: bool = True

    def __post_init__(self):
        if self.n < 3 or self.n % 3:
            raise ValueError("n must be a positive multiple of 3")
        if not self.a > self.b > 0:
            raise ValueError("need a > b > 0")
        _log_n_prob(self.a, self.n, "p")
        _log_n_prob(self.b, self.n, "q")
        z = np.asarray(self.labels)
        if z.shape != (self.n,) or not np.all(np.isin(z, (1, 2, 3))):
            raise ValueError("labels must take values in {1,2,3}")
        if any(int(np.sum(z == k)) != self.n // 3 for k in (1, 2, 3)):
            raise ValueError("blocks must have exactly n/3 members each")
        object.__setattr__(self, "labels", z.astype(int))

    @classmethod
    def with_random_labels(cls, n: int, a: float, b: float, seed: int, self_loops: bool = True):
        perm = _rng.stream("sbm3-labels", n, seed).permutation(n)
        z = np.empty(n, dtype=int)
        third = n // 3
        z[perm[:third]] = 1
        z[perm[third: 2 * third]] = 2
        z[perm[2 * third:]] = 3
        return cls(n=n, a=a, b=b, labels=z, self_loops=self_loops)

    @property
    def p(self) -> float:
        return self.a * math.log(self.n) / self.n

    @property
    def q(self) -> float:
        return self.b * math.log(self.n) / self.n

    def _fingerprint(self):
        return ("sbm3", self.n, float(self.a), float(self.b), self.labels, self.self_loops)

    def sample(self, seed: int):
        rng = _rng.stream("sample", self._fingerprint(), seed)
        blocks = [np.nonzero(self.labels == k)[0] for k in (1, 2, 3)]
        rows, cols = [], []
        for idx in blocks:
            li, lj = _bernoulli_triangle(rng, idx.size, self.p, self.self_loops)
            rows.append(idx[li])
            cols.append(idx[lj])
        for bi in range(3):
            for bj in range(bi + 1, 3):
                ri, rj = _bernoulli_rect(rng, blocks[bi].size, blocks[bj].size, self.q)
                rows.append(blocks[bi][ri])
                cols.append(blocks[bj][rj])
        r = np.concatenate(rows)
        c = np.concatenate(cols)
        lo, hi = np.minimum(r, c), np.maximum(r, c)
        return _symmetric_binary_csr(self.n, lo, hi), self.labels.copy()

    def block_basis(self) -> np.ndarray:
        """The canonical (u*_2, u*_3) block patterns for these labels."""
        return three_block_basis(self.labels)

    def population(self) -> PopulationModel:
        n, p, q = self.n, self.p, self.q
        logn = math.log(n)
        lam1 = (self.a + 2 * self.b) * logn / 3.0
        lam2 = (self.a - self.b) * logn / 3.0
        spectrum = np.zeros(n)
        spectrum[0], spectrum[1], spectrum[2] = lam1, lam2, lam2
        z = self.labels

        def materialize():
            same = z[:, None] == z[None, :]
            return np.where(same, p, q)

        return _population(
            values=[lam2, lam2],
            basis=self.block_basis(),
            window_start=1,
            spectrum=spectrum,
            materialize=materialize,
        )

    def population_matvec(self):
        n, p, q = self.n, self.p, self.q
        indicators = [(self.labels == k).astype(float) for k in (1, 2, 3)]

        def matvec(v):
            out = q * v.sum() * np.ones(n)
            for ind in indicators:
                out += (p - q) * (ind @ v) * ind
            return out

        return matvec

    def two_to_inf_population(self) -> float:
        n = self.n
        return math.sqrt(n / 3.0 * self.p**2 + 2.0 * n / 3.0 * self.q**2)

    def estimate_c1(self, draws: int = 5) -> float:
        pop_mv = self.population_matvec()
        worst = 0.0
        for t in range(draws):
            a_s, _ = self.sample(_rng.seed_from("c1-pilot", self._fingerprint(), t))
            mv = lambda v: a_s @ v - pop_mv(v)
            worst = max(worst, spectral_norm_sym(mv, n=self.n, tol=1e-4))
        return worst / math.sqrt(math.log(self.n))

    def audit(self, c1: float | None = None) -> AssumptionAudit:
        if c1 is None:
            c1 = self.estimate_c1()
        logn = math.log(self.n)
        denom = min(self.b, (self.a - self.b) / 3.0)
        gamma = c1 / (denom * math.sqrt(logn))
        pop = self.population()
        return _finish_audit(
            variant="sbm3",
            gamma=gamma,
            phi_kind="log-bernoulli",
            phi_scale=(2.0 * self.a + 4.0) / denom,
            two_inf=self.two_to_inf_population(),
            gap=pop.gap,
            kappa=pop.kappa,
            c1=c1,
        )


@dataclass(frozen=True)
class CompletionTruth:
    m_star: np.ndarray
    u: np.ndarray
    values: np.ndarray
    v: np.ndarray


@dataclass(frozen=True)
class NmcModel:
    """Noisy matrix completion: each entry of ``m_star`` observed
    independently with probability p, contaminated with N(0, sigma^2)
    noise; the sample is the rescaled sparse matrix M^obs / p."""

    m_star: np.ndarray
    p: float
    sigma: float
    rank: int

    def __post_init__(self):
        m = np.asarray(self.m_star, dtype=float)
        if m.ndim != 2 or not np.all(np.isfinite(m)):
            raise ValueError("m_star must be a finite 2-d array")
        if not 0.0 < self.p <= 1.0:
            raise ValueError("p must be in (0, 1]")
        if self.sigma < 0:
            raise ValueError("sigma must be nonnegative")
        if not 1 <= self.rank <= min(m.shape):
            raise ValueError("rank must be in [1, min(n1, n2)]")
        object.__setattr__(self, "m_star", m)

    @property
    def shape(self):
        return self.m_star.shape

    def _fingerprint(self):
        return ("nmc", self.m_star, float(self.p), float(self.sigma), self.rank)

    def sample(self, seed: int):
        """One draw: (sparse CSR M = M^obs / p, CompletionTruth)."""
        rng = _rng.stream("sample", self._fingerprint(), seed)
        n1, n2 = self.shape
        i, j = _bernoulli_rect(rng, n1, n2, self.p)
        noise = self.sigma * _rng.standard_normal(rng, i.size) if self.sigma > 0 else 0.0
        vals = (self.m_star[i, j] + noise) / self.p
        m = sp.coo_matrix((vals, (i, j)), shape=(n1, n2)).tocsr()
        return m, self.truth()

    def truth(self) -> CompletionTruth:
        pop = self.population()
        n1 = self.shape[0]
        u = pop.basis[:n1, :] * math.sqrt(2.0)
        v = pop.basis[n1:, :] * math.sqrt(2.0)
        return CompletionTruth(m_star=self.m_star, u=u, values=pop.values.copy(), v=v)

    def population(self) -> PopulationModel:
        """Dilation-space population: top-r eigenpairs of [[0, M*], [M*^T, 0]]."""
        n1, n2 = self.shape
        ts = truncated_svd(self.m_star, self.rank)
        basis = np.vstack([ts.u, ts.v]) / math.sqrt(2.0)
        spectrum = np.zeros(n1 + n2)
        spectrum[: self.rank] = ts.values
        spectrum[n1 + n2 - self.rank:] = -ts.values[::-1]

        def materialize():
            out = np.zeros((n1 + n2, n1 + n2))
            out[:n1, n1:] = self.m_star
            out[n1:, :n1] = self.m_star.T
            return out

        return _population(
            values=ts.values,
            basis=basis,
            window_start=0,
            spectrum=spectrum,
            materialize=materialize,
        )

    def audit(self):
        raise NotImplementedError(
            "no closed-form assumption audit is exposed for matrix completion: "
            "its row-concentration profile does not vanish at 0 and falls outside "
            "the supported phi families"
        )


def planted_lowrank(n: int, r: int, scale: float, seed: int) -> np.ndarray:
    """Rank-r signal M_L @ M_R^T with iid centered Gaussian factor entries
    of standard deviation ``scale``."""
    if not 1 <= r <= n:
        raise ValueError("need 1 <= r <= n")
    rng = _rng.stream("planted-lowrank", n, r, float(scale), seed)
    ml = scale * _rng.standard_normal(rng, (n, r))
    mr = scale * _rng.standard_normal(rng, (n, r))
    return ml @ mr.T


def paper_lowrank_scale(n: int) -> float:
    """Factor-entry standard deviation used by the reference experiments:
    entries are N(0, 20/sqrt(n)), i.e. sd = sqrt(20) * n^(-1/4)."""
    return math.sqrt(20.0) * n**-0.25


def write_instance(path_or_file, matrix, model) -> None:
    """Text export of one sampled instance: a header line with the shape and
    variant, then one `i j value` entry per line (upper triangle for
    symmetric instances, observed entries for completion instances)."""
    close = False
    if isinstance(path_or_file, (str, bytes)):
        f = open(path_or_file, "w")
        close = True
    else:
        f = path_or_file
    try:
        variant = model._fingerprint()[0]
        if sp.issparse(matrix):
            coo = sp.triu(matrix).tocoo() if matrix.shape[0] == matrix.shape[1] else matrix.tocoo()
            f.write(f"# {variant} {matrix.shape[0]} {matrix.shape[1]}\n")
            order = np.lexsort((coo.col, coo.row))
            for i, j, v in zip(coo.row[order], coo.col[order], coo.data[order]):
                f.write(f"{i} {j} {float(v)!r}\n")
        else:
            m = np.asarray(matrix)
            f.write(f"# {variant} {m.shape[0]} {m.shape[1]}\n")
            for i in range(m.shape[0]):
                for j in range(i, m.shape[1]):
                    f.write(f"{i} {j} {float(m[i, j])!r}\n")
    finally:
        if close:
            f.close()
