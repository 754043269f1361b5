"""Leverage scores, coherence, and sample-complexity calculators.

The row and column leverage scores of a rank-r matrix M = U S V* are

    mu_i = (n/r) * ||U[i, :]||^2,    nu_j = (n/r) * ||V[j, :]||^2,

each set summing to n. The coherence eta(M) is the largest score and
lies in [1, n/r]; incoherent ("diffuse") matrices have eta near 1 while
coherent ("spiky") matrices approach n/r. This module computes exact
scores from a dense matrix, estimates them from a zero-filled partial
observation, and evaluates the closed-form sufficient sampling
probabilities used to calibrate two-phase completion.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np


class EmptySampleError(ValueError):
    """Raised when score estimation is attempted on an all-zero sample."""


@dataclass(frozen=True)
class LeverageScores:
    """Exact row (mu) and column (nu) leverage scores of a rank-r matrix."""

    mu: np.ndarray
    nu: np.ndarray
    r: int
    n: int

    def __post_init__(self) -> None:
        mu = np.asarray(self.mu, dtype=float)
        nu = np.asarray(self.nu, dtype=float)
        if mu.shape != (self.n,) or nu.shape != (self.n,):
            raise ValueError("score vectors must have length n")
        hi = self.n / self.r + 1e-8
        for name, v in (("mu", mu), ("nu", nu)):
            if np.any(v < -1e-12) or np.any(v > hi):
                raise ValueError(f"{name} entries must lie in [0, n/r]")
            if abs(v.sum() - self.n) > 1e-8 * max(self.n, 1):
                raise ValueError(f"{name} must sum to n")
        object.__setattr__(self, "mu", mu)
        object.__setattr__(self, "nu", nu)


@dataclass(frozen=True)
class EstimatedScores:
    """Leverage-score estimates from a zero-filled partial observation.

    ``kappa_used`` records the condition number plugged into the
    estimator and ``p_used`` the uniform sampling probability of the
    observation, when known.
    """

    mu_hat: np.ndarray
    nu_hat: np.ndarray
    kappa_used: float
    p_used: float | None = None

    def __post_init__(self) -> None:
        mu = np.asarray(self.mu_hat, dtype=float)
        nu = np.asarray(self.nu_hat, dtype=float)
        if not (np.all(np.isfinite(mu)) and np.all(np.isfinite(nu))):
            raise ValueError("estimated scores must be finite")
        if np.any(mu < 0) or np.any(nu < 0):
            raise ValueError("estimated scores must be nonnegative")
        object.__setattr__(self, "mu_hat", mu)
        object.__setattr__(self, "nu_hat", nu)


@dataclass(frozen=True)
class BoundConfig:
    """Constants and cutoffs for the sufficient-probability formulas.

    The universal constants c1, c2, c3 are unspecified by the theory
    and default to 1; qualitative experiments do not depend on them.
    The nominal theory value for c3 is max(16, c1, c2).
    """

    c1: float = 1.0
    c2: float = 1.0
    c3: float = 1.0
    tau: float = 1.0 / 3.0
    L: int = 1
    d1: int = 1
    d2: int = 1
    T: float = 1.0

    def __post_init__(self) -> None:
        if not (0.0 < self.tau <= 1.0 / 3.0):
            raise ValueError("tau must lie in (0, 1/3]")
        if min(self.c1, self.c2, self.c3) <= 0:
            raise ValueError("constants must be positive")
        if min(self.L, self.d1, self.d2) < 0:
            raise ValueError("cutoffs must be nonnegative")


def exact_leverage_scores(M: np.ndarray, rank_tol: float = 1e-8) -> LeverageScores:
    """Compute exact leverage scores of a square matrix via its thin SVD.

    The rank is detected numerically: singular values above
    ``rank_tol * sigma_1`` count as nonzero.

    Raises:
        ValueError: if M is not square or is identically zero.
    """
    M = np.asarray(M, dtype=float)
    if M.ndim != 2 or M.shape[0] != M.shape[1]:
        raise ValueError("expected a square matrix")
    n = M.shape[0]
    U, s, Vt = np.linalg.svd(M, full_matrices=False)
    if s[0] <= 0.0:
        raise ValueError("zero matrix has no leverage scores")
    r = int(np.count_nonzero(s > rank_tol * s[0]))
    mu = (n / r) * np.sum(U[:, :r] ** 2, axis=1)
    nu = (n / r) * np.sum(Vt[:r, :] ** 2, axis=0)
    return LeverageScores(mu=mu, nu=nu, r=r, n=n)


def coherence(scores: LeverageScores) -> float:
    """Largest leverage score; lies in [1, n/r]."""
    return float(max(scores.mu.max(), scores.nu.max()))


def estimate_leverage_scores(
    Y: np.ndarray, kappa: float, p: float | None = None
) -> EstimatedScores:
    """Estimate leverage scores from a zero-filled sampled matrix.

    Uses the row/column energy fractions of the observation:

        mu_hat_i = n * kappa^2 * ||Y[i, :]||^2 / ||Y||_F^2

    and symmetrically for columns. With unknown kappa callers may pass
    ``kappa=1``; any global scale is irrelevant to budget-calibrated
    plans downstream.

    Raises:
        EmptySampleError: if Y is identically zero (resample or raise p).
    """
    Y = np.asarray(Y, dtype=float)
    if Y.ndim != 2 or Y.shape[0] != Y.shape[1]:
        raise ValueError("expected a square matrix")
    n = Y.shape[0]
    sq = Y**2
    total = sq.sum()
    if total <= 0.0:
        raise EmptySampleError("all-zero observation; resample or increase p")
    scale = n * kappa**2 / total
    return EstimatedScores(
        mu_hat=scale * sq.sum(axis=1),
        nu_hat=scale * sq.sum(axis=0),
        kappa_used=float(kappa),
        p_used=p,
    )


def sorted_descending(values: np.ndarray) -> np.ndarray:
    """Sort descending; ties keep ascending original index (stable)."""
    return -np.sort(-np.asarray(values, dtype=float), kind="stable")


def _tail(sorted_vals: np.ndarray, d: int) -> float:
    """(d+1)-th order statistic, or 0 when the cutoff covers all scores."""
    return float(sorted_vals[d]) if d < sorted_vals.size else 0.0


def lemma1_required_p(
    scores: LeverageScores, r: int, n: int, kappa: float, cfg: BoundConfig
) -> float:
    """Uniform sampling probability sufficient to estimate the top scores.

    Evaluates, with cutoffs (L, d1, d2) from ``cfg``,

        p = 16 L kappa^4 r n / (tau n^2)
            * ( (r/n) sum_{j<=d1} nu_(j)^2 + nu_(d1+1)
              + (r/n) sum_{i<=d2} mu_(i)^2 + mu_(d2+1) )

    clipped to 1. Scores are sorted internally; out-of-range order
    statistics count as 0. At this p the top-L estimates fall within
    [mu/3, 3 kappa^4 mu] with probability at least 1 - tau.
    """
    for name, d in (("L", cfg.L), ("d1", cfg.d1), ("d2", cfg.d2)):
        if not 1 <= d <= n:
            raise ValueError(f"cfg.{name} must lie in [1, n]")
    mu = sorted_descending(scores.mu)
    nu = sorted_descending(scores.nu)
    bracket = (
        (r / n) * np.sum(nu[: cfg.d1] ** 2)
        + _tail(nu, cfg.d1)
        + (r / n) * np.sum(mu[: cfg.d2] ** 2)
        + _tail(mu, cfg.d2)
    )
    p = 16.0 * cfg.L * kappa**4 * r * n * bracket / (cfg.tau * n**2)
    return min(1.0, float(p))


def theorem1_sufficient_p(
    scores: LeverageScores, r: int, n: int, kappa: float, cfg: BoundConfig
) -> tuple[float, int]:
    """Two-phase sufficient probability, minimized over the cutoff L.

    For each L in [0, n] evaluates

        c3 * (r/n) * max(L kappa^4 / tau, log^2 n)
           * ( (r/n) sum_{j<=L} nu_(j)^2 + nu_(L+1)
             + (r/n) sum_{i<=L} mu_(i)^2 + mu_(L+1) )

    with natural logs, and returns ``(min value, minimizing L)``. The
    L=0 term reproduces the classical uniform-sampling condition up to
    a constant, so the minimum never exceeds it. Not clipped: a value
    above 1 means the bound is vacuous for this matrix.
    """
    mu = sorted_descending(scores.mu)
    nu = sorted_descending(scores.nu)
    log2n = math.log(n) ** 2
    best_p = math.inf
    best_L = 0
    for L in range(n + 1):
        bracket = (
            (r / n) * np.sum(nu[:L] ** 2)
            + _tail(nu, L)
            + (r / n) * np.sum(mu[:L] ** 2)
            + _tail(mu, L)
        )
        p = cfg.c3 * (r / n) * max(L * kappa**4 / cfg.tau, log2n) * bracket
        if p < best_p:
            best_p = p
            best_L = L
    return float(best_p), best_L


def corollary_power_law_p(
    eta: float, T: float, r: int, n: int, kappa: float, cfg: BoundConfig
) -> float:
    """Sufficient probability for matrices with power-law score decay.

    Requires eta >= sqrt(n/r) and decay exponent T > 0; returns

        p = 8 c3 kappa^4 r^2 eta^((3+2T)/(1+T)) / (tau n^2)

    clipped to 1.
    """
    if T <= 0:
        raise ValueError(f"require T > 0; got T = {T}")
    floor = math.sqrt(n / r)
    if eta < floor:
        raise ValueError(f"require eta >= sqrt(n/r) = {floor:.6g}; got eta = {eta:.6g}")
    p = 8.0 * cfg.c3 * kappa**4 * (r**2 / n**2) * eta ** ((3 + 2 * T) / (1 + T)) / cfg.tau
    return min(1.0, float(p))


def corollary_few_large_p(
    mu1: float, nu1: float, L: int, r: int, n: int, kappa: float, cfg: BoundConfig
) -> float:
    """Log-free sufficient probability when only L scores are large.

    Requires max(mu1, nu1) <= n / (r log^2 n); returns

        p = c3 (r/n) max(L kappa^4 / (tau log^2 n), 1) (L+1) (nu1 + mu1)

    clipped to 1.
    """
    log2n = math.log(n) ** 2
    cap = n / (r * log2n)
    if max(mu1, nu1) > cap:
        raise ValueError(
            f"require max(mu1, nu1) <= n/(r log^2 n) = {cap:.6g}; "
            f"got max = {max(mu1, nu1):.6g}"
        )
    p = cfg.c3 * (r / n) * max(L * kappa**4 / (cfg.tau * log2n), 1.0) * (L + 1) * (nu1 + mu1)
    return min(1.0, float(p))


def check_n4_condition(scores: LeverageScores, r: int, n: int, c2: float = 1.0) -> bool:
    """Check the polynomial lower bound on all pairwise score sums.

    True iff 1/n^4 <= c2 (mu_i + nu_j) r log^2(n) / n for every (i, j);
    it suffices to test the minimal mu plus minimal nu.
    """
    lhs = 1.0 / n**4
    rhs = c2 * (float(scores.mu.min()) + float(scores.nu.min())) * r * math.log(n) ** 2 / n
    return lhs <= rhs
