"""Entrywise Bernoulli samplers, leveraged sampling plans, and noisy reads.

Each entry (i, j) is observed independently; per-entry randomness is a
counter-based hash of ``(seed, i*n + j)``, so a sampler is a pure
function of its arguments and identical across iteration orders and
thread counts.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from ._mix import unit_uniforms
from .leverage import EstimatedScores


class CannotCalibrateError(ValueError):
    """Raised when a budgeted plan has no positive mass to scale."""


@dataclass(frozen=True)
class IndexSet:
    """Sorted, duplicate-free set of observed (i, j) pairs in [0, n)^2."""

    pairs: np.ndarray
    n: int

    def __post_init__(self) -> None:
        pairs = np.asarray(self.pairs, dtype=np.int64).reshape(-1, 2)
        if pairs.size:
            if pairs.min() < 0 or pairs.max() >= self.n:
                raise ValueError("indices out of range")
            keys = pairs[:, 0] * self.n + pairs[:, 1]
            if np.any(np.diff(keys) <= 0):
                raise ValueError("pairs must be strictly sorted and unique")
        object.__setattr__(self, "pairs", pairs)

    def __len__(self) -> int:
        return self.pairs.shape[0]

    @property
    def rows(self) -> np.ndarray:
        return self.pairs[:, 0]

    @property
    def cols(self) -> np.ndarray:
        return self.pairs[:, 1]

    def mask(self) -> np.ndarray:
        """Dense boolean occupancy mask."""
        m = np.zeros((self.n, self.n), dtype=bool)
        m[self.rows, self.cols] = True
        return m

    def union(self, other: "IndexSet") -> "IndexSet":
        if self.n != other.n:
            raise ValueError("dimension mismatch")
        return IndexSet.from_mask(self.mask() | other.mask(), self.n)

    @classmethod
    def from_mask(cls, mask: np.ndarray, n: int) -> "IndexSet":
        return cls(pairs=np.argwhere(mask), n=n)


@dataclass(frozen=True)
class SampleSet:
    """Observed entry values (possibly noisy) aligned with an IndexSet."""

    indices: IndexSet
    values: np.ndarray
    noise_sigma: float = 0.0

    def __post_init__(self) -> None:
        values = np.asarray(self.values, dtype=float)
        if values.shape != (len(self.indices),):
            raise ValueError("values must align with indices")
        if not np.all(np.isfinite(values)):
            raise ValueError("values must be finite")
        object.__setattr__(self, "values", values)

    def __len__(self) -> int:
        return len(self.indices)

    def dense(self) -> np.ndarray:
        """Zero-filled dense view of the observations."""
        Y = np.zeros((self.indices.n, self.indices.n))
        Y[self.indices.rows, self.indices.cols] = self.values
        return Y


@dataclass(frozen=True)
class SamplingPlan:
    """Entrywise Bernoulli probabilities with calibration metadata.

    ``beta`` is the calibration scale for budgeted plans (None for
    theoretical plans); ``shortfall`` records by how much a saturated
    plan misses its target sum.
    """

    probs: np.ndarray
    beta: float | None = None
    target_mean: float | None = None
    shortfall: float = 0.0

    def __post_init__(self) -> None:
        probs = np.asarray(self.probs, dtype=float)
        if probs.ndim != 2 or probs.shape[0] != probs.shape[1]:
            raise ValueError("expected a square probability matrix")
        if probs.min() < 0.0 or probs.max() > 1.0:
            raise ValueError("probabilities must lie in [0, 1]")
        object.__setattr__(self, "probs", probs)


def _entry_uniforms(seed: int, n: int) -> np.ndarray:
    return unit_uniforms(seed, n * n).reshape(n, n)


def bernoulli_uniform(n: int, p: float, seed: int) -> IndexSet:
    """Observe each of the n^2 entries independently with probability p."""
    if not 0.0 <= p <= 1.0:
        raise ValueError(f"require p in [0, 1]; got {p}")
    return IndexSet.from_mask(_entry_uniforms(seed, n) < p, n)


def bernoulli_plan(plan: SamplingPlan, seed: int) -> IndexSet:
    """Observe entry (i, j) independently with probability plan.probs[i, j]."""
    n = plan.probs.shape[0]
    return IndexSet.from_mask(_entry_uniforms(seed, n) < plan.probs, n)


def build_phase2_plan_theoretical(
    est: EstimatedScores, r: int, n: int, c2: float = 1.0
) -> SamplingPlan:
    """Leveraged plan P[i,j] = min(1, 3 c2 r log^2(n) (mu_i + nu_j) / n)."""
    s = est.mu_hat[:, None] + est.nu_hat[None, :]
    probs = np.minimum(1.0, (3.0 * c2 * r * math.log(n) ** 2 / n) * s)
    return SamplingPlan(probs=probs, beta=None, target_mean=None)


def build_phase2_plan_budgeted(
    est: EstimatedScores, omega1: IndexSet, q: float, n: int
) -> SamplingPlan:
    """Leveraged plan scaled to spend half the budget q outside omega1.

    Sets P[i,j] = min(1, beta (mu_i + nu_j)) off omega1 and 0 on it,
    with beta the smallest value achieving sum(P) = q n^2 / 2. beta is
    found by bisection (the sum is piecewise-linear and nondecreasing
    in beta); if even all-ones off omega1 cannot reach the target, the
    plan saturates and records the shortfall.
    """
    if not 0.0 < q <= 1.0:
        raise ValueError(f"require q in (0, 1]; got {q}")
    s = est.mu_hat[:, None] + est.nu_hat[None, :]
    s = s.copy()
    if len(omega1):
        s[omega1.rows, omega1.cols] = 0.0
    positive = s > 0.0
    if not positive.any():
        raise CannotCalibrateError("no positive scores outside the phase-1 set")
    target = q * n * n / 2.0
    cap = float(positive.sum())
    if cap < target:
        return SamplingPlan(
            probs=positive.astype(float),
            beta=math.inf,
            target_mean=q / 2.0,
            shortfall=target - cap,
        )

    def plan_sum(beta: float) -> float:
        return float(np.minimum(1.0, beta * s).sum())

    hi = 1.0
    while plan_sum(hi) < target:
        hi *= 2.0
    lo, beta = 0.0, hi
    for _ in range(200):
        beta = 0.5 * (lo + hi)
        total = plan_sum(beta)
        if abs(total - target) <= 1e-6 * target:
            break
        if total < target:
            lo = beta
        else:
            hi = beta
    return SamplingPlan(
        probs=np.minimum(1.0, beta * s),
        beta=beta,
        target_mean=q / 2.0,
        shortfall=0.0,
    )


def sample_entries(
    M: np.ndarray, idx: IndexSet, sigma: float = 0.0, seed: int = 0
) -> SampleSet:
    """Read matrix entries at idx, adding N(0, sigma^2) noise when sigma > 0."""
    if sigma < 0:
        raise ValueError(f"require sigma >= 0; got {sigma}")
    M = np.asarray(M, dtype=float)
    values = M[idx.rows, idx.cols].copy()
    if sigma > 0.0:
        values += sigma * np.random.default_rng(seed).standard_normal(len(idx))
    return SampleSet(indices=idx, values=values, noise_sigma=float(sigma))


def merge_samples(a: SampleSet, b: SampleSet) -> SampleSet:
    """Overlay two sample sets on the union of their indices.

    Where both observed the same entry, ``a`` wins (only relevant for
    noisy duplicates; noiseless overlaps agree anyway).
    """
    union = a.indices.union(b.indices)
    Y = b.dense()
    Y[a.indices.rows, a.indices.cols] = a.values
    return SampleSet(
        indices=union,
        values=Y[union.rows, union.cols],
        noise_sigma=max(a.noise_sigma, b.noise_sigma),
    )


def write_plan_csv(plan: SamplingPlan, path: str | Path) -> None:
    """Write the dense probability matrix as CSV (n rows of n floats)."""
    np.savetxt(path, plan.probs, fmt="%.17g", delimiter=",")


def write_samples_csv(samples: SampleSet, path: str | Path) -> None:
    """Write one `i,j,value` row per observation (no header)."""
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        for (i, j), v in zip(samples.indices.pairs, samples.values):
            fh.write(f"{i},{j},{v:.17g}\n")


def read_samples_csv(path: str | Path, n: int) -> SampleSet:
    """Read a sample set written by :func:`write_samples_csv`."""
    raw = np.loadtxt(path, delimiter=",", ndmin=2)
    order = np.lexsort((raw[:, 1], raw[:, 0]))
    raw = raw[order]
    idx = IndexSet(pairs=raw[:, :2].astype(np.int64), n=n)
    return SampleSet(indices=idx, values=raw[:, 2], noise_sigma=0.0)
