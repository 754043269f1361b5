"""End-to-end completion pipelines: uniform baseline and two-phase variants.

Three methods share a trial interface:

* ``UMC`` observes every entry with probability q and completes.
* ``MC2Paper`` follows the prototype two-phase recipe: uniform phase 1
  at p, score estimates scaled by kappa^2, the theoretical leveraged
  plan, phase 2 at clip(P[i,j] + p, 1), union, complete.
* ``MC2Practical`` spends the budget q evenly: uniform phase 1 at q/2,
  estimates with kappa = 1 (any scale is absorbed by the calibration),
  a budgeted plan targeting q n^2 / 2 outside phase 1, disjoint union,
  complete (noise-ball variant when sigma > 0 with the oracle delta
  set to the realized noise energy).

A trial is a pure function of (matrix, parameters, seed): phase-level
substreams are derived from the trial seed, so runs are bit-reproducible.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from ._mix import mix64
from .genmat import TestMatrix
from .leverage import EmptySampleError, EstimatedScores, estimate_leverage_scores
from .sampling import (
    CannotCalibrateError,
    IndexSet,
    SampleSet,
    SamplingPlan,
    bernoulli_plan,
    bernoulli_uniform,
    build_phase2_plan_budgeted,
    build_phase2_plan_theoretical,
    merge_samples,
    sample_entries,
)
from .solver import SolverOptions, complete_exact, complete_noisy

METHOD_UMC = "UMC"
METHOD_MC2_PAPER = "MC2Paper"
METHOD_MC2_PRACTICAL = "MC2Practical"
METHODS = (METHOD_UMC, METHOD_MC2_PAPER, METHOD_MC2_PRACTICAL)

RECOVERY_THRESHOLD = 1e-4


@dataclass(frozen=True)
class TrialResult:
    """Outcome of one sampling-plus-completion trial."""

    method: str
    q_or_p: float
    realized_fraction: float
    rel_error: float
    success: bool
    seed: int
    converged: bool = False
    est_scores: EstimatedScores | None = None
    column_errors: np.ndarray | None = None


@dataclass(frozen=True)
class Mc2Sample:
    """Everything the two-phase sampling stage produced for one trial."""

    samples: SampleSet
    phase1: IndexSet
    est: EstimatedScores
    plan: SamplingPlan


def relative_column_errors(m_hat: np.ndarray, reference: np.ndarray) -> np.ndarray:
    """Per-column squared error relative to the true squared column norm.

    Columns of the reference with zero norm report error 0.
    """
    true_sq = np.sum(np.asarray(reference, dtype=float) ** 2, axis=0)
    diff_sq = np.sum((np.asarray(m_hat, dtype=float) - reference) ** 2, axis=0)
    safe = np.where(true_sq > 0.0, true_sq, 1.0)
    return np.where(true_sq > 0.0, diff_sq / safe, 0.0)


def _oracle_delta(samples: SampleSet, M: np.ndarray) -> float:
    noise = samples.values - M[samples.indices.rows, samples.indices.cols]
    return float(noise @ noise)


def _failed(method: str, q_or_p: float, seed: int, fraction: float = 0.0) -> TrialResult:
    return TrialResult(
        method=method,
        q_or_p=q_or_p,
        realized_fraction=fraction,
        rel_error=1.0,
        success=False,
        seed=seed,
    )


def _finish_trial(
    method: str,
    q_or_p: float,
    matrix: TestMatrix,
    samples: SampleSet,
    sigma: float,
    seed: int,
    opts: SolverOptions | None,
    est: EstimatedScores | None = None,
) -> TrialResult:
    M = matrix.values
    if sigma > 0.0:
        result = complete_noisy(samples, _oracle_delta(samples, M), matrix.n, opts)
    else:
        result = complete_exact(samples, matrix.n, opts)
    rel_error = float(np.linalg.norm(result.m_hat - M) / np.linalg.norm(M))
    return TrialResult(
        method=method,
        q_or_p=q_or_p,
        realized_fraction=len(samples) / matrix.n**2,
        rel_error=rel_error,
        success=rel_error < RECOVERY_THRESHOLD,
        seed=seed,
        converged=result.converged,
        est_scores=est,
        column_errors=relative_column_errors(result.m_hat, M),
    )


def run_umc(
    matrix: TestMatrix,
    q: float,
    sigma: float = 0.0,
    seed: int = 0,
    opts: SolverOptions | None = None,
) -> TrialResult:
    """Uniform sampling at p = q followed by nuclear-norm completion."""
    if not 0.0 < q <= 1.0:
        raise ValueError(f"require q in (0, 1]; got {q}")
    idx = bernoulli_uniform(matrix.n, q, mix64(seed, 1))
    if len(idx) == 0:
        return _failed(METHOD_UMC, q, seed)
    samples = sample_entries(matrix.values, idx, sigma, mix64(seed, 2))
    return _finish_trial(METHOD_UMC, q, matrix, samples, sigma, seed, opts)


def sample_mc2_paper(
    matrix: TestMatrix,
    p: float,
    r: int | None = None,
    kappa: float | None = None,
    seed: int = 0,
    c2: float = 1.0,
) -> Mc2Sample:
    """Sampling stage of the prototype pipeline (noiseless).

    The recorded plan is the phase-2 overlay clip(P + p, 1). Raises
    EmptySampleError if phase 1 came back empty.
    """
    if not 0.0 < p <= 1.0:
        raise ValueError(f"require p in (0, 1]; got {p}")
    n = matrix.n
    r = matrix.r if r is None else r
    kappa = matrix.kappa if kappa is None else kappa
    omega1 = bernoulli_uniform(n, p, mix64(seed, 1))
    if len(omega1) == 0:
        raise EmptySampleError("empty phase-1 sample")
    phase1 = sample_entries(matrix.values, omega1, 0.0, mix64(seed, 2))
    est = estimate_leverage_scores(phase1.dense(), kappa, p=p)
    plan = build_phase2_plan_theoretical(est, r, n, c2)
    overlay = SamplingPlan(probs=np.minimum(plan.probs + p, 1.0))
    omega2 = bernoulli_plan(overlay, mix64(seed, 3))
    phase2 = sample_entries(matrix.values, omega2, 0.0, mix64(seed, 4))
    return Mc2Sample(
        samples=merge_samples(phase1, phase2), phase1=omega1, est=est, plan=overlay
    )


def run_mc2_paper(
    matrix: TestMatrix,
    p: float,
    r: int | None = None,
    kappa: float | None = None,
    seed: int = 0,
    opts: SolverOptions | None = None,
    c2: float = 1.0,
) -> TrialResult:
    """Two-phase completion with the theoretical plan and extra uniform mass.

    ``r`` and ``kappa`` default to the generator's ground truth, which
    is what this pipeline assumes known.
    """
    try:
        stage = sample_mc2_paper(matrix, p, r, kappa, seed, c2)
    except EmptySampleError:
        return _failed(METHOD_MC2_PAPER, p, seed)
    return _finish_trial(
        METHOD_MC2_PAPER, p, matrix, stage.samples, 0.0, seed, opts, stage.est
    )


def sample_mc2_practical(
    matrix: TestMatrix,
    q: float,
    sigma: float = 0.0,
    seed: int = 0,
) -> Mc2Sample:
    """Sampling stage of the budget-calibrated pipeline.

    Phase 1 draws uniformly at q/2 (noisy values when sigma > 0 feed
    the estimator too); phase 2 is a budgeted plan zeroed on the
    phase-1 set, so the union is disjoint and averages q n^2 samples.
    """
    if not 0.0 < q <= 1.0:
        raise ValueError(f"require q in (0, 1]; got {q}")
    n = matrix.n
    p = q / 2.0
    omega1 = bernoulli_uniform(n, p, mix64(seed, 1))
    if len(omega1) == 0:
        raise EmptySampleError("empty phase-1 sample")
    phase1 = sample_entries(matrix.values, omega1, sigma, mix64(seed, 2))
    est = estimate_leverage_scores(phase1.dense(), kappa=1.0, p=p)
    plan = build_phase2_plan_budgeted(est, omega1, q, n)
    omega2 = bernoulli_plan(plan, mix64(seed, 3))
    phase2 = sample_entries(matrix.values, omega2, sigma, mix64(seed, 4))
    return Mc2Sample(
        samples=merge_samples(phase1, phase2), phase1=omega1, est=est, plan=plan
    )


def run_mc2_practical(
    matrix: TestMatrix,
    q: float,
    sigma: float = 0.0,
    seed: int = 0,
    opts: SolverOptions | None = None,
) -> TrialResult:
    """Two-phase completion at a fixed average sampling budget q."""
    try:
        stage = sample_mc2_practical(matrix, q, sigma, seed)
    except (EmptySampleError, CannotCalibrateError):
        return _failed(METHOD_MC2_PRACTICAL, q, seed)
    return _finish_trial(
        METHOD_MC2_PRACTICAL, q, matrix, stage.samples, sigma, seed, opts, stage.est
    )
