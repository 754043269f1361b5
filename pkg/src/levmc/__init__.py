"""Leveraged sampling and nuclear-norm completion of low-rank matrices.

The package covers the full loop of a two-phase completion study:
synthetic rank-r test matrices with controlled conditioning and
coherence (:mod:`levmc.genmat`), exact and estimated leverage scores
with sample-complexity calculators (:mod:`levmc.leverage`), Bernoulli
samplers and calibrated sampling plans (:mod:`levmc.sampling`), a
splitting solver for nuclear-norm minimization (:mod:`levmc.solver`),
end-to-end pipelines (:mod:`levmc.pipeline`), and a reproducible
experiment harness (:mod:`levmc.harness`).
"""

from .genmat import (
    BlockDiag,
    Explicit,
    LIN_SPACED,
    PowerLaw,
    PRESET_NAMES,
    TestMatrix,
    WELL_CONDITIONED,
    from_dense,
    make_block_diag,
    make_power_law,
    preset,
    random_orthonormal,
)
from .harness import (
    ColumnErrorProfile,
    ExperimentConfig,
    RatioReport,
    ResultsRow,
    column_error_profile,
    default_q_grid,
    emit_plots,
    leverage_ratio_report,
    run_experiment,
)
from .leverage import (
    BoundConfig,
    EmptySampleError,
    EstimatedScores,
    LeverageScores,
    check_n4_condition,
    coherence,
    corollary_few_large_p,
    corollary_power_law_p,
    estimate_leverage_scores,
    exact_leverage_scores,
    lemma1_required_p,
    theorem1_sufficient_p,
)
from .pipeline import (
    METHOD_MC2_PAPER,
    METHOD_MC2_PRACTICAL,
    METHOD_UMC,
    METHODS,
    Mc2Sample,
    RECOVERY_THRESHOLD,
    TrialResult,
    run_mc2_paper,
    run_mc2_practical,
    run_umc,
    sample_mc2_paper,
    sample_mc2_practical,
)
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
    write_plan_csv,
)
from .solver import (
    CompletionResult,
    SolverOptions,
    complete_exact,
    complete_noisy,
    nuclear_norm,
    svt,
)

__version__ = "0.1.0"

__all__ = [
    "BlockDiag",
    "BoundConfig",
    "CannotCalibrateError",
    "ColumnErrorProfile",
    "CompletionResult",
    "EmptySampleError",
    "EstimatedScores",
    "ExperimentConfig",
    "Explicit",
    "IndexSet",
    "LIN_SPACED",
    "LeverageScores",
    "METHOD_MC2_PAPER",
    "METHOD_MC2_PRACTICAL",
    "METHOD_UMC",
    "METHODS",
    "Mc2Sample",
    "PRESET_NAMES",
    "PowerLaw",
    "RECOVERY_THRESHOLD",
    "RatioReport",
    "ResultsRow",
    "SampleSet",
    "SamplingPlan",
    "SolverOptions",
    "TestMatrix",
    "TrialResult",
    "WELL_CONDITIONED",
    "bernoulli_plan",
    "bernoulli_uniform",
    "build_phase2_plan_budgeted",
    "build_phase2_plan_theoretical",
    "check_n4_condition",
    "coherence",
    "column_error_profile",
    "complete_exact",
    "complete_noisy",
    "default_q_grid",
    "corollary_few_large_p",
    "corollary_power_law_p",
    "emit_plots",
    "estimate_leverage_scores",
    "exact_leverage_scores",
    "from_dense",
    "lemma1_required_p",
    "leverage_ratio_report",
    "make_block_diag",
    "make_power_law",
    "merge_samples",
    "nuclear_norm",
    "preset",
    "random_orthonormal",
    "run_experiment",
    "run_mc2_paper",
    "run_mc2_practical",
    "run_umc",
    "sample_entries",
    "sample_mc2_paper",
    "sample_mc2_practical",
    "svt",
    "theorem1_sufficient_p",
    "write_plan_csv",
]
