"""Config-driven experiment runner for recovery-vs-budget studies.

Runs (preset x method x q) grids of independent trials, aggregates
success rates and mean errors, and writes a flat ``results.csv`` plus
per-preset SVG plots (two-phase curves solid, uniform dashed).

Reproducibility contract: every trial seed is a fixed hash of
``(master_seed, preset_index, method_index, q_index, trial_index)`` and
aggregation order is fixed, so a config produces byte-identical CSV
output across runs and thread counts. Wall-clock timings are kept on
the in-memory rows only, never in the CSV.
"""

from __future__ import annotations

import json
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from ._mix import mix64, mix64_str
from .genmat import TestMatrix, preset
from .leverage import EstimatedScores, LeverageScores
from .pipeline import (
    METHOD_MC2_PAPER,
    METHOD_MC2_PRACTICAL,
    METHOD_UMC,
    METHODS,
    RECOVERY_THRESHOLD,
    TrialResult,
    relative_column_errors,
    run_mc2_paper,
    run_mc2_practical,
    run_umc,
    sample_mc2_paper,
    sample_mc2_practical,
)
from .sampling import write_plan_csv
from .solver import SolverOptions

_CSV_FIELDS = (
    "preset",
    "method",
    "q",
    "sigma",
    "trials",
    "success_rate",
    "mean_rel_error",
    "mean_realized_fraction",
)


def default_q_grid() -> list[float]:
    """The 0.05-spaced budget grid the bundled studies sweep."""
    return [round(0.05 * k, 2) for k in range(1, 13)]


@dataclass
class ExperimentConfig:
    """Grid definition for one experiment run."""

    presets: list[str]
    methods: list[str]
    q_grid: list[float] = field(default_factory=default_q_grid)
    trials: int = 100
    sigma: float = 0.0
    master_seed: int = 0
    solver: SolverOptions = field(default_factory=SolverOptions)
    outputs: str = "results"
    n: int = 100
    r: int = 5

    def __post_init__(self) -> None:
        if self.trials < 1:
            raise ValueError("trials must be >= 1")
        if self.sigma < 0:
            raise ValueError("sigma must be >= 0")
        if not self.q_grid:
            raise ValueError("q_grid must be nonempty")
        if any(not 0.0 < q <= 1.0 for q in self.q_grid):
            raise ValueError("q_grid entries must lie in (0, 1]")
        unknown = [m for m in self.methods if m not in METHODS]
        if unknown:
            raise ValueError(f"unknown methods {unknown}; known: {list(METHODS)}")
        if self.sigma > 0 and METHOD_MC2_PAPER in self.methods:
            raise ValueError("the prototype pipeline is noiseless; use sigma=0 with MC2Paper")

    @classmethod
    def from_json(cls, path: str | Path) -> "ExperimentConfig":
        raw = json.loads(Path(path).read_text(encoding="utf-8"))
        if "solver" in raw:
            raw["solver"] = SolverOptions(**raw["solver"])
        return cls(**raw)

    def to_json(self, path: str | Path) -> None:
        raw = {
            "presets": list(self.presets),
            "methods": list(self.methods),
            "q_grid": list(self.q_grid),
            "trials": self.trials,
            "sigma": self.sigma,
            "master_seed": self.master_seed,
            "solver": {
                "max_iters": self.solver.max_iters,
                "tol_primal": self.solver.tol_primal,
                "tol_dual": self.solver.tol_dual,
                "rho": self.solver.rho,
                "over_relaxation": self.solver.over_relaxation,
            },
            "outputs": str(self.outputs),
            "n": self.n,
            "r": self.r,
        }
        Path(path).write_text(json.dumps(raw, indent=2) + "\n", encoding="utf-8")


@dataclass(frozen=True)
class ResultsRow:
    """Aggregate over the trials of one (preset, method, q) grid point."""

    preset: str
    method: str
    q: float
    sigma: float
    trials: int
    success_rate: float
    mean_rel_error: float
    mean_realized_fraction: float
    wall_time_seconds: float


@dataclass(frozen=True)
class ColumnErrorProfile:
    """Per-column relative squared errors with the true column energies."""

    errors: np.ndarray
    column_norms_sq: np.ndarray
    zero_columns: np.ndarray


@dataclass(frozen=True)
class RatioReport:
    """Estimate-to-exact score ratios paired with the exact scores."""

    mu_scores: np.ndarray
    mu_ratios: np.ndarray
    nu_scores: np.ndarray
    nu_ratios: np.ndarray
    skipped_rows: np.ndarray
    skipped_cols: np.ndarray


def column_error_profile(m_hat: np.ndarray, reference: np.ndarray) -> ColumnErrorProfile:
    """Relative squared error of each column, paired with its true energy.

    Zero-norm reference columns report error 0 and are flagged.
    """
    m_hat = np.asarray(m_hat, dtype=float)
    reference = np.asarray(reference, dtype=float)
    if m_hat.shape != reference.shape:
        raise ValueError("shape mismatch")
    norms_sq = np.sum(reference**2, axis=0)
    return ColumnErrorProfile(
        errors=relative_column_errors(m_hat, reference),
        column_norms_sq=norms_sq,
        zero_columns=norms_sq == 0.0,
    )


def leverage_ratio_report(est: EstimatedScores, exact: LeverageScores) -> RatioReport:
    """Pair each exact score with its multiplicative estimation error.

    Entries whose exact score is zero are skipped and reported in the
    ``skipped_*`` index arrays.
    """
    row_ok = exact.mu > 0.0
    col_ok = exact.nu > 0.0
    return RatioReport(
        mu_scores=exact.mu[row_ok],
        mu_ratios=est.mu_hat[row_ok] / exact.mu[row_ok],
        nu_scores=exact.nu[col_ok],
        nu_ratios=est.nu_hat[col_ok] / exact.nu[col_ok],
        skipped_rows=np.flatnonzero(~row_ok),
        skipped_cols=np.flatnonzero(~col_ok),
    )


def _run_trial(
    matrix: TestMatrix, method: str, q: float, sigma: float, seed: int, opts: SolverOptions
) -> TrialResult:
    if method == METHOD_UMC:
        return run_umc(matrix, q, sigma, seed, opts)
    if method == METHOD_MC2_PRACTICAL:
        return run_mc2_practical(matrix, q, sigma, seed, opts)
    if method == METHOD_MC2_PAPER:
        return run_mc2_paper(matrix, q, seed=seed, opts=opts)
    raise ValueError(f"unknown method {method!r}")


def run_experiment(
    config: ExperimentConfig, threads: int = 1, dump_plans: bool = False
) -> list[ResultsRow]:
    """Run the full grid, write results.csv and plots, return the rows.

    With ``dump_plans``, the trial-0 phase-2 plan of every two-phase
    grid point is also written as `<preset>_<method>_q<index>_plan.csv`
    (plans are n^2 floats, so they are not serialized by default).
    """
    out_dir = Path(config.outputs)
    out_dir.mkdir(parents=True, exist_ok=True)

    matrices = {
        name: preset(name, config.n, config.r, seed=mix64_str(config.master_seed, name))
        for name in config.presets
    }

    tasks = [
        (pi, mi, qi, ti)
        for pi in range(len(config.presets))
        for mi in range(len(config.methods))
        for qi in range(len(config.q_grid))
        for ti in range(config.trials)
    ]

    def run_one(task: tuple[int, int, int, int]) -> tuple[tuple[int, int, int, int], TrialResult, float]:
        pi, mi, qi, ti = task
        seed = mix64(config.master_seed, pi, mi, qi, ti)
        start = time.perf_counter()
        trial = _run_trial(
            matrices[config.presets[pi]],
            config.methods[mi],
            config.q_grid[qi],
            config.sigma,
            seed,
            config.solver,
        )
        return task, trial, time.perf_counter() - start

    if threads > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            outcomes = list(pool.map(run_one, tasks))
    else:
        outcomes = [run_one(t) for t in tasks]

    by_key: dict[tuple[int, int, int], list[tuple[int, TrialResult, float]]] = {}
    for (pi, mi, qi, ti), trial, elapsed in outcomes:
        by_key.setdefault((pi, mi, qi), []).append((ti, trial, elapsed))

    rows: list[ResultsRow] = []
    for pi in range(len(config.presets)):
        for mi in range(len(config.methods)):
            for qi in range(len(config.q_grid)):
                cell = sorted(by_key[(pi, mi, qi)])
                trials = [t for _, t, _ in cell]
                rows.append(
                    ResultsRow(
                        preset=config.presets[pi],
                        method=config.methods[mi],
                        q=config.q_grid[qi],
                        sigma=config.sigma,
                        trials=config.trials,
                        success_rate=sum(t.success for t in trials) / config.trials,
                        mean_rel_error=float(np.mean([t.rel_error for t in trials])),
                        mean_realized_fraction=float(
                            np.mean([t.realized_fraction for t in trials])
                        ),
                        wall_time_seconds=sum(e for _, _, e in cell),
                    )
                )

    write_results_csv(rows, out_dir / "results.csv")
    emit_plots(rows, out_dir)
    if dump_plans:
        _dump_phase2_plans(config, matrices, out_dir)
    return rows


def _dump_phase2_plans(
    config: ExperimentConfig, matrices: dict[str, TestMatrix], out_dir: Path
) -> None:
    for pi, name in enumerate(config.presets):
        for mi, method in enumerate(config.methods):
            if method == METHOD_UMC:
                continue
            for qi, q in enumerate(config.q_grid):
                seed = mix64(config.master_seed, pi, mi, qi, 0)
                if method == METHOD_MC2_PRACTICAL:
                    stage = sample_mc2_practical(matrices[name], q, config.sigma, seed)
                else:
                    stage = sample_mc2_paper(matrices[name], q, seed=seed)
                write_plan_csv(stage.plan, out_dir / f"{name}_{method}_q{qi}_plan.csv")


def write_results_csv(rows: list[ResultsRow], path: str | Path) -> None:
    """Write aggregate rows as UTF-8, LF-terminated CSV (17 sig digits).

    The wall-time field stays off the CSV so output depends only on
    (config, master_seed).
    """
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(",".join(_CSV_FIELDS) + "\n")
        for row in rows:
            cells = []
            for name in _CSV_FIELDS:
                value = getattr(row, name)
                cells.append(f"{value:.17g}" if isinstance(value, float) else str(value))
            fh.write(",".join(cells) + "\n")


def _method_style(method: str) -> dict:
    if method == METHOD_UMC:
        return {"linestyle": "--", "marker": "s"}
    return {"linestyle": "-", "marker": "o"}


def emit_plots(rows: list[ResultsRow], out_dir: str | Path) -> list[Path]:
    """Per preset: success-rate-vs-q and error-vs-q SVG overlays."""
    if not rows:
        raise ValueError("no results to plot")
    import matplotlib

    matplotlib.use("Agg")
    import matplotlib.pyplot as plt

    out_dir = Path(out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    written: list[Path] = []
    presets = list(dict.fromkeys(row.preset for row in rows))
    for name in presets:
        sub = [row for row in rows if row.preset == name]
        methods = list(dict.fromkeys(row.method for row in sub))
        for kind, ylab, attr in (
            ("recovery", "empirical recovery probability", "success_rate"),
            ("error", "mean relative error", "mean_rel_error"),
        ):
            fig, ax = plt.subplots(figsize=(5, 3.6))
            for method in methods:
                pts = sorted((row.q, getattr(row, attr)) for row in sub if row.method == method)
                ax.plot(
                    [p[0] for p in pts],
                    [p[1] for p in pts],
                    label=method,
                    **_method_style(method),
                )
            if kind == "error":
                ax.set_yscale("log")
            ax.set_xlabel("average sampling probability q")
            ax.set_ylabel(ylab)
            ax.set_title(name)
            ax.legend()
            fig.tight_layout()
            target = out_dir / f"{name}_{kind}.svg"
            fig.savefig(target)
            plt.close(fig)
            written.append(target)
    return written
