"""A small end-to-end phase-transition experiment through the harness.

Sweeps a budget grid on two contrasting presets at a reduced size
(n=60) so the whole run takes about a minute, then points at the
generated results.csv and SVG plots. Scale n, trials, and the grid up
to n=100 / 100 trials to reproduce the full desk-scale study; the same
thing is available from the command line:

    levmc experiment --config config.json --threads 4 --out results/

Run:
    python demos/05_phase_transition_experiment.py
"""

from pathlib import Path

from levmc import ExperimentConfig, SolverOptions, run_experiment

OUT = Path(__file__).parent / "output" / "experiment"

config = ExperimentConfig(
    presets=["P1", "P4"],
    methods=["UMC", "MC2Practical"],
    q_grid=[0.2, 0.3, 0.4, 0.5],
    trials=10,
    master_seed=11,
    solver=SolverOptions(rho=5.0, over_relaxation=1.6),
    outputs=str(OUT),
    n=60,
    r=5,
)

rows = run_experiment(config, threads=4)

print(f"{'preset':>7} {'method':>14} {'q':>5} {'success':>8} {'mean err':>10}")
for row in rows:
    print(
        f"{row.preset:>7} {row.method:>14} {row.q:>5.2f} "
        f"{row.success_rate:>8.2f} {row.mean_rel_error:>10.2e}"
    )
print(f"\nwrote {OUT / 'results.csv'} and per-preset SVG plots in {OUT}/")
