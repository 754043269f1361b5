"""Command-line entry points: gen, leverage, complete, experiment."""

from __future__ import annotations

import argparse
import json
import sys

import numpy as np

from .genmat import PRESET_NAMES, preset, read_matrix_csv, write_matrix_csv
from .harness import ExperimentConfig, run_experiment
from .leverage import exact_leverage_scores
from .sampling import read_samples_csv
from .solver import complete_exact, complete_noisy


def _cmd_gen(args: argparse.Namespace) -> int:
    matrix = preset(args.preset, args.n, args.r, args.seed)
    write_matrix_csv(matrix, args.out)
    return 0


def _cmd_leverage(args: argparse.Namespace) -> int:
    M = read_matrix_csv(args.matrix)
    scores = exact_leverage_scores(M, rank_tol=args.rank_tol)
    s = np.linalg.svd(M, compute_uv=False)
    report = {
        "n": scores.n,
        "r": scores.r,
        "mu": scores.mu.tolist(),
        "nu": scores.nu.tolist(),
        "eta": float(max(scores.mu.max(), scores.nu.max())),
        "kappa": float(s[0] / s[scores.r - 1]),
    }
    json.dump(report, sys.stdout, indent=2)
    sys.stdout.write("\n")
    return 0


def _cmd_complete(args: argparse.Namespace) -> int:
    samples = read_samples_csv(args.samples, args.n)
    if args.delta is not None:
        result = complete_noisy(samples, args.delta, args.n)
    else:
        result = complete_exact(samples, args.n)
    np.savetxt(args.out, result.m_hat, fmt="%.17g", delimiter=",")
    json.dump(
        {
            "iterations": result.iterations,
            "primal_residual": result.primal_residual,
            "dual_residual": result.dual_residual,
            "converged": result.converged,
            "nuclear_norm": result.nuclear_norm,
        },
        sys.stdout,
        indent=2,
    )
    sys.stdout.write("\n")
    return 0


def _cmd_experiment(args: argparse.Namespace) -> int:
    config = ExperimentConfig.from_json(args.config)
    if args.out is not None:
        config.outputs = args.out
    run_experiment(config, threads=args.threads, dump_plans=args.dump_plan)
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="levmc",
        description="Leveraged sampling and nuclear-norm completion toolkit.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    gen = sub.add_parser("gen", help="generate a preset test matrix as CSV + JSON sidecar")
    gen.add_argument("--preset", required=True, choices=PRESET_NAMES)
    gen.add_argument("--n", type=int, default=100)
    gen.add_argument("--r", type=int, default=5)
    gen.add_argument("--seed", type=int, default=0)
    gen.add_argument("--out", required=True)
    gen.set_defaults(func=_cmd_gen)

    lev = sub.add_parser("leverage", help="print leverage scores of a CSV matrix as JSON")
    lev.add_argument("--matrix", required=True)
    lev.add_argument("--rank-tol", type=float, default=1e-8, dest="rank_tol")
    lev.set_defaults(func=_cmd_leverage)

    comp = sub.add_parser("complete", help="complete a matrix from i,j,value sample rows")
    comp.add_argument("--samples", required=True)
    comp.add_argument("--n", type=int, required=True)
    comp.add_argument("--delta", type=float, default=None)
    comp.add_argument("--out", required=True)
    comp.set_defaults(func=_cmd_complete)

    exp = sub.add_parser("experiment", help="run a JSON-configured recovery experiment")
    exp.add_argument("--config", required=True)
    exp.add_argument("--threads", type=int, default=1)
    exp.add_argument("--out", default=None)
    exp.add_argument(
        "--dump-plan",
        action="store_true",
        dest="dump_plan",
        help="also write each two-phase grid point's trial-0 sampling plan as CSV",
    )
    exp.set_defaults(func=_cmd_experiment)

    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
