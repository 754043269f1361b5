"""End-to-end tests of the command-line interface."""

import json

import numpy as np
import pytest

from levmc.cli import main
from levmc.genmat import preset, read_matrix_csv
from levmc.sampling import bernoulli_uniform, sample_entries, write_samples_csv


class TestGen:
    def test_writes_matrix_and_sidecar(self, tmp_path, capsys):
        out = tmp_path / "b2.csv"
        code = main(
            ["gen", "--preset", "B2", "--n", "100", "--r", "5", "--seed", "3",
             "--out", str(out)]
        )
        assert code == 0
        M = read_matrix_csv(out)
        assert M.shape == (100, 100)
        assert np.array_equal(M, preset("B2", 100, 5, seed=3).values)
        meta = json.loads((tmp_path / "b2.csv.json").read_text())
        assert meta["preset"] == "B2"
        assert meta["eta"] == pytest.approx(10.0, abs=1e-9)

    def test_rejects_unknown_preset(self, tmp_path):
        with pytest.raises(SystemExit):
            main(["gen", "--preset", "Z1", "--out", str(tmp_path / "x.csv")])


class TestLeverage:
    def test_prints_scores_json(self, tmp_path, capsys):
        out = tmp_path / "b1.csv"
        main(["gen", "--preset", "B1", "--n", "40", "--r", "4", "--out", str(out)])
        capsys.readouterr()
        code = main(["leverage", "--matrix", str(out)])
        assert code == 0
        report = json.loads(capsys.readouterr().out)
        assert report["n"] == 40
        assert report["r"] == 4
        assert report["eta"] == pytest.approx(1.0, abs=1e-9)
        assert report["kappa"] == pytest.approx(1.0, abs=1e-9)
        assert np.allclose(report["mu"], 1.0, atol=1e-9)


class TestComplete:
    def test_recovers_small_matrix(self, tmp_path, capsys):
        m = preset("P1", 20, 2, seed=5)
        idx = bernoulli_uniform(20, 0.7, seed=9)
        samples_path = tmp_path / "omega.csv"
        write_samples_csv(sample_entries(m.values, idx), samples_path)
        out = tmp_path / "mhat.csv"
        code = main(
            ["complete", "--samples", str(samples_path), "--n", "20", "--out", str(out)]
        )
        assert code == 0
        diag = json.loads(capsys.readouterr().out)
        assert diag["converged"]
        m_hat = read_matrix_csv(out)
        assert np.linalg.norm(m_hat - m.values) < 1e-4

    def test_noisy_ball_variant(self, tmp_path, capsys):
        m = preset("P1", 20, 2, seed=6)
        idx = bernoulli_uniform(20, 0.8, seed=10)
        samples = sample_entries(m.values, idx, sigma=0.01, seed=11)
        noise = samples.values - m.values[idx.rows, idx.cols]
        delta = float(noise @ noise)
        samples_path = tmp_path / "omega.csv"
        write_samples_csv(samples, samples_path)
        out = tmp_path / "mhat.csv"
        code = main(
            ["complete", "--samples", str(samples_path), "--n", "20",
             "--delta", str(delta), "--out", str(out)]
        )
        assert code == 0
        diag = json.loads(capsys.readouterr().out)
        assert diag["converged"]


class TestExperiment:
    def test_runs_config_and_writes_outputs(self, tmp_path):
        config = {
            "presets": ["B1"],
            "methods": ["UMC", "MC2Practical"],
            "q_grid": [0.5, 0.9],
            "trials": 2,
            "master_seed": 5,
            "solver": {"rho": 5.0, "over_relaxation": 1.6},
            "outputs": str(tmp_path / "ignored"),
            "n": 30,
            "r": 3,
        }
        config_path = tmp_path / "config.json"
        config_path.write_text(json.dumps(config))
        out = tmp_path / "results"
        code = main(
            ["experiment", "--config", str(config_path), "--threads", "2",
             "--out", str(out), "--dump-plan"]
        )
        assert code == 0
        lines = (out / "results.csv").read_text().splitlines()
        assert len(lines) == 1 + 2 * 2
        assert (out / "B1_recovery.svg").exists()
        plan = np.loadtxt(out / "B1_MC2Practical_q0_plan.csv", delimiter=",")
        assert plan.shape == (30, 30)
        assert plan.min() >= 0.0 and plan.max() <= 1.0
