"""End-to-end CLI tests: subcommands, exit codes, determinism, file outputs."""

import json

import pytest

from wpi.cli import main


def load_report(out_dir):
    return json.loads((out_dir / "report.json").read_text())


def stripped(bundle):
    bundle = json.loads(json.dumps(bundle))
    bundle["metadata"].pop("generated_at")
    return bundle


def run(args):
    return main([str(a) for a in args])


def small_config(tmp_path, **overrides):
    """A light config so CLI tests stay fast."""
    data = {
        "seed": 11,
        "samples": 400,
        "delta": 0.05,
        "estimator": "exact-enum",
        "substrates": [
            {"name": "cpu", "temperature": 300.0, "overhead_mem": 40.0,
             "overhead_ctrl": 5.0, "algorithmic_yield": 1.0, "overhead_source": "default"},
            {"name": "gpu", "temperature": 300.0, "overhead_mem": 10.0,
             "overhead_ctrl": 2.0, "algorithmic_yield": 1.0, "overhead_source": "default"},
            {"name": "neuromorphic", "temperature": 300.0, "overhead_mem": 2.0,
             "overhead_ctrl": 2.0, "algorithmic_yield": 1.0, "overhead_source": "default"},
        ],
        "suites": [{"id": "bench", "tasks": [
            {"id": "a", "weight": 1.0, "performance": 1.0},
            {"id": "b", "weight": 2.0, "performance": 0.5},
        ]}],
        "traces": [
            {"substrate": name, "suite": "bench", "irreversible_ops": 10**6, "duration": 1.0}
            for name in ("cpu", "gpu", "neuromorphic")
        ],
        "models": [{
            "name": "four-state",
            "states": ["0000", "0101", "0110", "1011"],
            "kernel": [
                [0.875, 0.0625, 0.046875, 0.015625],
                [0.015625, 0.875, 0.0625, 0.046875],
                [0.046875, 0.015625, 0.875, 0.0625],
                [0.0625, 0.046875, 0.015625, 0.875],
            ],
            "measure": [1.0, 0.5, 2.0, 0.25],
            "initial": [0.25, 0.25, 0.25, 0.25],
        }],
    }
    data.update(overrides)
    path = tmp_path / "config.json"
    path.write_text(json.dumps(data, indent=1))
    return path


class TestSubcommands:
    def test_score_writes_reports(self, tmp_path):
        config = small_config(tmp_path)
        out = tmp_path / "out"
        assert run(["score", "--config", config, "--out", out]) == 0
        bundle = load_report(out)
        assert bundle["scores"][0]["intelligence"] == 2.0
        assert len(bundle["wpi_reports"]) == 3

    def test_compare_tsv_descending_phi(self, tmp_path):
        config = small_config(tmp_path)
        out = tmp_path / "out"
        assert run(["compare", "--config", config, "--out", out]) == 0
        lines = [
            line.split("\t") for line in (out / "compare.tsv").read_text().splitlines()
            if line and not line.startswith("#") and not line.startswith("suite\t")
        ]
        names = [cells[1] for cells in lines]
        phis = [float(cells[8]) for cells in lines]
        assert names == ["cpu", "gpu", "neuromorphic"]
        assert phis == sorted(phis, reverse=True)
        bundle = load_report(out)
        assert bundle["comparison"][0]["ordering"] == ["neuromorphic", "gpu", "cpu"]

    def test_simulate_single_trajectory_is_deterministic(self, tmp_path):
        config = small_config(tmp_path)
        out_a, out_b = tmp_path / "a", tmp_path / "b"
        assert run(["simulate", "--config", config, "--out", out_a, "--samples", 1]) == 0
        assert run(["simulate", "--config", config, "--out", out_b, "--samples", 1]) == 0
        sim_a = load_report(out_a)["simulations"][0]
        sim_b = load_report(out_b)["simulations"][0]
        assert sim_a["count"] == 1
        assert sim_a["first_trajectory"] == sim_b["first_trajectory"]
        assert sim_a["trajectory_digest"] == sim_b["trajectory_digest"]

    def test_check_bounds_writes_tsv_and_gates(self, tmp_path):
        config = small_config(tmp_path)
        out = tmp_path / "out"
        assert run(["check-bounds", "--config", config, "--out", out]) == 0
        bundle = load_report(out)
        assert bundle["bound_checks"][0]["model"] == "four-state"
        assert bundle["gates"]
        assert (out / "bounds.tsv").exists()

    def test_report_runs_everything(self, tmp_path):
        config = small_config(tmp_path)
        out = tmp_path / "out"
        assert run(["report", "--config", config, "--out", out]) == 0
        bundle = load_report(out)
        for key in ("scores", "comparison", "simulations", "bound_checks"):
            assert bundle[key]

    def test_default_config_is_packaged(self, tmp_path):
        out = tmp_path / "out"
        assert run(["score", "--out", out]) == 0
        assert load_report(out)["scores"][0]["suite"] == "default-suite"


class TestExitCodes:
    def test_invalid_config_exits_one(self, tmp_path):
        bad = tmp_path / "bad.json"
        bad.write_text('{"seed": 1, "models": [{"name": "m"}]}')
        assert run(["simulate", "--config", bad, "--out", tmp_path / "out"]) == 1

    def test_unknown_flag_exits_one(self, tmp_path):
        assert run(["score", "--nonsense"]) == 1

    def test_unknown_command_exits_one(self):
        assert run(["frobnicate"]) == 1

    def test_assert_mode_passes_on_shipped_chain(self, tmp_path):
        config = small_config(tmp_path)
        out = tmp_path / "out"
        assert run(["check-bounds", "--config", config, "--out", out, "--assert"]) == 0

    def test_assert_mode_fails_on_high_probability_complexity_jump(self, tmp_path):
        # a fifty-fifty hop onto a more complex state breaks the coupled
        # efficiency bound for the enumeration estimator, so --assert exits 2
        config = small_config(tmp_path, models=[{
            "name": "hot-hop",
            "states": ["0000", "0110"],
            "kernel": [[0.5, 0.5], [0.5, 0.5]],
            "measure": [1.0, 1.0],
            "initial": [0.5, 0.5],
        }])
        out = tmp_path / "out"
        assert run(["check-bounds", "--config", config, "--out", out, "--assert"]) == 2
        bundle = load_report(out)
        failing = [g for g in bundle["gates"] if not g["passed"]]
        assert any(g["gate"] == "coupled_efficiency_holds_rate" for g in failing)

    def test_missing_config_file_exits_one(self, tmp_path):
        assert run(["score", "--config", tmp_path / "nope.json"]) == 1


class TestDeterminism:
    def test_same_seed_byte_identical_modulo_timestamp(self, tmp_path):
        config = small_config(tmp_path)
        out_a, out_b = tmp_path / "a", tmp_path / "b"
        assert run(["check-bounds", "--config", config, "--out", out_a]) == 0
        assert run(["check-bounds", "--config", config, "--out", out_b]) == 0
        assert stripped(load_report(out_a)) == stripped(load_report(out_b))

    def test_seed_override_changes_results(self, tmp_path):
        config = small_config(tmp_path)
        out_a, out_b = tmp_path / "a", tmp_path / "b"
        assert run(["simulate", "--config", config, "--out", out_a]) == 0
        assert run(["simulate", "--config", config, "--out", out_b, "--seed", 999]) == 0
        a = load_report(out_a)["simulations"][0]["trajectory_digest"]
        b = load_report(out_b)["simulations"][0]["trajectory_digest"]
        assert a != b

    def test_format_json_writes_only_report(self, tmp_path):
        config = small_config(tmp_path)
        out = tmp_path / "out"
        assert run(["compare", "--config", config, "--out", out, "--format", "json"]) == 0
        assert (out / "report.json").exists()
        assert not (out / "compare.tsv").exists()

    def test_config_hash_binds_inputs(self, tmp_path):
        config = small_config(tmp_path)
        out = tmp_path / "out"
        run(["score", "--config", config, "--out", out])
        first = load_report(out)["metadata"]["config_sha256"]
        other = small_config(tmp_path, seed=12)
        run(["score", "--config", other, "--out", out])
        assert load_report(out)["metadata"]["config_sha256"] != first


class TestMeasuredEnergyPaths:
    def test_zero_ops_with_measured_energy_serializes_infinity(self, tmp_path):
        config = small_config(tmp_path, traces=[
            {"substrate": "cpu", "suite": "bench", "irreversible_ops": 0,
             "duration": 1.0, "measured_energy": 1e-9},
            {"substrate": "gpu", "suite": "bench", "irreversible_ops": 10**6,
             "duration": 1.0},
        ])
        out = tmp_path / "out"
        assert run(["score", "--config", config, "--out", out]) == 0
        bundle = load_report(out)
        cpu = next(r for r in bundle["wpi_reports"] if r["substrate"] == "cpu")
        assert cpu["overhead_factor"] == "inf"
        assert cpu["warnings"]
        assert cpu["energy_j"] == 1e-9

    def test_measured_energy_at_floor_has_no_warning(self, tmp_path):
        import math as _math
        floor = 10**6 * 1.380649e-23 * 300.0 * _math.log(2)
        config = small_config(tmp_path, traces=[
            {"substrate": "cpu", "suite": "bench", "irreversible_ops": 10**6,
             "duration": 1.0, "measured_energy": floor},
            {"substrate": "gpu", "suite": "bench", "irreversible_ops": 10**6,
             "duration": 1.0},
        ])
        out = tmp_path / "out"
        assert run(["score", "--config", config, "--out", out]) == 0
        cpu = next(r for r in load_report(out)["wpi_reports"] if r["substrate"] == "cpu")
        assert cpu["warnings"] == []
        assert cpu["overhead_factor"] == pytest.approx(1.0, rel=1e-12)

    def test_multi_step_simulation(self, tmp_path):
        config = small_config(tmp_path)
        out = tmp_path / "out"
        assert run(["simulate", "--config", config, "--out", out,
                    "--samples", 50, "--steps", 4]) == 0
        sim = load_report(out)["simulations"][0]
        assert sim["steps"] == 4
        assert len(sim["first_trajectory"]) == 5
        assert sum(sum(row) for row in sim["transition_counts"]) == 200

    def test_sub_landauer_measurement_reported_not_fatal(self, tmp_path):
        # measured energy below the Landauer floor is physically
        # inconsistent: it is flagged and the bound falls back to the
        # reversible floor, but the report still renders
        config = small_config(tmp_path, traces=[
            {"substrate": "cpu", "suite": "bench", "irreversible_ops": 10**6,
             "duration": 1.0, "measured_energy": 1e-21},
            {"substrate": "gpu", "suite": "bench", "irreversible_ops": 10**6,
             "duration": 1.0},
        ])
        out = tmp_path / "out"
        assert run(["score", "--config", config, "--out", out]) == 0
        cpu = next(r for r in load_report(out)["wpi_reports"] if r["substrate"] == "cpu")
        assert any("Landauer floor" in w for w in cpu["warnings"])
        assert cpu["overhead_factor"] < 1.0
        assert cpu["phi_lower_bound"] == cpu["reversible_floor"]
        assert run(["compare", "--config", config, "--out", out]) == 0
