import json

from herdsim.cli import main, reference_scenario_path

from conftest import REFERENCE_OBSTACLES, small_scenario_doc


def test_check_bundle_clean(capsys):
    assert main(["check"]) == 0
    out = capsys.readouterr().out
    assert "scenario is clean" in out
    assert "arc repulsion magnitude" in out
    assert "tracking gains" in out


def test_simulate_bundle_artifacts(cli_artifacts):
    assert cli_artifacts["exit1"] == 0
    assert cli_artifacts["exit2"] == 0
    for name in ("trace.csv", "summary.json", "trajectories.svg", "ratios.svg"):
        assert name in cli_artifacts["first"]
    summary = json.loads(cli_artifacts["first"]["summary.json"])
    assert summary["captured"] is True
    assert summary["manifest"]["scenario_sha256"]
    assert summary["manifest"]["outputs"]["trace_csv"] == "trace.csv"


def test_missing_scenario_exit_code(tmp_path):
    assert main(["simulate", "--scenario", str(tmp_path / "nope.json"),
                 "--out", str(tmp_path)]) == 2


def test_malformed_scenario_exit_code(tmp_path):
    bad = tmp_path / "bad.json"
    bad.write_text("{not json")
    assert main(["check", "--scenario", str(bad)]) == 3
    bad.write_text(json.dumps({"protected_area": {}}))
    assert main(["check", "--scenario", str(bad)]) == 3


def test_invalid_scenario_exit_code(tmp_path, capsys):
    doc = small_scenario_doc(**{"formation.clearance_m": 0.05})
    path = tmp_path / "scenario.json"
    path.write_text(json.dumps(doc))
    assert main(["simulate", "--scenario", str(path), "--out", str(tmp_path / "o")]) == 4
    err = capsys.readouterr().err
    assert "violation: clearance" in err


def test_spread_below_minimum_exit_code(tmp_path, capsys):
    doc = small_scenario_doc(**{"formation.spread_rad": 0.5})
    path = tmp_path / "scenario.json"
    path.write_text(json.dumps(doc))
    assert main(["simulate", "--scenario", str(path), "--out", str(tmp_path / "o")]) == 4
    assert "violation: spread" in capsys.readouterr().err


def test_check_inconsistent_reference_parameters_flagged(tmp_path, capsys):
    doc = small_scenario_doc()
    doc["obstacles"] = [{"center_m": [x, y], "width_m": w, "height_m": h}
                        for x, y, w, h in REFERENCE_OBSTACLES]
    doc["attacker"]["start_m"] = [20.0, 48.0]
    doc["attacker"]["defender_standoff_band_m"] = [0.3, 0.8, 0.65]
    doc["safe_area"] = {"center_m": [-5.0, 60.0], "radius_m": 5.0}
    del doc["obstacle_model"]["attacker_circle_factors"]
    path = tmp_path / "raw.json"
    path.write_text(json.dumps(doc))
    assert main(["check", "--scenario", str(path)]) == 4
    out = capsys.readouterr().out
    assert "standoff-triplet" in out
    assert "obstacle-spacing" in out


def test_dt_override_doubles_rows(tmp_path):
    doc = small_scenario_doc(**{"integrator.t_max_s": 1.0,
                                "defenders.sensing_zone_radius_m": 5.0})
    path = tmp_path / "short.json"
    path.write_text(json.dumps(doc))
    out1 = tmp_path / "a"
    out2 = tmp_path / "b"
    # neither run captures; both exhaust the 1 s budget, so exit 5
    assert main(["simulate", "--scenario", str(path), "--out", str(out1),
                 "--svg", "off"]) == 5
    assert main(["simulate", "--scenario", str(path), "--out", str(out2),
                 "--svg", "off", "--dt", "0.005"]) == 5
    rows1 = len((out1 / "trace.csv").read_text().strip().split("\n"))
    rows2 = len((out2 / "trace.csv").read_text().strip().split("\n"))
    assert rows1 == 102  # header + 101 states
    assert rows2 == 2 * rows1 - 2


def test_svg_off_suppresses_plots(tmp_path):
    doc = small_scenario_doc(**{"integrator.t_max_s": 1.0})
    path = tmp_path / "short.json"
    path.write_text(json.dumps(doc))
    out = tmp_path / "o"
    main(["simulate", "--scenario", str(path), "--out", str(out), "--svg", "off"])
    assert (out / "trace.csv").exists()
    assert not (out / "trajectories.svg").exists()


def test_sweep_bundle_passes(tmp_path, capsys):
    out = tmp_path / "sweep"
    assert main(["sweep", "--obstacle", "0", "--out", str(out)]) == 0
    assert "pass" in capsys.readouterr().out
    assert (out / "sweep.csv").exists()
    assert (out / "sweep.svg").exists()
    summary = json.loads((out / "sweep_summary.json").read_text())
    assert summary["passed"] is True
    assert summary["max_abs_rad"] < 3.1415926 - 0.1


def test_sweep_rejects_low_resolution(tmp_path):
    assert main(["sweep", "--obstacle", "0", "--resolution", "16",
                 "--out", str(tmp_path)]) == 3


def test_sweep_rejects_bad_index(tmp_path):
    assert main(["sweep", "--obstacle", "17", "--out", str(tmp_path)]) == 3


def test_bundled_scenario_path_exists():
    assert reference_scenario_path().is_file()
