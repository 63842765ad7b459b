import json

import pytest

from urnelect.cli import main


def test_version_flag(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["--version"])
    assert exc.value.code == 0
    assert "urnelect" in capsys.readouterr().out


def test_missing_subcommand_is_usage_error():
    assert main([]) == 1


def test_unknown_scenario_is_usage_error(capsys):
    assert main(["experiment", "landslide_machine", "--reps", "2"]) == 1
    assert "unknown scenario" in capsys.readouterr().err


def test_experiment_end_to_end(tmp_path, capsys):
    code = main([
        "experiment", "sym_1_1", "--p", "0.1", "--reps", "4", "--seed", "3",
        "--districts", "10", "--target", "500", "--out", str(tmp_path),
    ])
    assert code == 0
    assert (tmp_path / "sym_1_1_p0.1_dataset.csv").exists()
    assert (tmp_path / "sym_1_1_p0.1_manifest.json").exists()
    assert (tmp_path / "sym_1_1_p0.1_summary.json").exists()
    assert "4 replicates" in capsys.readouterr().out


def test_config_file_with_flag_override(tmp_path):
    cfg = {"scenario": "sym_2_2", "p": 0.3, "replicates": 3, "seed": 1,
           "num_districts": 10, "target_total_balls": 400}
    cfg_path = tmp_path / "spec.json"
    cfg_path.write_text(json.dumps(cfg))
    out = tmp_path / "out"
    code = main(["experiment", "--config", str(cfg_path), "--p", "0.1",
                 "--out", str(out)])
    assert code == 0
    manifest = json.loads((out / "sym_2_2_p0.1_manifest.json").read_text())
    assert manifest["config"]["imitation_prob"] == 0.1  # flag wins
    assert manifest["replicates"] == 3                  # file value kept


def test_simulate_writes_state_csv(tmp_path):
    doc = {
        "num_districts": 5, "num_colours": 2, "imitation_prob": 0.2,
        "reinforcement": 1, "blocks": [[5, [1, 1]]],
        "target_total_balls": 200, "seed": 4,
    }
    cfg_path = tmp_path / "sim.json"
    cfg_path.write_text(json.dumps(doc))
    out = tmp_path / "state.csv"
    assert main(["simulate", "--config", str(cfg_path), "--out", str(out)]) == 0
    lines = out.read_text().splitlines()
    assert lines[0] == "district,count_p1,count_p2"
    assert len(lines) == 6


def test_swing_cli_quick(tmp_path, capsys):
    code = main([
        "swing", "--p", "0.0", "--reps", "3", "--seed", "2", "--districts", "10",
        "--grow", "2000", "--rescale", "100", "--regrow", "2000",
        "--out", str(tmp_path),
    ])
    assert code == 0
    assert (tmp_path / "swing_p0_records.csv").exists()
    assert "slope" in capsys.readouterr().out


def test_cubefit_cli(tmp_path, capsys):
    main(["experiment", "sym_1_1", "--p", "0.1", "--reps", "30", "--seed", "6",
          "--districts", "10", "--target", "2000", "--out", str(tmp_path)])
    code = main(["cubefit", "--dataset", str(tmp_path / "sym_1_1_p0.1_dataset.csv")])
    assert code == 0
    out = capsys.readouterr().out
    assert "central slope" in out


def test_plot_cli(tmp_path):
    main(["experiment", "sym_1_1", "--p", "0.1", "--reps", "5", "--seed", "6",
          "--districts", "10", "--target", "500", "--out", str(tmp_path)])
    dataset = tmp_path / "sym_1_1_p0.1_dataset.csv"
    assert main(["plot", "--dataset", str(dataset), "--kind", "seat_hist",
                 "--out", str(tmp_path)]) == 0
    assert (tmp_path / "seat_hist.svg").exists()
    assert main(["plot", "--dataset", str(dataset), "--kind", "mosaic",
                 "--out", str(tmp_path)]) == 1


def test_plot_cli_swing_kind(tmp_path):
    main(["swing", "--p", "0.0", "--reps", "4", "--seed", "1", "--districts", "10",
          "--grow", "1000", "--rescale", "50", "--regrow", "1000",
          "--out", str(tmp_path)])
    assert main(["plot", "--dataset", str(tmp_path / "swing_p0_records.csv"),
                 "--kind", "swing", "--out", str(tmp_path)]) == 0
    assert (tmp_path / "swing.svg").exists()


def test_io_error_exit_code(tmp_path):
    blocker = tmp_path / "blocker"
    blocker.write_text("not a directory")
    code = main(["experiment", "sym_1_1", "--p", "0.1", "--reps", "2",
                 "--districts", "10", "--target", "400",
                 "--out", str(blocker / "sub")])
    assert code == 3


def test_validate_cli(capsys):
    assert main(["validate", "--samples", "120000"]) == 0
    out = capsys.readouterr().out
    assert "PASS" in out and "checks passed" in out


def test_missing_dataset_is_io_error(tmp_path):
    assert main(["cubefit", "--dataset", str(tmp_path / "nope.csv")]) == 3
