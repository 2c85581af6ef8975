"""Command line surface: exit codes, report files, money subcommands."""

import json

import pytest

from qcryptlab.cli import main
from qcryptlab.experiments import experiment_names


def test_list_prints_every_experiment(capsys):
    assert main(["list"]) == 0
    out = capsys.readouterr().out
    for name in experiment_names():
        assert name in out


def test_run_pass_exits_zero(capsys):
    assert main(["run", "metric-suite"]) == 0
    out = capsys.readouterr().out
    assert out.startswith("metric-suite: pass")


def test_run_unknown_experiment_exits_two(capsys):
    assert main(["run", "bogus"]) == 2
    err = capsys.readouterr().err
    assert "unknown experiment" in err


def test_run_forced_failure_exits_one(tmp_path, capsys):
    config = tmp_path / "cfg.jsonl"
    config.write_text(
        json.dumps(
            {
                "experiment": "metric-suite",
                "tolerances": {"channel-estimate": 1.5},
            }
        )
        + "\n"
    )
    assert main(["run", "--config", str(config)]) == 1
    assert "FAIL" in capsys.readouterr().out


def test_run_writes_json_lines(tmp_path, capsys):
    out = tmp_path / "reports.jsonl"
    assert main(["run", "otp-uniformity", "--n", "2", "--out", str(out)]) == 0
    assert main(["run", "otp-uniformity", "--n", "2", "--out", str(out)]) == 0
    capsys.readouterr()
    lines = out.read_text().splitlines()
    assert len(lines) == 2
    assert lines[0] == lines[1]  # same config, byte-identical report
    record = json.loads(lines[0])
    assert record["experiment"] == "otp-uniformity"
    assert record["inputs"]["n"] == 2


def test_run_writes_csv_trials(tmp_path, capsys):
    out = tmp_path / "trials.csv"
    code = main(
        ["run", "scheme-roundtrip", "--trials", "5", "--out", str(out), "--format", "csv"]
    )
    capsys.readouterr()
    assert code == 0
    lines = out.read_text().splitlines()
    assert lines[0] == "trial,distance"
    assert len(lines) == 6


def test_run_config_file_multiple_runs(tmp_path, capsys):
    config = tmp_path / "batch.jsonl"
    config.write_text(
        json.dumps({"experiment": "metric-suite"})
        + "\n"
        + json.dumps({"experiment": "otp-uniformity", "n": 2})
        + "\n"
    )
    assert main(["run", "--config", str(config)]) == 0
    out = capsys.readouterr().out
    assert "metric-suite: pass" in out
    assert "otp-uniformity: pass" in out


def test_run_rejects_name_plus_config(tmp_path):
    config = tmp_path / "cfg.jsonl"
    config.write_text(json.dumps({"experiment": "metric-suite"}) + "\n")
    with pytest.raises(SystemExit):
        main(["run", "metric-suite", "--config", str(config)])
    with pytest.raises(SystemExit):
        main(["run"])


def test_run_bad_config_file(tmp_path, capsys):
    config = tmp_path / "broken.jsonl"
    config.write_text("not json\n")
    assert main(["run", "--config", str(config)]) == 2
    assert "not JSON" in capsys.readouterr().err
    empty = tmp_path / "empty.jsonl"
    empty.write_text("\n")
    assert main(["run", "--config", str(empty)]) == 2


def test_money_mint_prints_a_serial(capsys):
    assert main(["money", "mint", "--n", "2", "--seed", "4"]) == 0
    record = json.loads(capsys.readouterr().out)
    assert record["n"] == 2
    assert len(record["serial"]) == 16


def test_money_mint_is_seed_deterministic(capsys):
    main(["money", "mint", "--n", "2", "--seed", "4"])
    first = capsys.readouterr().out
    main(["money", "mint", "--n", "2", "--seed", "4"])
    assert capsys.readouterr().out == first


def test_money_verify_genuine_accepts_with_certainty(capsys):
    assert main(["money", "verify", "--genuine", "--n", "2"]) == 0
    record = json.loads(capsys.readouterr().out)
    assert record["genuine"] is True
    assert record["accept_probability"] == pytest.approx(1.0, abs=1e-10)
    assert record["expected_overlap"] == pytest.approx(1.0, abs=1e-10)


def test_money_verify_random_candidate_matches_overlap(capsys):
    assert main(["money", "verify", "--n", "2", "--seed", "9"]) == 0
    record = json.loads(capsys.readouterr().out)
    assert record["genuine"] is False
    assert record["accept_probability"] == pytest.approx(
        record["expected_overlap"], abs=1e-10
    )


def test_money_attack_stays_within_budget(capsys):
    assert main(["money", "attack", "--n", "3", "--q", "6", "--seed", "2"]) == 0
    record = json.loads(capsys.readouterr().out)
    assert record["queries_used"] == 6
    assert 0.0 <= record["clone_fidelity"] <= 1.0
