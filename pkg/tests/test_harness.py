"""Experiment runner and CLI: reproducibility, report structure, exit codes."""

import json

import pytest

from delchan.cli import main
from delchan.harness import (
    ExperimentConfig,
    analyze_csv,
    desk_scheme,
    load_config,
    report_json,
    run_end_to_end,
    run_experiment,
    run_single_codeword,
    run_transition,
    scheme_exact_probs,
    sweep_csv,
    worker_count,
)


def test_worker_count_env(monkeypatch):
    monkeypatch.delenv("DELCHAN_THREADS", raising=False)
    assert worker_count() == 1
    monkeypatch.setenv("DELCHAN_THREADS", "4")
    assert worker_count() == 4


def test_config_validation():
    with pytest.raises(ValueError):
        ExperimentConfig(mode="nonsense", trials=10, master_seed=0)
    with pytest.raises(ValueError):
        ExperimentConfig(mode="end_to_end", trials=0, master_seed=0)


def test_load_config(tmp_path):
    path = tmp_path / "exp.cfg"
    path.write_text("# comment\nmode=single_codeword\ntrials=50\nseed=9\ndesk=prc\n")
    cfg = load_config(path)
    assert cfg.mode == "single_codeword"
    assert cfg.trials == 50
    assert cfg.master_seed == 9
    assert cfg.desk == "prc"


def test_single_codeword_report(bdc_desk):
    rep = run_single_codeword(bdc_desk, 200, 3)
    assert rep["buffers_transmitted"] == 400
    assert rep["x_mean"] >= 0.0
    assert set(rep["error_events"]) == {
        "deleted_buffer", "spurious_buffer", "wrong_inner_decode",
    }
    assert rep["analytic"]["xi_m"] < rep["analytic"]["gamma_m_plus_p10"]


def test_end_to_end_report(bdc_desk):
    rep = run_end_to_end(bdc_desk, 30, 4)
    assert rep["successes"] + 0 <= 30
    assert rep["success_rate"] == rep["successes"] / 30


def test_transition_report(bdc_desk):
    rep = run_transition(bdc_desk, 5000, 5)
    for entry in rep["transitions"].values():
        assert 0.0 <= entry["empirical"] <= 1.0
        assert 0.0 <= entry["exact"] <= 1.0


def test_threaded_trials_match_sequential(bdc_desk, monkeypatch):
    monkeypatch.delenv("DELCHAN_THREADS", raising=False)
    seq = run_end_to_end(bdc_desk, 20, 6)
    monkeypatch.setenv("DELCHAN_THREADS", "4")
    par = run_end_to_end(bdc_desk, 20, 6)
    assert seq == par


def test_report_json_deterministic():
    cfg = ExperimentConfig(mode="end_to_end", trials=15, master_seed=42)
    assert report_json(run_experiment(cfg)) == report_json(run_experiment(cfg))


def test_scheme_exact_probs_channels(bdc_desk, prc_desk):
    b = scheme_exact_probs(bdc_desk)
    p = scheme_exact_probs(prc_desk)
    assert b.p10 == 0.3**bdc_desk.N1
    assert p.mode == b.mode == "exact"


def test_analyze_csv_structure():
    csv, failures = analyze_csv()
    lines = csv.strip().splitlines()
    assert len(lines) == 16  # header + 15 parameter sets
    assert lines[0].startswith("preset,p_or_lambda,P12,")
    assert failures == 2  # the two published-figure inconsistencies


def test_sweep_csv_structure():
    lines = sweep_csv().strip().splitlines()
    table_rows = [l for l in lines if l.startswith("table,")]
    grid_rows = [l for l in lines if l.startswith("grid,")]
    assert len(table_rows) == 11
    assert len(grid_rows) == 99
    assert len(lines) == 1 + 11 + 99


def test_cli_analyze_and_sweep(tmp_path, capsys):
    out = tmp_path / "analysis.csv"
    assert main(["analyze", "--out", str(out)]) == 1  # known reference mismatches
    assert out.read_text().startswith("preset,")
    out2 = tmp_path / "sweep.csv"
    assert main(["sweep", "--out", str(out2)]) == 0
    assert len(out2.read_text().strip().splitlines()) == 111


def test_cli_construct_encode_decode(tmp_path, capsys):
    out_dir = tmp_path / "sch"
    assert main(["construct", "--out", str(out_dir)]) == 0
    printed = capsys.readouterr().out
    assert "|C| = 77" in printed
    scheme_path = str(out_dir / "scheme.txt")
    bits_path = tmp_path / "msg.bits"
    assert main(["encode", "--config", scheme_path, "42", "--out", str(bits_path)]) == 0
    decoded = tmp_path / "msg.out"
    assert main([
        "decode", "--config", scheme_path, bits_path.read_text().strip(),
        "--out", str(decoded),
    ]) == 0
    assert decoded.read_text().strip() == "42"


def test_cli_simulate_deterministic(tmp_path):
    a = tmp_path / "a.json"
    b = tmp_path / "b.json"
    for out in (a, b):
        assert main(["simulate", "--trials", "15", "--seed", "7", "--out", str(out)]) == 0
    assert a.read_bytes() == b.read_bytes()
    report = json.loads(a.read_text())
    assert report["config"]["trials"] == 15


def test_cli_error_exit_codes(tmp_path):
    assert main(["decode", "--config", str(tmp_path / "missing.txt"), "1"]) == 2
    assert main(["decode", "--config", str(tmp_path / "missing.txt"), "abc"]) == 2
    assert main(["bogus-subcommand"]) == 2


def test_desk_scheme_buffer_variant():
    tight = desk_scheme("bdc", M_B=0.5)
    assert tight.params.buffer_threshold == 6
    assert tight.B == 18
