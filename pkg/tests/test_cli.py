"""CLI contract: flags, exit codes, deterministic table output."""
import json
import math

import pytest

from triwalk import tables
from triwalk.cli import run


def _run(capsys, argv):
    code = run(argv)
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def test_spectrum_order_one(capsys):
    code, out, err = _run(capsys, ["spectrum", "--N", "1", "--p", "1,2,3,4"])
    assert code == 0 and err == ""
    table = tables.loads(out, "csv")
    assert table.columns == ["s", "t", "x"]
    assert table.rows == [[0, 0, 0.0], [1, 0, 3.0], [0, 1, -7.0]]


def test_evolve_identity_probability(capsys):
    code, out, _ = _run(capsys, ["evolve", "--N", "3", "--p", "1,2,3,4",
                                 "--from", "0,0", "--to", "0,0", "--T", "0"])
    assert code == 0
    table = tables.loads(out, "csv")
    assert table.columns == ["k", "l", "re", "im", "probability"]
    assert table.rows[0][:2] == [0, 0]
    assert table.rows[0][4] == pytest.approx(1.0, abs=1e-12)


def test_evolve_full_table_unit_probability(capsys):
    code, out, _ = _run(capsys, ["evolve", "--N", "2", "--p", "1,2,3,4",
                                 "--from", "1,0", "--T", "0.7"])
    assert code == 0
    table = tables.loads(out, "csv")
    assert len(table.rows) == 6
    assert sum(table.column("probability")) == pytest.approx(1.0, abs=1e-10)


def test_evolve_scan(capsys):
    code, out, _ = _run(capsys, ["evolve", "--N", "2", "--p1", "1", "--root", "plus",
                                 "--from", "0,0", "--to", "1,1", "--times", "0,0.23,0.46"])
    assert code == 0
    table = tables.loads(out, "csv")
    assert table.columns == ["t", "probability"]
    assert len(table.rows) == 3
    assert table.rows[0][1] == pytest.approx(0.0, abs=1e-15)


def test_evolve_numeric_method_agrees(capsys):
    argv = ["evolve", "--N", "3", "--p", "1,2,3,4", "--from", "0,0", "--T", "0.9"]
    _, out_spec, _ = _run(capsys, argv)
    _, out_num, _ = _run(capsys, argv + ["--method", "numeric"])
    spec = tables.loads(out_spec, "csv")
    num = tables.loads(out_num, "csv")
    for a, b in zip(spec.rows, num.rows):
        assert a[:2] == b[:2]
        for x, y in zip(a[2:], b[2:]):
            assert x == pytest.approx(y, abs=1e-9)


def test_pst_binomial_distribution(capsys):
    code, out, _ = _run(capsys, ["pst", "--N", "2", "--p1", "1", "--root", "plus"])
    assert code == 0
    table = tables.loads(out, "csv")
    assert table.columns == ["k", "l", "probability", "reference", "deviation"]
    probs = table.column("probability")
    assert probs[0] == pytest.approx(0.25, abs=1e-8)
    assert probs[1] == pytest.approx(0.5, abs=1e-8)
    assert probs[2] == pytest.approx(0.25, abs=1e-8)
    assert max(table.column("deviation")) < 1e-8


def test_lightcone(capsys):
    code, out, _ = _run(capsys, ["lightcone", "--N", "4", "--p1", "1", "--root", "minus"])
    assert code == 0
    table = tables.loads(out, "csv")
    assert table.columns == ["n", "time", "max_violation"]
    assert table.rows[0][2] < 1e-8


def test_chain1d(capsys):
    code, out, _ = _run(capsys, ["chain1d", "--N", "6"])
    assert code == 0
    table = tables.loads(out, "csv")
    assert table.rows[0][0] == 6
    assert table.rows[0][1] == pytest.approx(math.pi, rel=1e-15)
    assert table.rows[0][2] >= 1.0 - 1e-9


def test_selftest_passes(capsys):
    code, out, _ = _run(capsys, ["selftest"])
    assert code == 0
    table = tables.loads(out, "csv")
    assert table.columns == ["name", "status", "measured", "threshold"]
    assert set(table.column("status")) == {"pass"}
    assert len(table.rows) >= 12


# --- error paths -------------------------------------------------------------

def test_degenerate_parameters_exit_one(capsys):
    code, out, err = _run(capsys, ["spectrum", "--N", "1", "--p", "1,2,2,4"])
    assert code == 1
    assert out == ""
    assert err.startswith("error:") and err.count("\n") == 1


def test_domain_error_exit_one(capsys):
    code, _, err = _run(capsys, ["evolve", "--N", "2", "--p", "1,2,3,4",
                                 "--from", "5,5", "--T", "1"])
    assert code == 1
    assert "outside" in err


def test_both_parameter_modes_rejected(capsys):
    code, _, err = _run(capsys, ["spectrum", "--N", "1", "--p", "1,2,3,4",
                                 "--p1", "1", "--root", "plus"])
    assert code == 1
    assert "not both" in err


def test_missing_parameters_rejected(capsys):
    code, _, err = _run(capsys, ["spectrum", "--N", "1"])
    assert code == 1


def test_pst_requires_transfer_mode(capsys):
    code, _, err = _run(capsys, ["pst", "--N", "2"])
    assert code == 1
    assert "--p1" in err


def test_unknown_flag_exit_one(capsys):
    code, _, err = _run(capsys, ["spectrum", "--N", "1", "--p", "1,2,3,4", "--bogus"])
    assert code == 1


def test_no_subcommand_exit_one(capsys):
    code, _, err = _run(capsys, [])
    assert code == 1


def test_bad_time_grid_exit_one(capsys):
    code, _, err = _run(capsys, ["evolve", "--N", "2", "--p", "1,2,3,4",
                                 "--from", "0,0", "--to", "1,0", "--times", "1.0,0.5"])
    assert code == 1
    assert "ascending" in err


# --- determinism, files, config ---------------------------------------------------

def test_byte_identical_reruns(capsys):
    argv = ["evolve", "--N", "4", "--p", "1.1,2.2,0.9,1.7", "--from", "0,0", "--T", "2.5"]
    _, first, _ = _run(capsys, argv)
    _, second, _ = _run(capsys, argv)
    assert first == second
    argv_json = argv + ["--format", "json"]
    _, j1, _ = _run(capsys, argv_json)
    _, j2, _ = _run(capsys, argv_json)
    assert j1 == j2


def test_output_file_round_trip(tmp_path, capsys):
    for fmt in ("csv", "json"):
        path = tmp_path / f"out.{fmt}"
        code, out, _ = _run(capsys, ["couplings", "--N", "3", "--p", "1,2,3,4",
                                     "--format", fmt, "--output", str(path)])
        assert code == 0 and out == ""
        table = tables.read_table(str(path))
        assert table.columns == ["i", "j", "I", "J", "B"]
        assert len(table.rows) == 10
        assert table.rows[0][:2] == [0, 0]


def test_config_file_defaults_and_flag_precedence(tmp_path, capsys):
    config = tmp_path / "run.json"
    config.write_text(json.dumps({"N": 1, "p": "1,2,3,4"}), encoding="utf-8")
    code, out, _ = _run(capsys, ["spectrum", "--config", str(config)])
    assert code == 0
    assert tables.loads(out, "csv").rows == [[0, 0, 0.0], [1, 0, 3.0], [0, 1, -7.0]]

    # explicit flag wins over the config value
    code, out, _ = _run(capsys, ["spectrum", "--config", str(config), "--N", "0"])
    assert code == 0
    assert tables.loads(out, "csv").rows == [[0, 0, 0.0]]


def test_config_unknown_key_rejected(tmp_path, capsys):
    config = tmp_path / "bad.json"
    config.write_text(json.dumps({"nope": 1}), encoding="utf-8")
    code, _, err = _run(capsys, ["spectrum", "--config", str(config)])
    assert code == 1
    assert "unknown config key" in err


# --- tolerance-failure exit code (wiring; numerics cannot trip it for real) -------

def test_pst_tolerance_failure_exits_two(monkeypatch, capsys):
    from triwalk import dynamics
    from triwalk.lattice import SiteIndex

    def broken(pst, n):
        return {SiteIndex(k, n - k): 0.0 for k in range(n + 1)}

    monkeypatch.setattr(dynamics, "pst_distribution", broken)
    code, out, _ = _run(capsys, ["pst", "--N", "2", "--p1", "1", "--root", "plus"])
    assert code == 2
    assert out != ""  # the table is still emitted for inspection


def test_selftest_failure_exits_two(monkeypatch, capsys):
    from triwalk import selftest as selftest_mod
    from triwalk.service import handlers

    def broken():
        return [selftest_mod.CheckResult(name="forced-failure", measured=1.0, threshold=0.0)]

    monkeypatch.setattr(handlers.selftest, "run_selftest", broken)
    code, out, _ = _run(capsys, ["selftest"])
    assert code == 2
    assert "fail" in out
