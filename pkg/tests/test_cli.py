import json

import pytest

from fracvar.cli import run


def _run(capsys, *argv):
    code = run(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_variation_takagi(capsys):
    code, out, _ = _run(capsys, "variation", "--b", "2", "--weight", "power:1", "--wave",
                        "triangular", "--signs", "plus", "--p", "2", "--n-max", "10")
    assert code == 0
    rows = out.splitlines()[1:]
    for line in rows:
        n, v, _ = line.split(",")
        assert float(v) == pytest.approx(int(n) * 2.0 ** -int(n), rel=1e-12)
    assert len(rows) == 10


def test_regime_json(capsys):
    code, out, _ = _run(capsys, "regime", "--b", "2", "--weight", "power:0.5", "--wave",
                        "triangular")
    d = json.loads(out)
    assert code == 0 and d["regime"] == "Super" and d["beta"] == 0.5 and d["q"] == 2.0


def test_oracle_check(capsys):
    code, out, _ = _run(capsys, "oracle-check", "--b", "2", "--n", "8", "--p", "2",
                        "--weight", "power:1", "--wave", "triangular")
    assert code == 0 and out == "PASS rel_err<1e-10\n"


def test_exit_codes(capsys):
    assert _run(capsys, "nope")[0] == 64
    assert _run(capsys, "grid", "--bogus", "1")[0] == 64
    assert _run(capsys)[0] == 64
    assert _run(capsys, "grid", "--n", "40")[0] == 2
    assert _run(capsys, "regime", "--weight", "logplus:1")[0] == 1
    assert _run(capsys, "variation", "--regime-check", "--p", "3")[0] == 1
    assert _run(capsys, "ingest", "--input", "/nonexistent.csv")[0] == 1


def test_config_and_override(tmp_path, capsys):
    cfg = tmp_path / "c.json"
    cfg.write_text(json.dumps({"weight": "power:0.5", "n-max": 5, "p": 2}))
    _, out, _ = _run(capsys, "variation", "--config", str(cfg))
    assert len(out.splitlines()) == 6
    _, out, _ = _run(capsys, "variation", "--config", str(cfg), "--n-max", "3")
    assert out.splitlines()[-1].startswith("3,0.87")
    bad = tmp_path / "bad.json"
    bad.write_text(json.dumps({"colour": "red"}))
    assert _run(capsys, "grid", "--config", str(bad))[0] == 64


def test_out_file(tmp_path, capsys):
    target = tmp_path / "g.csv"
    assert _run(capsys, "grid", "--n", "3", "--out", str(target))[0] == 0
    assert target.read_text().startswith("k,n,t,f\n0,3,0,0.0\n")


def test_every_subcommand(tmp_path, capsys):
    grid = tmp_path / "g.csv"
    run(["grid", "--n", "8", "--out", str(grid)])
    cases = [
        ["eval", "--t", "1/4"],
        ["riesz", "--p", "2", "--n-max", "6"],
        ["index", "--weight", "power:0.5", "--n-max", "10"],
        ["zmoment", "--weight", "power:0.5", "--samples", "500", "--trunc-n", "20"],
        ["certify", "--weight", "power:0.5", "--pairs", "200", "--n", "6"],
        ["ingest", "--input", str(grid), "--p", "2", "--levels", "6", "--output", "json"],
    ]
    for argv in cases:
        code, out, err = _run(capsys, *argv)
        assert code == 0, (argv, err)
        assert out
