import json
import subprocess
import sys

import pytest

from majorder.cli import main, parse_vector


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def records(text):
    return [json.loads(line) for line in text.splitlines() if line.strip()]


@pytest.mark.parametrize("argv,code,check", [
    (["rel", "L", "--x", "15,2,2", "--y", "9,9,1"], 0, lambda r: r["verdict"] == "holds"),
    (["rel", "w", "--x", "15,2,2", "--y", "9,9,1"], 1, lambda r: r["witness"] == 3),
    (["rel", "F", "--x", "1,1", "--y", "2,0"], 1, lambda r: r["witness"] == [2, 1]),
    (["rel", "E", "--x", "15,2,2", "--y", "9,9,1"], 0, lambda r: r["kind"] == "E"),
    (["rel", "maj", "--x", "2,0", "--y", "1,1"], 0, lambda r: r["verdict"] == "holds"),
    (["rel", "1", "--x", "1,1", "--y", "2,0"], 1, lambda r: r["witness"] == 0),
    (["rel", "F", "--x", "15,2,2", "--y", "9,9,1", "--rmax", "8"], 0,
     lambda r: r["truncation"] == 8),
    (["water", "--x", "3,1", "--volume", "2", "--mode", "raw"], 0,
     lambda r: r["data"]["c"] == 3 and r["data"]["ztilde"] == [0, 2] and r["data"]["sup"] == 9),
    (["identity", "--n", "2", "--r", "2", "--seed", "7"], 0, lambda r: r["data"]["exact"] is True),
    (["cone", "--x", "3,2,1", "--B", "1,1,1/2"], 1, lambda r: r["witness"] == ["coefficient", "3"]),
    (["cone", "--x", "3,2,1", "--k", "3", "--r", "2"], 0, lambda r: r["verdict"] == "holds"),
    (["legendre", "--x", "2,1", "--lam", "1", "--t", "0"], 0,
     lambda r: abs(r["data"]["t_values"][0]["I1"] - 1.5) < 1e-12),
])
def test_exit_code_matrix(capsys, argv, code, check):
    got, out, _ = run(capsys, *argv, "--no-timestamp")
    assert got == code
    rec = records(out)[-1]
    assert rec["command"] == argv[0]
    assert check(rec)


@pytest.mark.parametrize("argv", [
    ["rel", "L", "--x", "1,a", "--y", "1,2"],
    ["rel", "L", "--x", "1,2", "--y", "1"],
    ["rel", "L", "--x", "-1,2", "--y", "1,1"],
    ["rel", "Q", "--x", "1", "--y", "1"],
    ["identity", "--n", "5", "--r", "2"],
    ["scan", "nonsense"],
    ["water", "--x", "1,2", "--volume", "-1"],
])
def test_errors_exit_2(capsys, argv):
    code, _, err = run(capsys, *argv)
    assert code == 2
    assert err


def test_rationals_parsed_exactly():
    assert parse_vector("1/3,0.1,2") == (parse_vector("1/3")[0], parse_vector("1/10")[0], 2)


def test_spectra_report(capsys):
    code, out, _ = run(capsys, "spectra", "--N", "4", "--signs", "+--+", "--dim", "2",
                       "--no-timestamp")
    rep = records(out)[0]["data"]["reports"][0]
    assert code == 0
    assert rep["x"] == pytest.approx([7, 1]) and rep["y"] == pytest.approx([5, 3])


def test_spectra_csv(capsys):
    code, out, _ = run(capsys, "spectra", "--N", "3", "--dim", "2", "--format", "csv")
    lines = out.strip().splitlines()
    assert lines[0] == "pattern,dim,relation,verdict,margin"
    assert len(lines) == 1 + 4 * 4


def test_determinism_and_timestamp(capsys):
    argv = ["scan", "L_not_w", "--n", "3", "--samples", "300", "--workers", "1"]
    _, a, _ = run(capsys, *argv, "--no-timestamp")
    _, b, _ = run(capsys, *argv, "--no-timestamp")
    assert a == b
    _, c, _ = run(capsys, *argv)
    assert "timestamp" in records(c)[0]
    assert "timestamp" not in records(a)[0]


def test_scan_worker_count_does_not_change_findings(capsys):
    base = ["scan", "F_not_maj", "--n", "3", "--samples", "400", "--no-timestamp"]
    _, a, _ = run(capsys, *base, "--workers", "1")
    _, b, _ = run(capsys, *base, "--workers", "2")
    strip = [{k: v for k, v in r.items() if k != "config"} for r in records(a)]
    strip_b = [{k: v for k, v in r.items() if k != "config"} for r in records(b)]
    assert strip == strip_b
    assert "summary" in records(a)[-1]


def test_seed_from_environment(capsys, monkeypatch):
    monkeypatch.setenv("MAJORDER_SEED", "41")
    _, out, _ = run(capsys, "identity", "--n", "1", "--r", "1", "--no-timestamp")
    assert records(out)[0]["config"]["seed"] == 41


def test_output_file(tmp_path, capsys):
    path = tmp_path / "out.json"
    code, out, _ = run(capsys, "rel", "L", "--x", "1", "--y", "2", "--output", str(path))
    assert code == 0 and out == ""
    assert records(path.read_text())[0]["verdict"] == "holds"


def test_console_entry_point():
    res = subprocess.run([sys.executable, "-m", "majorder.cli", "rel", "w", "--x", "15,2,2",
                          "--y", "9,9,1"], capture_output=True, text=True)
    assert res.returncode == 1
