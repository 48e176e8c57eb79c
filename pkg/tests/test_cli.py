import json
import subprocess
import sys

import pytest

from wlpack.cli import main
from wlpack.graphio import read_graph


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_gen_and_wl(tmp_path, capsys):
    path = tmp_path / "c6.txt"
    assert run(capsys, "gen", "cycle", "6", "-o", str(path))[0] == 0
    assert read_graph(path).m == 6
    code, out, _ = run(capsys, "wl", str(path), "cycle:3", "-k", "1")
    assert code == 1 and out.startswith("DISTINGUISHED")
    code, out, _ = run(capsys, "wl", "shrikhande", "rook4", "-k", "2")
    assert code == 0 and out.splitlines()[0] == "EQUIVALENT"
    code, out, _ = run(capsys, "gen", "paley", "13", "--dot")
    assert code == 0 and out.startswith("graph")


def test_lp(tmp_path, capsys):
    path = tmp_path / "k3.lp"
    path.write_text("max: 1 1 1\nrow: 1 0 1 <= 1\nrow: 1 1 0 <= 1\nrow: 0 1 1 <= 1\n")
    code, out, _ = run(capsys, "lp", str(path), "--solution")
    assert code == 0 and out.splitlines()[0] == "3/2"
    assert out.splitlines()[1] == "x: 1/2 1/2 1/2"
    path.write_text("max: 1\n")
    assert run(capsys, "lp", str(path))[1].strip() == "unbounded"


def test_pack(capsys):
    code, out, _ = run(capsys, "pack", "K3", "rook4", "--mode", "edge", "--integral")
    doc = json.loads(out)
    assert code == 0 and (doc["value_num"], doc["value_den"]) == (8, 1)
    assert len(doc["witness"]) == 8
    doc = json.loads(run(capsys, "pack", "K2", "cycle:5")[1])
    assert (doc["value_num"], doc["value_den"]) == (5, 2)


def test_errors_exit_two(tmp_path, capsys):
    code, _, err = run(capsys, "wl", "cycle:2", "cycle:3")
    assert code == 2 and err.startswith("error:")
    bad = tmp_path / "bad.txt"
    bad.write_text("2 1\n0 0\n")
    assert run(capsys, "wl", str(bad), "cycle:3")[0] == 2
    assert run(capsys, "gen", "dodecahedron")[0] == 2
    assert run(capsys, "exp", "run", "unknown")[0] == 2


def test_exp_run(tmp_path, capsys):
    cfg = tmp_path / "run.cfg"
    cfg.write_text("max_tuples = 10\n")
    code, out, _ = run(capsys, "exp", "run", "tensor-square-wl2", "--config", str(cfg),
                       "--out", str(tmp_path / "out"))
    assert code == 0 and out.startswith("SKIPPED")
    code, out, _ = run(capsys, "exp", "run", "separation-2c3-c6", "--out", str(tmp_path / "o"))
    assert code == 0 and (tmp_path / "o" / "separation-2c3-c6.json").exists()
    assert (tmp_path / "o" / "summary.csv").exists()


def test_console_module_runs():
    proc = subprocess.run([sys.executable, "-m", "wlpack.cli", "wl", "cycle:6", "cycle:6"],
                          capture_output=True, text=True)
    assert proc.returncode == 0 and "EQUIVALENT" in proc.stdout
