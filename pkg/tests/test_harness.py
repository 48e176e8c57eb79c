import csv
import json
from fractions import Fraction

import pytest

from wlpack.errors import InvalidParameterError, ParseError
from wlpack.harness import (REGISTRY, HarnessConfig, exit_code, run_all, run_experiment,
                            summary_csv)

FAST = ("separation-2c3-c6", "matching-ratio-cycle", "vertex-cover-pair", "uncovered-edges",
        "fano-freeness", "permutation-robustness")


def test_ratio_example():
    r = run_experiment("ratio-shrikhande-rook")
    values = dict(r.computed)
    assert values["wl2_equivalent"] is True
    assert (values["rho_S"], values["rho_R"]) == (16, 8)
    assert values["rho_f_S"] == values["rho_f_R"] == 16
    assert r.passed


def test_matching_ratio_example():
    r = run_experiment("matching-ratio-cycle", s=2)
    values = dict(r.computed)
    assert values["wl1_equivalent"] is True
    assert values["nu_f_G"] == values["nu_f_H"] == 6
    assert (values["nu_G"], values["nu_H"]) == (6, 4)
    assert values["ratio"] == Fraction(3, 2)
    assert r.passed and r.run_name == "matching-ratio-cycle-s2"


def test_unknown_experiment():
    with pytest.raises(InvalidParameterError):
        run_experiment("unknown")
    with pytest.raises(InvalidParameterError):
        run_all(HarnessConfig(experiments=("unknown",)), write=False)


def test_reports_carry_provenance_and_claims():
    for r in run_all(HarnessConfig(experiments=FAST), write=False):
        doc = json.loads(r.to_json())
        assert doc["claim"] and doc["expected"]
        assert {e["provenance"] for e in doc["expected"]} <= {"claimed", "derived", "trivial"}
        assert "runtime_ms" not in doc


def test_reports_are_byte_identical(tmp_path):
    def run(out):
        run_all(HarnessConfig(experiments=FAST, output_dir=str(out)))
        return {p.name: p.read_bytes() for p in out.glob("*.json")}

    a, b = run(tmp_path / "a"), run(tmp_path / "b")
    assert a == b and len(a) >= len(FAST)


def test_rationals_serialize_as_strings():
    doc = json.loads(run_experiment("matching-ratio-cycle", s=1).to_json())
    ratio = next(c["value"] for c in doc["computed"] if c["name"] == "ratio")
    assert ratio == "3/2"


def test_tuple_cap_skips_with_reason(tmp_path):
    cfg = HarnessConfig(max_tuples=10, experiments=("tensor-square-wl2", "separation-2c3-c6"),
                        output_dir=str(tmp_path))
    reports = run_all(cfg)
    skipped = [r for r in reports if r.status == "skipped"]
    assert [r.experiment_id for r in skipped][0] == "tensor-square-wl2"
    assert all(r.reason for r in skipped)
    rows = list(csv.DictReader((tmp_path / "summary.csv").open()))
    assert any(row["key_values"].startswith("skipped:") for row in rows)
    assert exit_code(reports) == 0


def test_empty_selection(tmp_path):
    reports = run_all(HarnessConfig(experiments=(), output_dir=str(tmp_path)))
    assert reports == [] and exit_code(reports) == 0
    assert (tmp_path / "summary.csv").read_text() == \
        "experiment_id,passed,runtime_ms,key_values\n"


def test_failed_report_sets_exit_code():
    r = run_experiment("separation-2c3-c6")
    r.status, r.passed = "failed", False
    assert exit_code([r]) == 1
    assert summary_csv([r]).splitlines()[1].split(",")[1] == "false"


def test_config_parsing(tmp_path):
    cfg = HarnessConfig.parse("# caps\nmax_tuples = 100\nexperiments = a, b\nparallel = yes\n")
    assert cfg.max_tuples == 100 and cfg.experiments == ("a", "b") and cfg.parallel
    path = tmp_path / "c.cfg"
    path.write_text("node_limit=7\n")
    assert HarnessConfig.load(path).node_limit == 7
    for text, line in (("max_tuples 3", 1), ("\nseed = x", 2), ("colour = red", 1),
                       ("parallel = maybe", 1)):
        with pytest.raises(ParseError) as info:
            HarnessConfig.parse(text)
        assert info.value.line == line
    with pytest.raises(InvalidParameterError):
        HarnessConfig(node_limit=0)


@pytest.mark.slow
def test_full_registry_passes(tmp_path):
    reports = run_all(HarnessConfig(output_dir=str(tmp_path), parallel=True))
    assert {r.experiment_id for r in reports} == set(REGISTRY)
    failing = [r.run_name for r in reports if r.status != "passed"]
    assert failing == [] and exit_code(reports) == 0
    assert len(list(tmp_path.glob("*.json"))) == len(reports)
