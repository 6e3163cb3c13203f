import json
import subprocess
import sys
from importlib import resources

import pytest

from hallforge.cli import REGISTRY, Context, ConfigError, list_checks, main, run_config
from hallforge.repfield import a2_dict

BUNDLED = sorted(
    p.name[:-5] for p in resources.files("hallforge.scenarios").iterdir() if p.name.endswith(".json")
)


def _run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_list_checks(capsys):
    code, out, _ = _run(capsys, "list-checks")
    lines = out.strip().splitlines()
    assert code == 0
    assert len(lines) >= 20
    assert any(l.startswith("reineke_inverse") for l in lines)
    assert "dilog_identity a0a1=3" in out
    assert lines == list_checks()


def test_every_check_has_an_anchor():
    for spec in REGISTRY.values():
        assert spec.anchor and spec.kinds


@pytest.mark.parametrize("name", BUNDLED)
def test_bundled_configs_pass(name, capsys):
    code, out, _ = _run(capsys, "run", name, "--no-timing")
    report = json.loads(out)
    assert code == 0, [c for c in report["checks"] if c["status"] != "pass"]
    assert report["summary"]["fail"] == 0
    assert len(report["checks"]) == len(report["scenario"]["checks"])


def test_a2_pentagon_config(tmp_path, capsys):
    out = tmp_path / "report.json"
    code, text, _ = _run(capsys, "run", "a2_pentagon.json", "--out", str(out))
    assert code == 0
    report = json.loads(out.read_text())
    assert [c["status"] for c in report["checks"]] == ["pass"] * 4
    assert all(isinstance(c["elapsed"], float) for c in report["checks"])
    assert "4 pass" in text


def test_reports_are_byte_stable_and_parallel_agrees(tmp_path):
    cfg = json.loads(resources.files("hallforge.scenarios").joinpath("A2.json").read_text())
    from hallforge.cli import dump_report

    a = dump_report(run_config(cfg, timing=False)[0])
    b = dump_report(run_config(cfg, timing=False)[0])
    c = dump_report(run_config(cfg, parallel=True, timing=False)[0])
    assert a == b == c


def test_malformed_config_exits_2(tmp_path, capsys):
    bad = tmp_path / "bad.json"
    bad.write_text('{"kind": "quiver", ')
    code, _, err = _run(capsys, "run", str(bad))
    assert code == 2 and "config error" in err


@pytest.mark.parametrize("cfg, msg", [
    ({"kind": "nope", "checks": ["reineke_inverse"]}, "unknown kind"),
    ({"kind": "quiver", "scenario": "A2", "truncation": [2, 2], "checks": ["no_such_check"]}, "unknown check"),
    ({"kind": "quiver", "scenario": "A2", "truncation": [2], "checks": ["reineke_inverse"]}, "truncation"),
    ({"kind": "quiver", "scenario": "A2", "truncation": [2, 2], "checks": ["dilog_identity"]}, "does not apply"),
    ({"kind": "quiver", "scenario": "A2", "q_mode": "symbolic", "truncation": [2, 2],
      "checks": ["reineke_inverse"]}, "symbolic"),
    ({"kind": "torus", "a0": 2, "a1": 1, "checks": ["dilog_identity"]}, "symmetrizable"),
    ({"kind": "valued-rank2", "d": [1, 1], "euler": [[1, 0], [-1, 1]], "checks": ["finite_type"]}, "source order"),
    ({"kind": "quiver", "scenario": "A2", "truncation": [2, 2], "checks": []}, "non-empty"),
])
def test_invalid_configs(tmp_path, capsys, cfg, msg):
    path = tmp_path / "cfg.json"
    path.write_text(json.dumps(cfg))
    code, _, err = _run(capsys, "run", str(path))
    assert code == 2
    assert msg in err
    with pytest.raises(ConfigError):
        Context(cfg)


def test_cap_violation_is_skipped(tmp_path, capsys):
    path = tmp_path / "cap.json"
    path.write_text(json.dumps({"kind": "quiver", "scenario": "A2", "truncation": [9, 9],
                                "checks": ["reineke_inverse", "well_known"]}))
    code, out, _ = _run(capsys, "run", str(path), "--no-timing")
    report = json.loads(out)
    assert code == 0
    first, second = report["checks"]
    assert first["status"] == "skipped" and "cap" in first["details"]["reason"]
    assert second["status"] == "pass"


def test_precondition_is_skipped(tmp_path, capsys):
    path = tmp_path / "pre.json"
    path.write_text(json.dumps({"kind": "quiver", "scenario": "A3", "truncation": [1, 1, 1],
                                "checks": [{"name": "integration_homomorphism"}]}))
    code, out, _ = _run(capsys, "run", str(path), "--no-timing")
    rec = json.loads(out)["checks"][0]
    assert code == 0 and rec["status"] == "skipped" and "rank" in rec["details"]["reason"]


def test_failing_check_exits_1(tmp_path, capsys):
    path = tmp_path / "fail.json"
    path.write_text(json.dumps({"kind": "quiver", "scenario": "A2", "truncation": [2, 2], "checks": [
        {"name": "exp_sequence", "options": {"lhs": ["S1", "S0"], "rhs": ["S0", "S1"]}}]}))
    code, out, _ = _run(capsys, "run", str(path), "--no-timing")
    assert code == 1
    assert json.loads(out)["checks"][0]["status"] == "fail"


def test_internal_inconsistency_exits_3(tmp_path, capsys):
    d = a2_dict(2)
    d["indecomposables"] = d["indecomposables"][:2]  # E is missing
    d.update(truncation=[1, 1], checks=["riedtmann"])
    path = tmp_path / "broken.json"
    path.write_text(json.dumps(d))
    code, out, _ = _run(capsys, "run", str(path), "--no-timing")
    assert code == 3
    assert "incomplete" in json.loads(out)["checks"][0]["details"]["error"]


def test_dilog_command(capsys):
    code, out, _ = _run(capsys, "dilog", "--a0", "3", "--a1", "1", "--d0", "1", "--d1", "3", "--order", "8")
    rep = json.loads(out)
    assert code == 0 and rep["status"] == "pass" and rep["case"] == 3
    code, out, _ = _run(capsys, "dilog", "--a0", "2", "--a1", "1", "--d0", "2", "--d1", "4",
                        "--order", "5", "--relation", "product")
    rep = json.loads(out)
    assert code == 1 and rep["first_failing_degree"] == 2
    code, _, err = _run(capsys, "dilog", "--a0", "2", "--a1", "1")
    assert code == 2


def test_hall_number_command(capsys):
    code, out, _ = _run(capsys, "hall-number", "--scenario", "A2", "--M", "S1", "--N", "S0", "--K", "E")
    assert code == 0 and json.loads(out)["F"] == 1
    code, out, _ = _run(capsys, "hall-number", "--scenario", "jordan", "--M", "1", "--N", "1", "--K", "1,1", "--p", "3")
    assert json.loads(out)["F"] == 4
    code, _, err = _run(capsys, "hall-number", "--scenario", "A2", "--M", "X", "--N", "S0", "--K", "E")
    assert code == 2


def test_console_script_entry_point():
    res = subprocess.run([sys.executable, "-m", "hallforge.cli", "list-checks"], capture_output=True, text=True)
    assert res.returncode == 0 and "riedtmann" in res.stdout
