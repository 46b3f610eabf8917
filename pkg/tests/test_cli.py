import json
import subprocess
import sys

import pytest

from jordangeo import checks
from jordangeo.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def _strip_elapsed(report: dict) -> dict:
    for c in report["checks"]:
        c.pop("elapsed_ms")
    return report


def test_example_pg_run_exits_zero(capsys):
    code, out, _ = run(capsys, "verify", "--ring", "Q", "--target", "gras:2x2", "--checks", "pg1,pg2",
                       "--samples", "100", "--seed", "42")
    assert code == 0
    assert "all checks passed" in out


def test_bad_modulus_is_config_error(capsys):
    code, _, err = run(capsys, "verify", "--ring", "Zmod:3", "--target", "gras:1x1")
    assert code == 2
    assert "modulus must make 2 and 3 units" in err


@pytest.mark.parametrize("argv", [
    ["verify", "--ring", "R", "--target", "gras:1x1"],
    ["verify", "--ring", "Q", "--target", "nope:3"],
    ["verify", "--ring", "Q", "--target", "gras:1x1", "--checks", "pg9"],
    ["verify", "--ring", "Q", "--target", "gras:1x1", "--checks", "ljp1"],
    ["verify", "--ring", "Q", "--target", "rect:1x2", "--checks", "lts"],
    ["verify", "--ring", "Q"],
    ["verify", "--ring", "Q", "--target", "gras:1x1", "--samples", "0"],
    ["verify", "--ring", "Q", "--target", "gras:1x1", "--seed", "-1"],
    ["frobnicate"],
])
def test_config_errors_exit_two(capsys, argv):
    code, _, _ = run(capsys, *argv)
    assert code == 2


def test_enumerate_lists_six_points(capsys, tmp_path):
    out_file = tmp_path / "r.json"
    code, out, _ = run(capsys, "verify", "--ring", "Zmod:5", "--target", "gras:1x1", "--checks", "enumerate",
                       "--out", str(out_file))
    assert code == 0
    assert "enumerate: 6 points" in out
    report = json.loads(out_file.read_text())
    details = report["checks"][0]["details"]
    assert details["points"] == 6 and len(details["point_list"]) == 6


def test_report_shape_and_determinism(capsys):
    argv = ["verify", "--ring", "Zmod:7", "--target", "sym:2", "--samples", "5", "--seed", "7", "--json"]
    code1, out1, _ = run(capsys, *argv)
    code2, out2, _ = run(capsys, *argv)
    assert code1 == code2 == 0
    r1, r2 = json.loads(out1), json.loads(out2)
    assert r1["schema"] == 1 and r1["passed"]
    assert r1["config"] == {"ring": "Zmod:7", "target": "sym:2", "checks": r1["config"]["checks"], "samples": 5,
                            "seed": 7}
    for c in r1["checks"]:
        assert set(c) >= {"name", "target", "ring", "samples", "passed", "failed", "witnesses", "seed", "elapsed_ms"}
        assert (c["failed"] == 0) == (c["witnesses"] == [])
    a, b = _strip_elapsed(r1), _strip_elapsed(r2)
    assert json.dumps(a, sort_keys=True) == json.dumps(b, sort_keys=True)


def test_report_in_registry_order(capsys):
    code, out, _ = run(capsys, "verify", "--target", "full:2", "--checks", "lts,ljp1", "--samples", "3", "--json")
    assert code == 0
    assert [c["name"] for c in json.loads(out)["checks"]] == ["ljp1", "lts"]


def test_parallel_jobs_match_serial(capsys):
    base = ["verify", "--ring", "Q", "--target", "gras:1x2", "--checks", "pg1,pg2,chart", "--samples", "5",
            "--json"]
    _, serial, _ = run(capsys, *base)
    _, parallel, _ = run(capsys, *base, "--jobs", "2")
    assert _strip_elapsed(json.loads(serial)) == _strip_elapsed(json.loads(parallel))


def test_list_sorted_with_anchors(capsys):
    code, out, _ = run(capsys, "verify", "--list")
    lines = out.strip().splitlines()
    assert code == 0
    names = [line.split(" — ")[0] for line in lines]
    assert names == sorted(names) == sorted(checks.REGISTRY)
    assert any(line.startswith("pg2 — ") and "(PG2)" in line for line in lines)
    code2, out2, _ = run(capsys, "verify", "--list")
    assert out2 == out


@pytest.mark.parametrize("name", sorted(checks.REGISTRY))
def test_every_check_runs_on_its_example(capsys, name):
    ring, target = checks.REGISTRY[name].example
    code, out, _ = run(capsys, "verify", "--ring", ring, "--target", target, "--checks", name, "--samples", "3",
                       "--json")
    assert code == 0, out
    report = json.loads(out)
    assert report["checks"][0]["name"] == name and report["checks"][0]["passed"] > 0


def test_failure_exit_code_and_witness_cap(monkeypatch, capsys):
    from jordangeo.geometry import laws

    real = laws.check_pg1
    monkeypatch.setitem(checks.REGISTRY, "pg1", checks.REGISTRY["pg1"].__class__(
        "pg1", "mutated", "geometry", lambda G, n, s: real(G, n, s, pi=laws.wrong_pi), ("Q", "gras:1x2")))
    code, out, _ = run(capsys, "verify", "--target", "gras:1x2", "--checks", "pg1", "--samples", "40", "--json")
    assert code == 1
    rep = json.loads(out)["checks"][0]
    assert rep["failed"] > 0 and 0 < len(rep["witnesses"]) <= 10


def test_tkk_subcommand(capsys):
    code, out, _ = run(capsys, "tkk", "--target", "rect:2x2")
    assert code == 0
    s = json.loads(out)
    assert s["dims"] == [4, 7, 4] and s["total"] == 15
    assert s["grading"]["pass"] and s["jacobi"]["pass"] and s["recover"]["pass"]


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "jordangeo", "verify", "--list"], capture_output=True, text=True)
    assert proc.returncode == 0 and "pg1" in proc.stdout
