from __future__ import annotations

import json
import subprocess
import sys

import pytest

from engelgroups.cli import main
from engelgroups.suite import run_suite, verify_group

from conftest import group


def run(capsys, *argv):
    code = main([*argv, "--no-timing"])
    out = capsys.readouterr()
    report = json.loads(out.out) if out.out else None
    return code, report, out.err


def test_header(capsys):
    code, rep, _ = run(capsys, "info", "--catalog", "s3")
    assert code == 0
    assert rep["schema"] == "1" and rep["tool"] == "engelgroups" and rep["command"] == "info"
    assert rep["group"]["order"] == 6
    assert "timing" not in rep


def test_info_s3(capsys):
    _, rep, _ = run(capsys, "info", "--catalog", "s3")
    r = rep["result"]
    assert r["solvable"] and not r["nilpotent"] and not r["abelian"]
    assert r["center_order"] == 1 and r["conjugacy_classes"] == 3


def test_info_trivial(capsys):
    code, rep, _ = run(capsys, "info", "--catalog", "c1")
    r = rep["result"]
    assert code == 0 and rep["group"]["order"] == 1
    assert r["abelian"] and r["nilpotent"] and r["nilpotency_class"] == 0


def test_classify_s4(capsys):
    code, rep, _ = run(capsys, "classify", "--catalog", "s4", "--threads", "2")
    assert code == 0
    r = rep["result"]
    hist = {}
    for e in r["elements"]:
        hist[e["nil_order"]] = hist.get(e["nil_order"], 0) + 1
    assert hist == {0: 1, 1: 3, 2: 8, 3: 12}
    assert len(r["fitting"]) == 4
    assert all(v["status"] == "pass" for v in r["verification"].values())


def test_classify_a5(capsys):
    code, rep, _ = run(capsys, "classify", "--catalog", "a5")
    assert code == 0
    els = rep["result"]["elements"]
    none = [e for e in els if e["nil_order"] == "none"]
    assert len(none) == 59
    assert all(e["strategy"] for e in none)
    assert els[0]["nil_order"] == 0 and els[0]["is_nil"]


def test_classify_abelian(capsys):
    _, rep, _ = run(capsys, "classify", "--catalog", "c6")
    els = rep["result"]["elements"]
    assert all(e["is_nil"] and e["engel_bound"] <= 1 for e in els)
    assert sorted(e["nil_order"] for e in els) == [0] + [1] * 5


@pytest.mark.parametrize("name, orders, semisimple", [
    ("s4", [1, 4, 12, 24], False), ("a5", [1], True), ("q8", [1, 8], False)])
def test_radical(capsys, name, orders, semisimple):
    code, rep, _ = run(capsys, "radical", "--catalog", name)
    r = rep["result"]
    assert code == 0
    assert r["series_orders"][:len(orders)] == orders
    assert r["semisimple"] == semisimple
    assert all(r["oracle_agreement"].values())


def test_radical_a5_terms(capsys):
    _, rep, _ = run(capsys, "radical", "--catalog", "a5")
    r = rep["result"]
    assert r["fitting_order"] == 1 and r["solvable_radical_order"] == 1


@pytest.mark.parametrize("argv, code", [
    (["--catalog", "q8", "--engel", "2"], 0),
    (["--catalog", "s3", "--tower", "1,2"], 0),
    (["--catalog", "s3", "--engel", "3"], 1),
    (["--catalog", "s4", "--word", "[[x1,y],y]"], 1),
    (["--catalog", "c6", "--word", "[x1,y]"], 0),
])
def test_check_identity(capsys, argv, code):
    got, rep, _ = run(capsys, "check-identity", *argv)
    assert got == code
    assert rep["result"]["verdict"] == ("holds" if code == 0 else "fails")


def test_check_identity_failure_has_witness(capsys):
    _, rep, _ = run(capsys, "check-identity", "--catalog", "s3", "--engel", "3")
    assert rep["result"].get("witness")


def test_check_identity_sequence(capsys, tmp_path):
    f = tmp_path / "seq.txt"
    f.write_text("# engel words\n[x1,y]\n[[x1,y],y]\n")
    code, rep, _ = run(capsys, "check-identity", "--catalog", "s3", "--sequence", str(f),
                       "--index", "1,2")
    assert code == 0 and rep["result"]["verdict"] == "holds"


@pytest.mark.parametrize("name", ["a5", "c1", "s4", "ut4_2"])
def test_verify(capsys, name):
    code, rep, _ = run(capsys, "verify", "--catalog", name)
    assert code == 0 and rep["result"]["passed"]


def test_verify_skips_are_reasoned(capsys):
    _, rep, _ = run(capsys, "verify", "--catalog", "a5")
    for c in rep["result"]["checks"].values():
        assert c["status"] in ("pass", "skipped")
        if c["status"] == "skipped":
            assert c["reason"]


@pytest.mark.parametrize("argv", [
    ["info"],
    ["info", "--catalog", "s3", "--input", "x.txt"],
    ["info", "--catalog", "nosuch"],
    ["info", "--input", "/nonexistent/file"],
    ["check-identity", "--catalog", "s3"],
    ["check-identity", "--catalog", "s3", "--word", "[x,"],
    ["check-identity", "--catalog", "s3", "--tower", "1,a"],
    ["info", "--catalog", "s6", "--max-order", "100"],
])
def test_input_errors(capsys, argv):
    code, rep, err = run(capsys, *argv)
    assert code == 2 and rep is None
    assert err.startswith("engelgroups: error:")


def test_malformed_file_reports_position(capsys, tmp_path):
    f = tmp_path / "bad.txt"
    f.write_text("(1 2 3)\n(1 2 x)\n")
    code, _, err = run(capsys, "info", "--input", str(f), "--format", "perm")
    assert code == 2 and "line 2" in err


def test_json_file_output(capsys, tmp_path):
    out = tmp_path / "r.json"
    code = main(["info", "--catalog", "d4", "--json", str(out)])
    assert code == 0 and capsys.readouterr().out == ""
    rep = json.loads(out.read_text())
    assert rep["group"]["order"] == 8 and rep["timing"]["seconds"] >= 0


def test_file_input(capsys, tmp_path):
    f = tmp_path / "q.txt"
    f.write_text("3\n0 1 2\n1 2 0\n2 0 1\n")
    code, rep, _ = run(capsys, "info", "--input", str(f))
    assert code == 0 and rep["group"]["backend"] == "cayley-table"
    assert rep["result"]["abelian"]


def test_suite_order_independent_of_threads():
    groups = [(n, group(n)) for n in ("s3", "q8", "a4", "d5", "a5")]
    assert run_suite(groups, threads=1) == run_suite(groups, threads=3)


def test_verify_group_fields():
    rep = verify_group("s4", group("s4"))
    assert rep["passed"] and rep["order"] == 24
    assert rep["checks"]["metabelian_tower"]["status"] == "skipped"
    assert rep["checks"]["product_containment"]["status"] == "pass"


def test_module_entry_point():
    p = subprocess.run([sys.executable, "-m", "engelgroups", "info", "--catalog", "c2",
                        "--no-timing"], capture_output=True, text=True)
    assert p.returncode == 0 and json.loads(p.stdout)["group"]["order"] == 2
