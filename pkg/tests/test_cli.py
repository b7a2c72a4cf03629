import json
import subprocess
import sys


def test_expand(run_cli):
    assert run_cli("expand", "f2*f6/f1^2", "--order", "4") == (0, "1 2 4 8 14\n", "")
    assert run_cli("expand", "1", "--order", "3")[1] == "1 0 0 0\n"
    code, out, _ = run_cli("expand", "f1", "--order", "3", "--mod", "2", "--json")
    assert code == 0 and json.loads(out) == {"ring": {"mod": 2}, "coeffs": ["1", "1", "1", "0"]}


def test_expand_parse_error(run_cli):
    code, out, err = run_cli("expand", "f1^")
    assert code == 2 and out == ""
    assert err.splitlines()[-2:] == ["  f1^", "     ^"]


def test_order_from_environment(run_cli, monkeypatch):
    monkeypatch.setenv("QDISSECT_ORDER", "2")
    assert run_cli("expand", "f1")[1] == "1 -1 -1\n"
    monkeypatch.setenv("QDISSECT_ORDER", "zero")
    assert run_cli("expand", "f1")[0] == 2


def test_oracle(run_cli):
    code, out, _ = run_cli("oracle", "--l", "3", "--nmax", "4")
    assert code == 0 and out.splitlines()[-1] == "4\t12"
    code, out, _ = run_cli("--json", "oracle", "--l", "0", "--nmax", "4")
    assert json.loads(out) == ["1", "2", "4", "8", "14"]


def test_check_theorem_1_2(run_cli):
    code, out, _ = run_cli("check", "--theorem", "1.2", "--budget", "10000", "--json")
    assert code == 0
    res = json.loads(out)["results"][0]
    assert res["status"] == "verified" and res["counterexamples"] == []


def test_check_fails_on_budget(run_cli):
    code, out, _ = run_cli("check", "--theorem", "1.1", "--budget", "30", "--json")
    # no instance fits, so nothing was verified
    assert code == 1
    assert json.loads(out)["results"][0]["status"] == "inconclusive"


def test_check_needs_a_target(run_cli):
    assert run_cli("check")[0] == 2


def test_replay(run_cli, tmp_path):
    code, out, _ = run_cli("replay", "scripts/eq12.qds")
    assert code == 0 and "FAIL" not in out
    bad = tmp_path / "bad.qds"
    bad.write_text("order 10\nassert f1^2 == f2\n")
    code, out, _ = run_cli("replay", str(bad))
    assert code == 1 and "first difference at q^1" in out
    broken = tmp_path / "broken.qds"
    broken.write_text("order 10\nassert f1^ == f2\n")
    code, _, err = run_cli("replay", str(broken))
    assert code == 2 and "line 2" in err
    assert run_cli("replay", str(tmp_path / "missing.qds"))[0] == 2


def test_qr(run_cli):
    code, out, _ = run_cli("qr", "--target", "5", "--mod", "12", "--odd")
    assert code == 0 and out.startswith("nonresidue: true")
    code, out, _ = run_cli("qr", "--target", "1", "--mod", "12", "--odd")
    assert code == 1 and out.startswith("nonresidue: false")


def test_catalog_export(run_cli, tmp_path):
    path = tmp_path / "cat.qds"
    assert run_cli("catalog", "--order", "200", "-o", str(path))[0] == 0
    assert run_cli("replay", str(path))[0] == 0


def test_usage_errors(run_cli):
    assert run_cli("bogus")[0] == 2
    assert run_cli("expand", "f1", "--order", "-3")[0] == 2
    assert run_cli("--jobs", "0", "scripts")[0] == 2


def test_parallel_output_matches_serial(run_cli):
    args = ("verify-identities", "--polys", "--order", "200", "--json")
    serial = json.loads(run_cli(*args)[1])["results"]
    parallel = json.loads(run_cli("--jobs", "3", *args)[1])["results"]
    strip = lambda rs: [{k: v for k, v in r.items() if k != "seconds"} for r in rs]
    assert strip(serial) == strip(parallel)
    assert [r["check"] for r in serial][:2] == ["identity:jacobi-cube", "identity:f1-over-f3cubed"]


def test_console_entry_point():
    out = subprocess.run([sys.executable, "-m", "qdissect.cli", "qr", "--target", "21",
                          "--mod", "36", "--odd"], capture_output=True, text=True)
    assert out.returncode == 0 and "nonresidue: true" in out.stdout
