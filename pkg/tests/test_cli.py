import csv
import io
import json
import subprocess
import sys

import pytest

from hurwitzsums.cli import main
from hurwitzsums.hurwitz import hurwitz_table, load_table, save_table


def run(*argv):
    out = io.StringIO()
    code = main(list(argv), out=out)
    return code, out.getvalue()


@pytest.mark.parametrize("n,expected", [(0, "-1/12"), (23, "3"), (2, "0"), (3, "1/3"), (4, "1/2")])
def test_hurwitz(n, expected):
    assert run("hurwitz", str(n)) == (0, expected + "\n")


def test_hurwitz_negative():
    assert run("hurwitz", "--", "-1")[0] == 2


def test_sum():
    assert run("sum", "--n", "5", "--m", "2", "--c", "0") == (0, "6\n")
    assert run("sum", "--n", "5", "--m", "3", "--c", "1", "--plain") == (0, "1/2\n")
    code, text = run("sum", "--n", "7", "--m", "3", "--c", "1", "--format", "json")
    assert json.loads(text)["results"][0]["sum"] == "5"


def test_table_roundtrip(tmp_path):
    path = tmp_path / "h.txt"
    code, _ = run("table", "--nmax", "100", "--out", str(path))
    assert code == 0
    lines = path.read_text().splitlines()
    assert lines[0] == "HURWITZ12 1 100" and len(lines) == 102
    assert load_table(path) == hurwitz_table(100)


def test_verify_t3():
    code, text = run("verify", "t3", "--pmax", "10000")
    assert code == 0
    assert "checked 1229 primes, 0 failures" in text


@pytest.mark.parametrize("argv", [
    ("verify", "techprop", "--terms", "2000"),
    ("verify", "t5", "--nmax", "2000"),
    ("verify", "hurwitz-kronecker", "--nmax", "500"),
    ("verify", "trace7", "--pmax", "2000"),
    ("verify", "p42", "--pmax", "2000"),
    ("verify", "full", "--pmax", "2000"),
])
def test_verify_targets(argv):
    code, text = run(*argv)
    assert code == 0, text
    assert " 0 failures" in text


def test_verify_degenerate_range(capsys):
    code, text = run("verify", "t1", "--pmax", "4")
    assert code == 2 and text == ""
    assert "--pmax" in capsys.readouterr().err


def test_usage_errors():
    assert run("verify", "t9")[0] == 2
    assert run("scan", "--m", "6")[0] == 2
    assert run("hurwitz", "5", "--workers", "0")[0] == 2
    assert run()[0] == 2


def test_verify_failure_exit_code(tmp_path):
    # a cache whose entry for H(27) is off by one makes t1 fail at p = 7
    path = tmp_path / "bad.txt"
    t = hurwitz_table(400)
    save_table(t, path)
    lines = path.read_text().splitlines()
    lines[1 + 27] = f"27 {int(t.values12[27]) + 12}"
    path.write_text("\n".join(lines) + "\n")
    code, text = run("verify", "t1", "--pmax", "100", "--cache", str(path))
    assert code == 1
    assert "first failure: p=7" in text


def test_cache_reused(tmp_path):
    path = tmp_path / "c.txt"
    assert run("verify", "t2", "--pmax", "300", "--cache", str(path))[0] == 0
    assert load_table(path).n_max == 1200
    assert run("verify", "t2", "--pmax", "200", "--cache", str(path))[0] == 0
    assert load_table(path).n_max == 1200


def test_ec():
    code, text = run("ec", "--p", "5")
    assert code == 0 and text.startswith("p=5: 12 isomorphism classes")
    assert run("ec", "--p", "13", "--torsion", "2") == (0, "20\n")
    assert run("ec", "--p", "3")[0] == 2
    assert run("ec", "--p", "9")[0] == 2


@pytest.mark.parametrize("p", [11, 13, 17, 19])
def test_ec_json_total(p):
    code, text = run("ec", "--p", str(p), "--format", "json")
    rows = json.loads(text)["results"]
    assert sum(r["classes"] for r in rows) == 2 * p + {1: 6, 5: 2, 7: 4, 11: 0}[p % 12]
    assert all(r["p"] == p for r in rows)


def test_scan_csv():
    code, text = run("scan", "--m", "7", "--pmax", "20000", "--format", "csv")
    assert code == 0
    rows = list(csv.DictReader(io.StringIO(text)))
    assert list(rows[0]) == ["p_residue", "c", "alpha", "beta", "gamma", "status"]
    assert len(rows) == 24
    cell = {(r["p_residue"], r["c"]): r for r in rows}
    assert cell[("2", "0")]["status"] == "NO_PATTERN" and cell[("2", "0")]["alpha"] == ""
    assert (cell[("3", "1")]["alpha"], cell[("3", "1")]["beta"], cell[("3", "1")]["gamma"]) == ("1", "1", "4")


@pytest.mark.parametrize("argv", [
    ("ec", "--p", "7", "--format", "json"),
    ("scan", "--m", "5", "--pmax", "20000", "--format", "csv"),
    ("verify", "t6", "--pmax", "3000", "--format", "json"),
])
def test_deterministic(argv):
    assert run(*argv) == run(*argv)


def test_workers_do_not_change_output():
    one = run("verify", "full", "--pmax", "5000", "--format", "json")
    two = run("verify", "full", "--pmax", "5000", "--format", "json", "--workers", "2")
    assert one == two


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "hurwitzsums", "hurwitz", "23"], capture_output=True, text=True)
    assert proc.returncode == 0 and proc.stdout == "3\n"
