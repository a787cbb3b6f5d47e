import hashlib
import io
import json
import subprocess
import sys

import pytest

from kfold_sidon.cli import run


def call(*argv, stdin=None):
    out, err = io.StringIO(), io.StringIO()
    if stdin is not None:
        old = sys.stdin
        sys.stdin = io.StringIO(stdin)
    try:
        code = run(list(argv), out, err)
    finally:
        if stdin is not None:
            sys.stdin = old
    return code, out.getvalue(), err.getvalue()


def test_construct_golden():
    code, out, _ = call("construct", "--p", "3", "--t", "1", "--k", "2")
    assert code == 0
    rep = json.loads(out)
    assert rep["set"] == [7] and rep["modulus"] == 8 and rep["size"] == 1


def test_verify_pass_and_fail():
    code, out, _ = call("verify", "--set", "1,6,7", "--modulus", "8", "--coeffs", "1")
    assert code == 0 and json.loads(out)["verdict"] is True
    code, out, _ = call("verify", "--set", "0,1,3", "--modulus", "7", "--coeffs", "1,2")
    assert code == 1
    v = json.loads(out)["violation"]
    assert v == {"equation": [1, -1, -2, 2], "assignment": [0, 1, 3, 0], "ambient": "Z_N", "modulus": 7}
    code, out, _ = call("verify", "--set", "1,2,5,11,19", "--limit", "19", "--k", "2")
    assert code == 1 and json.loads(out)["family"] == "kfold"


def test_bounds_csv():
    code, out, _ = call("bounds", "--N", "10000", "--k", "2", "--ck", "2", "--which", "thm12", "--format", "csv")
    assert code == 0
    lines = out.strip().splitlines()
    assert lines[0] == "name,mode,N,k,c_k,m,value,integer_cap"
    assert lines[1].startswith("thm12,paper_m,10000,2,2,841,")
    assert [l.split(",")[-1] for l in lines[1:]] == ["90", "90", "83"]


def test_bounds_json_all():
    code, out, _ = call("bounds", "--N", "21", "--k", "2")
    names = [r["name"] for r in json.loads(out)]
    assert code == 0 and names == ["group", "sidon_zn", "thm12", "thm12", "thm12"]


def test_construct_verify_round_trip(tmp_path):
    code, out, _ = call("construct", "--p", "2", "--t", "3", "--k", "2")
    path = tmp_path / "rep.json"
    path.write_text(out)
    code, vout, _ = call("verify", "--set-file", str(path))
    assert code == 0
    assert json.loads(vout)["coefficients"] == [1, 2]
    code, _, _ = call("verify", "--set-file", "-", stdin=out)
    assert code == 0


def test_set_file_schema(tmp_path):
    path = tmp_path / "s.json"
    path.write_text(json.dumps({"ambient": "interval", "modulus_or_limit": 7, "elements": [1, 2, 5, 7]}))
    assert call("verify", "--set-file", str(path), "--coeffs", "1")[0] == 0


def test_search_and_table():
    code, out, _ = call("search", "--N", "7", "--ambient", "interval")
    r = json.loads(out)
    assert code == 0 and r["optimum"] == 4 and r["witness"] == [1, 2, 5, 7] and r["proven_optimal"]
    code, out, _ = call("table", "--N-min", "7", "--N-max", "7")
    assert out.splitlines()[1] == "7,3,3,,1.134,proven,0 1 3"


@pytest.mark.parametrize(
    "argv",
    [
        ["verify", "--set", "0,1", "--modulus", "8", "--coeffs", "1,2"],  # gcd
        ["verify", "--set", "0,9", "--modulus", "8", "--coeffs", "1"],  # out of range
        ["verify", "--set", "0,1", "--coeffs", "1"],  # no ambient
        ["verify", "--set", "0,1", "--modulus", "7", "--limit", "7", "--coeffs", "1"],
        ["verify", "--set", "a,b", "--modulus", "7", "--coeffs", "1"],
        ["verify", "--set-file", "/nonexistent.json", "--coeffs", "1"],
        ["construct", "--p", "4", "--t", "1", "--k", "2"],
        ["construct", "--p", "2", "--t", "5", "--k", "2", "--M", "2", "--r", "3", "--i", "1"],
        ["bounds", "--N", "1", "--which", "group"],
        ["search", "--N", "8", "--k", "2"],
        ["table", "--N-min", "9", "--N-max", "3"],
        ["bogus"],
    ],
)
def test_bad_input_exit_2(argv):
    code, _, err = call(*argv)
    assert code == 2


def test_manifest_replay(tmp_path):
    man = tmp_path / "m.json"
    code, out, _ = call("--manifest", str(man), "search", "--N", "13", "--k", "1")
    assert code == 0
    m = json.loads(man.read_text())
    assert m["subcommand"] == "search" and m["parameters"]["N"] == 13
    assert "--manifest" not in m["argv"]
    assert set(m) >= {"version", "backend", "wall_clock_seconds", "output_sha256"}
    code, again, _ = call(*m["argv"])
    assert hashlib.sha256(again.encode()).hexdigest() == m["output_sha256"] == hashlib.sha256(out.encode()).hexdigest()


def test_console_entry_point():
    res = subprocess.run(
        [sys.executable, "-m", "kfold_sidon", "verify", "--set", "1,6,7", "--modulus", "8", "--coeffs", "1"],
        capture_output=True,
        text=True,
    )
    assert res.returncode == 0 and json.loads(res.stdout)["verdict"] is True
