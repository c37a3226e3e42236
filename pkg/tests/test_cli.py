import json
import subprocess
import sys

import pytest

from milnorhomfly import cli
from milnorhomfly import StringLinkWord, rhs_main2

HOPF = [{"c": "1", "t": 1, "z": -1}, {"c": "-1", "t": 3, "z": -1}, {"c": "1", "t": 1, "z": 1}]


def run(capsys, *argv):
    code = cli.main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def run_json(capsys, *argv):
    code, out, err = run(capsys, *argv)
    return code, json.loads(out) if out.strip() else None


def test_homfly_word(capsys):
    code, data = run_json(capsys, "homfly", "--word", "s1 s1", "--closure", "trace")
    assert code == 0 and data == HOPF
    code, data = run_json(capsys, "homfly", "--word", "s1 s1", "--engine", "pd")
    assert data == HOPF


def test_homfly_text(capsys):
    code, out, _ = run(capsys, "homfly", "--word", "s1 s1 s1", "--text")
    assert out.strip() == "2*t^2 - t^4 + t^2*z^2"


def test_homfly_fusion(capsys):
    code, data = run_json(capsys, "homfly", "--word", "A13", "--closure", "fusion", "--retain", "13")
    assert code == 0 and data == [{"c": "1", "t": 0, "z": 0}]
    code, data = run_json(capsys, "homfly", "--word", "A13", "--n", "4", "--closure", "fusion", "--retain", "")
    assert data == [{"c": "1", "t": 0, "z": 0}]


def test_homfly_pd_file(capsys, tmp_path):
    code, data = run_json(capsys, "model", "--Kmn", "1", "1")
    assert code == 0 and data["n_components"] == 1 and len(data["crossings"]) == 4
    f = tmp_path / "k.json"
    f.write_text(json.dumps(data))
    code, poly = run_json(capsys, "homfly", "--pd", str(f))
    assert code == 0
    assert {(r["t"], r["z"]): r["c"] for r in poly} == {(2, 0): "2", (4, 0): "-1", (2, 2): "1"}


def test_homfly_bad_inputs(capsys, tmp_path):
    assert run(capsys, "homfly")[0] == 2
    assert run(capsys, "homfly", "--word", "s1", "--pd", "x.json")[0] == 2
    assert run(capsys, "homfly", "--word", "q7")[0] == 2
    assert run(capsys, "homfly", "--pd", str(tmp_path / "missing.json"))[0] == 2
    bad = tmp_path / "bad.json"
    bad.write_text(json.dumps({"n_components": 3, "crossings": [], "signs": [], "free_loops": 1}))
    assert run(capsys, "homfly", "--pd", str(bad))[0] == 2
    assert run(capsys, "nosuchcommand")[0] == 2


def test_milnor(capsys):
    code, data = run_json(capsys, "milnor", "--word", "A12 A23 A12^-1 A23^-1", "--seq", "123")
    assert code == 0 and data == {"mu": "1", "delta": "0", "residue": "1"}
    code, rows = run_json(capsys, "milnor", "--word", "A12 A34", "--all-upto", "2")
    assert {r["I"]: r["mu"] for r in rows}["12"] == "1"
    assert run(capsys, "milnor", "--word", "s1", "--seq", "12")[0] == 2
    assert run(capsys, "milnor", "--word", "A12", "--seq", "121")[0] == 2


def test_model_and_gen(capsys):
    code, data = run_json(capsys, "model", "--Ln", "-2")
    assert code == 0 and data["n_components"] == 2
    code, data = run_json(capsys, "model", "--KMM", "13", "24", "1", "1")
    assert data["n_components"] == 1
    a = run(capsys, "gen", "--n", "4", "--k", "1", "--len", "10", "--seed", "17")[1]
    b = run(capsys, "gen", "--n", "4", "--k", "1", "--len", "10", "--seed", "17")[1]
    assert a == b and a.strip()
    assert run(capsys, "gen", "--n", "5", "--k", "1")[0] == 2


def test_verify2(capsys):
    code, data = run_json(capsys, "verify2", "--word", "A13^2 A24^2", "--perm", "1234")
    assert code == 0 and data["congruent"] is True
    assert data["delta"] == "2" and data["rhs"] == "4"
    assert run(capsys, "verify2", "--word", "A13", "--perm", "12345")[0] == 2
    assert run(capsys, "verify2", "--word", "A13", "--perm", "1123")[0] == 2


def test_verify_general(capsys):
    code, data = run_json(capsys, "verify", "--word", "A13^2 A24^2", "--k", "1", "--perm", "1234")
    assert code == 0 and data["correction"] == "10"
    assert run(capsys, "verify", "--word", "A12", "--n", "6", "--k", "2")[0] == 2
    assert run(capsys, "verify", "--word", "A12", "--k", "1", "--perm", "123")[0] == 2


def test_verify_failure_exit_code(capsys, monkeypatch):
    def fake(w, I, **kw):
        r = rhs_main2(StringLinkWord.trivial(4))
        r.rhs, r.congruent = 1, False
        return r

    monkeypatch.setattr(cli, "rhs_main2", fake)
    code, data = run_json(capsys, "verify2", "--word", "A12", "--n", "4")
    assert code == 1 and data["congruent"] is False


def test_batch(capsys):
    code, data = run_json(capsys, "verify-batch", "--count", "5", "--seed", "3")
    assert code == 0 and data["congruent"] == "5"
    from milnorhomfly.theorem import _P_CACHE

    _P_CACHE.clear()
    code, data = run_json(capsys, "verify-batch", "--count", "2", "--seed", "3", "--budget", "1")
    assert code == 3 and data["skipped"] == "2"


def test_budget_env(capsys, monkeypatch):
    monkeypatch.setenv("MH_BUDGET", "3")
    code, _, err = run(capsys, "homfly", "--word", "s1 s2^-1 s1 s2^-1 s1 s2^-1")
    assert code == 3 and "budget" in err


def test_selftest(capsys):
    code, out, _ = run(capsys, "selftest")
    assert code == 0
    lines = out.strip().splitlines()
    assert len(lines) == 14 and all(l.startswith("PASS") for l in lines)
    code, rows = run_json(capsys, "selftest", "--json", "--budget", "10")
    assert code == 3 and any(r["status"] == "budget" for r in rows)
    assert not any(r["status"] == "fail" for r in rows)


def test_module_entry_point():
    p = subprocess.run(
        [sys.executable, "-m", "milnorhomfly", "homfly", "--word", "s1 s1"],
        capture_output=True, text=True, check=False,
    )
    assert p.returncode == 0 and json.loads(p.stdout) == HOPF
