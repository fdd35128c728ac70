import io
import json
import subprocess
import sys

from weylsep.cli import derive_types, main


def run(*argv):
    out = io.StringIO()
    code = main(list(argv), out=out)
    return code, out.getvalue()


def test_enumerate_b2_tsv():
    code, out = run("enumerate", "--type", "B", "--rank", "2", "--format", "tsv")
    lines = out.splitlines()
    assert code == 0 and len(lines) == 8
    assert lines[0] == "0\t\t"
    assert lines[-1] == "4\t1 2 1 2\t0,1,2,3"


def test_enumerate_json_lines():
    code, out = run("enumerate", "--type", "G", "--rank", "2", "--format", "json")
    recs = [json.loads(x) for x in out.splitlines()]
    assert len(recs) == 12 and recs[-1]["length"] == 6


def test_enumerate_f4_count():
    code, out = run("enumerate", "--type", "F", "--rank", "4", "--format", "tsv")
    assert code == 0 and len(out.splitlines()) == 1152


def test_enumerate_e8_refused(capsys):
    code, out = run("enumerate", "--type", "E", "--rank", "8", "--allow-e7")
    assert code == 3 and out == ""
    assert "computationally infeasible" in capsys.readouterr().err


def test_e7_needs_flag():
    assert run("enumerate", "--type", "E", "--rank", "7")[0] == 3


def test_usage_errors():
    assert run("enumerate", "--type", "D", "--rank", "3")[0] == 2
    assert run("enumerate", "--type", "Z", "--rank", "3")[0] == 2
    assert run("check", "--type", "B", "--rank", "3", "--oneline", "123")[0] == 2
    assert run("check", "--type", "A", "--rank", "2", "--word", "1,x")[0] == 2
    assert run("check", "--type", "A", "--rank", "2", "--word", "4")[0] == 2


def test_check_examples(capsys):
    assert run("check", "--type", "A", "--rank", "3", "--oneline", "3142") == (
        0, "non-separable; pattern A3:3142 at the identity embedding\n")
    code, out = run("check", "--type", "B", "--rank", "2", "--word", "1")
    assert code == 0 and out.startswith("separable; pivot α2")
    code, out = run("check", "--type", "A", "--rank", "3", "--inversions", "0,1")
    assert code == 2 and "not biconvex" in capsys.readouterr().err


def test_check_json():
    code, out = run("check", "--type", "B", "--rank", "3", "--word", "1,2,3,2", "--format", "json")
    data = json.loads(out)
    assert data["separable"] is False and data["pattern"]["pattern"].startswith("B2:")
    code, out = run("check", "--type", "A", "--rank", "3", "--word", "", "--format", "json")
    assert json.loads(out)["separable"] is True


def test_verify_exit_codes():
    code, out = run("verify", "main", "--type", "G", "--rank", "2")
    assert code == 0 and out.startswith("PASS main G2")
    code, out = run("verify", "decomposition", "--type", "D", "--rank", "5", "--format", "json")
    assert code == 0 and json.loads(out)["pass"] is True
    code, out = run("verify", "decomposition", "--type", "A", "--rank", "3", "--permissive")
    assert code == 1 and "FAIL" in out
    assert run("verify", "decomposition", "--type", "A", "--rank", "3")[0] == 2
    assert run("verify", "main", "--type", "E", "--rank", "8")[0] == 3


def test_patterns_derive_small():
    code, out = run("patterns", "derive", "--max-rank", "2")
    assert code == 0
    assert out.split() == ["B2:len2a", "B2:len2b", "G2:len2a", "G2:len2b", "G2:len3a", "G2:len3b",
                           "G2:len4a", "G2:len4b"]
    assert "F4" in derive_types(4) and "F4" not in derive_types(3)


def test_cache_round_trip(tmp_path):
    d = str(tmp_path)
    first = run("enumerate", "--type", "B", "--rank", "3", "--format", "tsv", "--cache-dir", d)
    code, listing = run("cache", "list", "--cache-dir", d)
    assert listing.startswith("B3.v1.json")
    second = run("enumerate", "--type", "B", "--rank", "3", "--format", "tsv", "--cache-dir", d)
    assert first == second
    assert run("cache", "clear", "--cache-dir", d) == (0, "removed 1 file(s)\n")
    assert run("cache", "list", "--cache-dir", d) == (0, "")


def test_cache_env(tmp_path, monkeypatch):
    monkeypatch.setenv("WEYLSEP_CACHE", str(tmp_path))
    run("enumerate", "--type", "A", "--rank", "2")
    assert (tmp_path / "A2.v1.json").exists()


def test_deterministic_subprocess():
    cmd = [sys.executable, "-m", "weylsep", "enumerate", "--type", "D", "--rank", "4", "--format", "json"]
    a = subprocess.run(cmd, capture_output=True, check=True).stdout
    b = subprocess.run(cmd, capture_output=True, check=True).stdout
    assert a == b and a.count(b"\n") == 192
