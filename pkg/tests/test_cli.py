import json
import subprocess
import sys

import pytest

from reference_data import EQ1, EXAMPLE_4X4, S4, S4_INTERSECTIONS, S5, S5_FILTERED
from smodkit.cli import main
from smodkit.polyring import Poly


@pytest.fixture
def write(tmp_path):
    def _write(name, obj):
        p = tmp_path / name
        p.write_text(obj if isinstance(obj, str) else json.dumps(obj))
        return str(p)
    return _write


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, (json.loads(out) if out else None), err


def test_det(capsys, write):
    code, out, _ = run(capsys, "det", "--matrix", write("eq1.json", EQ1.to_json()))
    assert code == 0 and out == "2x+1"


def test_fs_candidates(capsys, write):
    code, out, _ = run(capsys, "fs-candidates", "--sset", write("s5.json", S5.to_json()), "--max-degree", "1")
    assert code == 0
    assert {Poly.parse(p) for p in out["higher_candidates_filtered"]} == S5_FILTERED


def test_intersections(capsys, write):
    code, out, _ = run(capsys, "intersections", "--sset", write("s4.json", S4.to_json()))
    assert code == 0 and set(out["intersection_set"]) == S4_INTERSECTIONS


def test_check_smod(capsys, write):
    m = write("m.json", EXAMPLE_4X4.to_json())
    s = write("s4.json", S4.to_json())
    code, out, _ = run(capsys, "check-smod", "--matrix", m, "--sset", s)
    assert code == 1 and out["totally_s_modular"] is False
    code, out, _ = run(capsys, "check-smod", "--matrix", m, "--sset", s, "--a", "1")
    assert code == 0 and out["totally_s_modular"] is True


def test_search_minors(capsys, write):
    s = write("s4.json", S4.to_json())
    code, out, _ = run(capsys, "search-minors", "--sset", s, "--pool", write("p.json", ["x", "x+1"]), "--n-max", "3")
    assert code == 0 and out["count"] == 2
    code, out, _ = run(capsys, "search-minors", "--sset", s, "--pool", write("p.json", ["x", "x+1"]), "--n-max", "2")
    assert code == 1 and out["count"] == 0
    code, _, err = run(capsys, "search-minors", "--sset", s, "--pool", write("p.json", []), "--n-max", "2")
    assert code == 2 and "pool" in err


def test_conflict_check(capsys, write):
    code, out, _ = run(capsys, "conflict-check", "--matrix", write("m.json", EQ1.to_json()))
    assert code == 1 and out["status"] == "Conflict"
    ok = {"rows": 2, "cols": 2, "entries": [["x", "x"], ["x", "x+1"]]}
    code, _, _ = run(capsys, "conflict-check", "--matrix", write("m.json", ok))
    assert code == 0


def test_tu_check(capsys, write):
    code, out, _ = run(capsys, "tu-check", "--matrix", write("t.json", [[1, 1], [-1, 1]]))
    assert code == 1 and out["witness"]["det"] == 2
    code, out, _ = run(capsys, "tu-check", "--matrix", write("t.json", [[1, 1], [0, 1]]))
    assert code == 0 and out == {"totally_unimodular": True}


def test_recognize(capsys, write):
    m = write("m.json", [[6, 6], [5, 6]])
    code, out, _ = run(capsys, "recognize", "--a", "5", "--matrix", m)
    assert code == 0 and out["verdict"] == "Yes"
    code, out, _ = run(capsys, "recognize", "--a", "5", "--matrix", write("b.json", [[3]]))
    assert code == 1 and out["reason"] == "NoAffineSplit"
    code, out, _ = run(capsys, "recognize", "--a", "2", "--matrix", m)
    assert code == 2 and out["reason"] == "ParameterExcluded"


def test_solve_ilp(capsys, write, monkeypatch):
    good = write("i.json", {"M": [[3, 4], [4, 3]], "b": [12, 12], "c": [1, 1]})
    code, out, _ = run(capsys, "solve-ilp", "--a", "3", "--instance", good, "--validate")
    assert code == 0 and out["status"] == "Optimal" and out["objective"] == 3
    code, out, _ = run(capsys, "solve-ilp", "--a", "3", "--instance",
                       write("f.json", {"M": [[3], [-3]], "b": [-1, 0], "c": [1]}))
    assert code == 1 and out["status"] == "Infeasible"
    code, out, _ = run(capsys, "solve-ilp", "--a", "3", "--instance",
                       write("u.json", {"M": [[4]], "b": [9], "c": [-1]}))
    assert code == 1 and out["status"] == "Unbounded"
    code, out, _ = run(capsys, "solve-ilp", "--a", "3", "--validate", "--instance",
                       write("n.json", {"M": [[4, 0], [0, 4]], "b": [1, 1], "c": [0, 0]}))
    assert code == 2 and out["status"] == "NotAdmissible"
    monkeypatch.setenv("SMODKIT_BUDGET", "1")
    code, out, _ = run(capsys, "solve-ilp", "--a", "3", "--instance", good)
    assert code == 2 and out["status"] == "BudgetExceeded"
    code, _, err = run(capsys, "solve-ilp", "--a", "1", "--instance", good)
    assert code == 2 and "excluded" in err


def test_malformed_input(capsys, write):
    code, out, err = run(capsys, "det", "--matrix", write("bad.json", "{not json"))
    assert code == 2 and out is None and "malformed JSON" in err
    code, _, err = run(capsys, "det", "--matrix", write("r.json", [["x", "1"]]))
    assert code == 2 and err
    code, _, err = run(capsys, "det", "--matrix", "/nonexistent/m.json")
    assert code == 2 and "cannot read" in err
    with pytest.raises(SystemExit) as e:
        main(["det", "--matrix", "m.json", "--bogus"])
    assert e.value.code == 2


def _cli(*args, stdin=None):
    return subprocess.run([sys.executable, "-m", "smodkit.cli", *args], input=stdin,
                          capture_output=True, text=True)


def test_help_documents_schemas():
    out = _cli("--help").stdout
    for word in ("PolyMatrix", "SSet", "instance", "check-smod", "solve-ilp"):
        assert word in out
    assert "SMODKIT_BUDGET" in _cli("solve-ilp", "--help").stdout


def test_stdin_and_byte_identical(write):
    s = json.dumps(S5.to_json())
    first = _cli("fs-candidates", "--sset", "-", stdin=s)
    second = _cli("fs-candidates", "--sset", "-", stdin=s)
    assert first.returncode == 0 and first.stdout == second.stdout
