import json

import pytest

from gomory_hu import io as spaceio
from gomory_hu import random_space
from gomory_hu.cli import main


def write(tmp_path, name, rows, ids):
    path = tmp_path / name
    path.write_text(json.dumps({"points": list(ids), "distances": [[str(v) for v in r] for r in rows]}))
    return str(path)


@pytest.fixture
def docs(tmp_path):
    return {
        "s122": write(tmp_path, "s122.json", [[0, 1, 2], [1, 0, 2], [2, 2, 0]], "abc"),
        "eq": write(tmp_path, "eq.json", [[0, 1, 1], [1, 0, 1], [1, 1, 0]], "abc"),
        "one": write(tmp_path, "one.json", [[0]], "a"),
        "p1": write(tmp_path, "p1.json", [[0, 1], [1, 0]], "ab"),
        "p2": write(tmp_path, "p2.json", [[0, 2], [2, 0]], "ab"),
        "bad": write(tmp_path, "bad.json", [[0, 1, 2], [1, 0, 4], [2, 4, 0]], "abc"),
    }


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_analyze_member(capsys, docs):
    code, out, _ = run(capsys, "analyze", docs["s122"])
    rep = json.loads(out)
    assert code == 0
    assert rep["in_U"] == {"spectrum": True, "graphs": True, "tree": True} and rep["agreement"]
    assert rep["ball_count"] == 2 and rep["spectrum"] == ["1", "2"]
    assert rep["tree"] == {"leaves": 3, "internal_nodes": 2, "strictly_binary": True, "labels_distinct": True}


def test_analyze_non_member_and_singleton(capsys, docs):
    _, out, _ = run(capsys, "analyze", docs["eq"])
    assert set(json.loads(out)["in_U"].values()) == {False}
    code, out, _ = run(capsys, "analyze", docs["one"])
    rep = json.loads(out)
    assert code == 0 and rep["spectrum"] == [] and all(rep["in_U"].values())


def test_analyze_table(capsys, docs):
    code, out, _ = run(capsys, "analyze", docs["s122"], "--format", "table")
    assert code == 0 and "agreement" in out


def test_invalid_input_exit_1(capsys, docs, tmp_path):
    code, _, err = run(capsys, "analyze", docs["bad"])
    assert code == 1 and "StrongTriangleViolation" in err and "(b,c,a)" in err
    code, _, _ = run(capsys, "analyze", str(tmp_path / "missing.json"))
    assert code == 1


def test_usage_error_exit_1(capsys):
    with pytest.raises(SystemExit) as info:
        main(["nonsense"])
    assert info.value.code == 1


def test_tree(capsys, docs):
    code, out, _ = run(capsys, "tree", docs["s122"], "--format", "json")
    assert code == 0 and json.loads(out)["label"] == "2"
    _, dot, _ = run(capsys, "tree", docs["one"], "--format", "dot")
    assert dot.count("label=") == 1
    _, again, _ = run(capsys, "tree", docs["s122"], "--format", "json")
    assert again == out


def test_graph_and_balls(capsys, docs):
    code, out, _ = run(capsys, "graph", docs["s122"], "--level", "1", "--strip")
    assert code == 0 and json.loads(out) == {"vertices": ["a", "b"], "edges": [["a", "b"]], "level": "1"}
    _, out, _ = run(capsys, "graph", docs["s122"], "--format", "dot")
    assert 'level="2"' in out
    _, out, _ = run(capsys, "balls", docs["s122"])
    assert json.loads(out) == [{"members": ["a", "b"], "radius": "1"}, {"members": ["a", "b", "c"], "radius": "2"}]


def test_count(capsys):
    assert run(capsys, "count", "--leaves", "4")[1].split() == ["2"]
    code, out, _ = run(capsys, "count", "--leaves", "5", "--enumerate")
    lines = out.split()
    assert code == 0 and lines[0] == "3" and len(lines) == 4
    assert run(capsys, "count", "--leaves", "1")[1].split() == ["1"]
    assert run(capsys, "count", "--leaves", "40", "--enumerate")[0] == 1
    assert run(capsys, "count", "--leaves", "0")[0] == 1


def test_perturb(capsys, docs, tmp_path):
    out_path = tmp_path / "out.json"
    code, out, _ = run(capsys, "perturb", docs["eq"], "--eps", "1/10", "--out", str(out_path))
    rep = json.loads(out)
    assert code == 0 and rep["in_U"] and rep["checks_passed"]
    from fractions import Fraction
    assert Fraction(rep["sup_deviation"]) < Fraction(1, 10)
    assert len(spaceio.load(out_path)) == 3
    _, out, _ = run(capsys, "perturb", docs["s122"], "--eps", "1/2")
    assert json.loads(out)["sup_deviation"] == "0"
    assert run(capsys, "perturb", docs["s122"], "--eps", "0")[0] == 1
    assert run(capsys, "perturb", docs["s122"], "--eps", "abc")[0] == 1


def test_gh(capsys, docs, tmp_path):
    assert run(capsys, "gh", docs["s122"], docs["s122"])[1].split() == ["0", "exact"]
    assert run(capsys, "gh", docs["p1"], docs["p2"])[1].split() == ["1/2", "exact"]
    a, b = tmp_path / "a.json", tmp_path / "b.json"
    spaceio.dump(random_space(8, 1), a)
    spaceio.dump(random_space(8, 2), b)
    code, out, _ = run(capsys, "gh", str(a), str(b), "--format", "json")
    assert code == 0 and json.loads(out)["status"] == "upper-bound"


def test_csv_input(capsys, tmp_path):
    path = tmp_path / "m.csv"
    path.write_text("0,1,2\n1,0,2\n2,2,0\n")
    code, out, _ = run(capsys, "analyze", str(path), "--ids", "a,b,c")
    assert code == 0 and json.loads(out)["diametral_pairs"] == [["a", "c"], ["b", "c"]]


def test_check(capsys):
    code, out, _ = run(capsys, "check", "--n", "6", "--samples", "60", "--seed", "1")
    rep = json.loads(out)
    assert code == 0 and rep["passed"] == 60
    code, out, _ = run(capsys, "check", "--n", "1", "--samples", "10")
    assert code == 0 and json.loads(out)["passed"] == 10


def test_check_reports_injected_fault(capsys, monkeypatch):
    import gomory_hu.checks as checks

    monkeypatch.setattr(checks, "is_in_u", lambda X: len(X) < 3)
    code, out, _ = run(capsys, "check", "--n", "5", "--samples", "20", "--seed", "2")
    rep = json.loads(out)
    assert code == 2 and rep["failed"] > 0
    cx = rep["counterexample"]["space"]
    assert spaceio.space_from_dict(cx)  # replayable document
