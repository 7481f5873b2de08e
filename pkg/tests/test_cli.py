import json
from pathlib import Path

import pytest

from newtondiag import crmap, oracle, whitney
from newtondiag import diagram as dg
from newtondiag.cli import main
from newtondiag.polynomial import divide_by_hyperplane, format_polynomial, parse

ROOT = Path(__file__).parent.parent
DERIVED = json.loads((ROOT / "tests" / "fixtures" / "derived.json").read_text())


@pytest.fixture(autouse=True)
def at_root(monkeypatch):
    monkeypatch.chdir(ROOT)


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def run_json(capsys, *argv):
    code, out, _ = run(capsys, *argv, "--json")
    return code, json.loads(out)


@pytest.mark.parametrize("name", sorted(DERIVED))
def test_frozen_reports(capsys, name):
    entry = DERIVED[name]
    code, report = run_json(capsys, *entry["argv"])
    assert code == entry["exit"]
    assert report == entry["report"]


def test_check_text(capsys):
    code, out, _ = run(capsys, "check", "x^3+3*x*y+y^3", "--dim", "2")
    assert code == 0
    assert "in-H: true" in out and "d=3, N=3, bound 3, tight" in out


def test_check_matches_library(capsys):
    p = parse((ROOT / "tests/fixtures/cubic_n3.poly").read_text(), 3)
    _, report = run_json(capsys, "check", "--dim", "3", "--file", "tests/fixtures/cubic_n3.poly")
    rep = whitney.check_degree_bound(p).to_dict()
    assert {k: report["result"][k] for k in rep} == rep
    assert report["schema"] == 1 and report["command"] == "check"
    assert report["verdicts"]["sharp_whitney"] is False


def test_quotient_matches_library(capsys):
    _, report = run_json(capsys, "quotient", "x^3+3*x*y+y^3", "--dim", "2")
    q, r = divide_by_hyperplane(parse("x^3+3*x*y+y^3", 2))
    assert report["result"] == {"q": format_polynomial(q), "r": format_polynomial(r)}


def test_diagram_and_view_match_library(capsys):
    p = parse((ROOT / "tests/fixtures/cubic_n3.poly").read_text(), 3)
    D = dg.NewtonDiagram.from_polynomial(p)
    _, report = run_json(capsys, "diagram", "--dim", "3", "--file", "tests/fixtures/cubic_n3.poly")
    assert report["result"] == D.dump()
    _, report = run_json(capsys, "view", "--dim", "3", "--size", "3", "--from", "2", "--to", "3",
                         "--file", "tests/fixtures/cubic_n3.poly")
    assert report["result"]["view"] == dg.view(D, 2, 3).dump()
    assert report["result"]["hidden_nodes"] == dg.count_hidden_nodes(D, 2, 3)


def test_view_size_mismatch_is_input_error(capsys):
    code, _, err = run(capsys, "view", "--dim", "3", "--size", "2", "--from", "2", "--to", "3",
                       "--file", "tests/fixtures/cubic_n3.poly")
    assert code == 1 and "size 3" in err


def test_whitney_matches_library(capsys):
    code, out, _ = run(capsys, "whitney", "--dim", "4", "--degree", "3", "--chooser", "seed:9")
    p = whitney.generate(4, 3, "seed:9").polynomial
    lines = out.splitlines()
    assert code == 0 and lines[0] == format_polynomial(p)
    assert json.loads(lines[1]) == whitney.check_degree_bound(p).to_dict()


def test_crmap_matches_library(capsys):
    code, out, _ = run(capsys, "crmap", "--file", "tests/fixtures/square_n2.map")
    f = crmap.parse_map((ROOT / "tests/fixtures/square_n2.map").read_text())
    assert code == 0 and json.loads(out) == crmap.corollary_report(f).to_dict()


def test_crmap_not_proper(capsys, tmp_path):
    path = tmp_path / "bad.map"
    path.write_text("1 : z1\n1 : z1*z2\n")
    code, out, _ = run(capsys, "crmap", "--file", str(path))
    assert code == 1 and "not proper" in out


def test_search_matches_library(capsys):
    code, report = run_json(capsys, "search", "--dim", "4", "--size", "2")
    assert code == 0
    assert report["result"] == oracle.verify_bound(4, 2).to_dict()
    assert report["result"]["min_node_count"] == 8


def test_search_workers_and_dump(capsys, tmp_path):
    dump = tmp_path / "min.json"
    code, report = run_json(capsys, "search", "--dim", "3", "--size", "2", "--workers", "3",
                            "--dump-minimizers", str(dump))
    assert code == 0
    minimizers = json.loads(dump.read_text())
    assert len(minimizers) == report["result"]["by_size"][-1]["minimizers"]
    assert all(m["dimension"] == 3 for m in minimizers)


def test_search_budget_refusal(capsys):
    code, _, err = run(capsys, "search", "--dim", "3", "--size", "4")
    assert code == 3 and "3^20" in err


def test_output_is_byte_identical(capsys):
    a = run(capsys, "search", "--dim", "3", "--size", "2", "--json")[1]
    b = run(capsys, "search", "--dim", "3", "--size", "2", "--json")[1]
    assert a == b and "timings" not in a
    _, report = run_json(capsys, "search", "--dim", "3", "--size", "1", "--timings")
    assert "seconds" in report["timings"]


def test_lemma42_random(capsys):
    code, report = run_json(capsys, "lemma42", "--height", "1", "--width", "2", "--random", "20", "--seed", "4")
    assert code == 0 and report["result"]["diagrams"] == 8 + 20


def test_input_errors(capsys):
    code, _, err = run(capsys, "check", "x^3+", "--dim", "2")
    assert code == 1 and "position 4" in err
    code, out, _ = run(capsys, "check", "x^2", "--dim", "2")
    assert code == 1 and "(0, 1)" in out
    code, _, err = run(capsys, "check", "--dim", "2", "--file", "no/such/file")
    assert code == 1
    code, _, err = run(capsys, "whitney", "--dim", "3", "--degree", "2", "--chooser", "bogus")
    assert code == 1


def test_contradiction_exit_code(capsys, monkeypatch):
    def broken(*args, **kwargs):
        from newtondiag.errors import TheoremContradiction
        raise TheoremContradiction("forced", {"dimension": 3})

    monkeypatch.setattr(oracle, "verify_bound", broken)
    code, _, err = run(capsys, "search", "--dim", "3", "--size", "1")
    assert code == 2 and "THEOREM CONTRADICTION" in err and '"dimension": 3' in err


def test_faces_command(capsys):
    code, report = run_json(capsys, "faces", "x^2 + x*y + x*z + y + z", "--dim", "3")
    sets = report["result"]["complete_simple_sets"]
    assert code == 0 and sorted(sets) == ["1,2", "1,3", "2,1", "2,3", "3,1", "3,2"]
    assert [F["height"] for F in sets["2,3"]] == [1, 1]


def test_module_entry_point():
    import subprocess
    import sys
    out = subprocess.run([sys.executable, "-m", "newtondiag", "check", "x+y", "--dim", "2"],
                         capture_output=True, text=True, cwd=ROOT)
    assert out.returncode == 0 and "tight" in out.stdout
