import json

import pytest

from brickforge.cli import EXIT_FAIL, EXIT_LIMIT, EXIT_OK, EXIT_PARSE, AnalysisReport, analyze, main
from brickforge.graphcore import format_graph, write_graph
from brickforge.graphs import builtin


@pytest.fixture
def graph_file(tmp_path):
    def make(name, G=None):
        path = tmp_path / f"{name}.txt"
        write_graph(G if G is not None else builtin(name), path)
        return str(path)
    return make


def test_analyze_petersen(graph_file, capsys):
    assert main(["analyze", graph_file("petersen"), "--json"]) == EXIT_OK
    d = json.loads(capsys.readouterr().out)
    assert d["brick"] and not d["near_bipartite"] and d["b"] == 1
    assert d["removable"] == list(range(15))
    assert AnalysisReport.from_dict(d).to_dict() == d


def test_analysis_report_round_trip():
    rep = analyze(builtin("st8"))
    assert AnalysisReport.from_dict(json.loads(json.dumps(rep.to_dict()))) == rep


def test_reduce_st8(graph_file, capsys):
    assert main(["reduce", graph_file("st8")]) == EXIT_OK
    assert capsys.readouterr().out.strip() == "(n=8, e=11) -> K4"
    assert main(["reduce", graph_file("st8"), "--strategy", "ascent", "--doubleton", "2", "3", "--json"]) == EXIT_OK
    d = json.loads(capsys.readouterr().out)
    assert d["tag"] == "K4"


def test_reduce_base(graph_file, capsys):
    assert main(["reduce", graph_file("c6bar")]) == EXIT_OK
    assert "C6bar" in capsys.readouterr().out


def test_reduce_bad_doubleton(graph_file, capsys):
    assert main(["reduce", graph_file("st8"), "--doubleton", "0", "1"]) == EXIT_FAIL


def test_doubletons_and_classify(graph_file, capsys):
    path = graph_file("st8")
    assert main(["doubletons", path]) == EXIT_OK
    assert capsys.readouterr().out.split("\n")[:2] == ["0 5", "2 3"]
    assert main(["classify", path, "--json"]) == EXIT_OK
    rows = json.loads(capsys.readouterr().out)["edges"]
    assert [r["edge_id"] for r in rows if r["thin"]] == [11]


def test_decompose_writes_pieces(graph_file, tmp_path, capsys):
    G = builtin("petersen").delete_edges([0])
    out = tmp_path / "pieces"
    assert main(["decompose", graph_file("p", G), "--out", str(out), "--seed", "4"]) == EXIT_OK
    index = json.loads((out / "decomposition.json").read_text())
    assert index["b"] == 2
    assert all((out / p["file"]).exists() for p in index["pieces"])


def test_generate(tmp_path, capsys):
    assert main(["generate", "--max-n", "6", "--json", "--out", str(tmp_path / "cat")]) == EXIT_OK
    d = json.loads(capsys.readouterr().out)
    assert d["simple_classes"] == 4
    assert (tmp_path / "cat" / "catalog.json").exists()


def test_verify_core(capsys):
    assert main(["verify", "--suite", "core"]) == EXIT_OK
    assert all(line.startswith("PASS") for line in capsys.readouterr().out.strip().split("\n"))


def test_verify_mutant_override(graph_file, capsys):
    mutant, _ = builtin("st8").add_edge(0, 4)
    code = main(["verify", "--override", f"st8={graph_file('mutant', mutant)}"])
    assert code == EXIT_FAIL
    captured = capsys.readouterr()
    assert "FAIL st8" in captured.out
    assert json.loads(captured.err.strip().split("\n")[0])["check"].startswith("st8")


def test_parse_errors(tmp_path):
    bad = tmp_path / "bad.txt"
    bad.write_text("2 1\n1 1\n")
    assert main(["analyze", str(bad)]) == EXIT_PARSE
    assert main(["analyze", str(tmp_path / "missing.txt")]) == EXIT_PARSE
    assert main(["verify", "--override", "st8"]) == EXIT_PARSE


def test_resource_limits(graph_file, monkeypatch):
    monkeypatch.setenv("BRICKFORGE_MAX_N", "8")
    assert main(["analyze", graph_file("petersen")]) == EXIT_LIMIT
    assert main(["generate", "--max-n", "10"]) == EXIT_LIMIT


def test_format_is_stable(graph_file):
    path = graph_file("k4")
    with open(path) as fh:
        assert fh.read().endswith(format_graph(builtin("k4")))
