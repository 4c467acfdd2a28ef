"""
명령줄 인터페이스 테스트
analyze / generate / verify / dot 서브커맨드와 종료 코드
"""

import io
import re

import orjson
import pydot
import pytest

from kappalat import cli
from kappalat.checks import CheckBattery
from kappalat.corpus import build_corpus
from kappalat.exceptions import BudgetExceeded, ParseError, exit_code_for
from kappalat.lattice_core import parse_document


def _graph(text: str) -> pydot.Dot:
    return pydot.graph_from_dot_data(text)[0]


def _nodes(graph: pydot.Dot):
    return [node for node in graph.get_nodes() if node.get_name() not in ("node", "edge", "graph")]


# 1. analyze

def test_analyze_text(figure1_path, capsys):
    assert cli.main(["analyze", figure1_path]) == 0
    out = capsys.readouterr().out
    assert "semidistributive: true" in out
    assert "join-irreducibles: 3" in out
    assert "length: 3" in out
    assert "extremal (classical): true" in out
    assert "left modular lattice: true" in out
    assert "lm chain: [bot,y,z,top]" in out


def test_analyze_json_is_deterministic(figure1_path, capsys):
    cli.main(["analyze", "--format", "json", figure1_path])
    first = capsys.readouterr().out
    cli.main(["analyze", "--format", "json", figure1_path])
    second = capsys.readouterr().out
    assert first == second
    assert orjson.loads(first)["certificates"]["lm_chain"] == [0, 2, 3, 4]


def test_analyze_stdin(figure1_path, monkeypatch, capsys):
    with open(figure1_path, encoding="utf-8") as f:
        monkeypatch.setattr("sys.stdin", io.StringIO(f.read()))
    assert cli.main(["analyze", "-"]) == 0
    assert "source: -" in capsys.readouterr().out


def test_analyze_parse_error(tmp_path, capsys):
    bad = tmp_path / "bad.lat"
    bad.write_text("lattice-v1\nn=5\ncover 0 5\n", encoding="utf-8")
    assert cli.main(["analyze", str(bad)]) == 2
    captured = capsys.readouterr()
    assert captured.out == ""
    assert "line 3" in captured.err


def test_analyze_missing_file(tmp_path, capsys):
    assert cli.main(["analyze", str(tmp_path / "missing.lat")]) == 2
    assert "cannot read" in capsys.readouterr().err


# 2. generate

def test_generate_a2_matches_figure1(tmp_path, figure1):
    out = tmp_path / "a2.lat"
    assert cli.main(["generate", "nakayama_tors", "--n", "2", "-o", str(out)]) == 0
    doc = parse_document(out.read_text(encoding="utf-8"))
    assert doc.lattice.covers == figure1.covers
    assert "brick" in doc.meta and "algebra" in doc.meta


def test_generate_boolean_to_stdout(capsys):
    assert cli.main(["generate", "boolean", "--n", "3"]) == 0
    assert parse_document(capsys.readouterr().out).lattice.n == 8


def test_generate_lambda5(capsys):
    assert cli.main(["generate", "nakayama_tors", "--n", "3", "--forbid", "1..3"]) == 0
    doc = parse_document(capsys.readouterr().out)
    assert doc.lattice.n == 12
    assert doc.meta["algebra"] == [["nakayama", "n=3", "forbid=1..3"]]


def test_generate_downset_relations(capsys):
    assert cli.main(["generate", "downset", "--n", "3", "--relation", "0<1", "--relation", "1<2"]) == 0
    assert parse_document(capsys.readouterr().out).lattice.n == 4


def test_generate_bad_params(capsys):
    assert cli.main(["generate", "nakayama_tors", "--n", "3", "--forbid", "1-3"]) == 2
    assert cli.main(["generate", "downset", "--relation", "0>1"]) == 2
    assert cli.main(["generate", "chain"]) == 2


def test_generate_budget_exceeded(capsys):
    assert cli.main(["generate", "boolean", "--n", "20"]) == 3
    assert "budget" in capsys.readouterr().err
    assert cli.main(["generate", "chain", "--n", "100000"]) == 3
    assert "chain lattice" in capsys.readouterr().err


# 3. verify

def test_verify_figure1(figure1_path, capsys):
    assert cli.main(["verify", figure1_path]) == 0
    out = capsys.readouterr().out
    assert "FAIL" not in out
    assert "PASS    lm-criteria-agreement" in out
    assert "0 failed" in out


def test_verify_generated_tors_runs_brick_checks(tmp_path, capsys):
    out = tmp_path / "lambda5.lat"
    cli.main(["generate", "nakayama_tors", "--n", "3", "--forbid", "1..3", "-o", str(out)])
    assert cli.main(["verify", str(out)]) == 0
    text = capsys.readouterr().out
    assert "PASS    brick-directed-equivalence" in text
    assert "PASS    hasse-hom-vanishing" in text


def test_verify_m3_skips_kappa_checks(m3_path, capsys):
    assert cli.main(["verify", m3_path]) == 0
    out = capsys.readouterr().out
    assert "SKIPPED kappa-identities: skipped: not a kappa-lattice" in out
    assert "PASS    lattice-axioms" in out


def test_verify_reports_failed_check(figure1_path, mocker, capsys):
    mocker.patch.object(CheckBattery, "check_lattice_axioms", return_value="forced failure")
    assert cli.main(["verify", figure1_path]) == 1
    assert "FAIL    lattice-axioms: forced failure" in capsys.readouterr().out


def test_verify_chain_budget_is_a_skip(figure1_path, capsys):
    assert cli.main(["--max-chains", "1", "verify", figure1_path]) == 0
    assert "SKIPPED maximal-chains" in capsys.readouterr().out


def test_verify_corpus(mocker, capsys):
    small = build_corpus(2, boolean_max=2, chain_max=2, tamari_max=3, weak_order_max=3)
    mocker.patch.object(cli, "build_corpus", return_value=small)
    assert cli.main(["verify", "--corpus", "--max-vertices", "2"]) == 0
    out = capsys.readouterr().out
    assert "== nakayama_tors nakayama n=2" in out
    assert "== control M3" in out


def test_verify_parse_error(tmp_path):
    bad = tmp_path / "bad.lat"
    bad.write_text("not a lattice\n", encoding="utf-8")
    assert cli.main(["verify", str(bad)]) == 2


def _a2_with(tmp_path, pattern: str, replacement: str):
    out = tmp_path / "a2.lat"
    cli.main(["generate", "nakayama_tors", "--n", "2", "-o", str(out)])
    text = re.sub(pattern, replacement, out.read_text(encoding="utf-8"), flags=re.M)
    out.write_text(text, encoding="utf-8")
    return str(out)


def test_invalid_algebra_metadata_is_input_error(tmp_path, capsys):
    path = _a2_with(tmp_path, r"n=2$", "n=abc")
    assert cli.main(["analyze", path]) == 2
    assert "invalid vertex count 'abc'" in capsys.readouterr().err
    assert cli.main(["verify", path]) == 2


def test_invalid_brick_index_is_input_error(tmp_path, capsys):
    path = _a2_with(tmp_path, r"^# meta brick 1\b", "# meta brick one")
    assert cli.main(["verify", path]) == 2
    assert "invalid element index 'one'" in capsys.readouterr().err


# 4. dot

def test_dot_hasse(figure1_path, capsys):
    assert cli.main(["dot", figure1_path]) == 0
    graph = _graph(capsys.readouterr().out)
    assert graph.get_rankdir() == "BT"
    assert len(_nodes(graph)) == 5
    edges = {(e.get_source(), e.get_destination()): e.get_label() for e in graph.get_edges()}
    assert len(edges) == 5
    assert edges[("2", "3")].strip('"') == "z"


def test_dot_hasse_without_labels(figure1_path, capsys):
    assert cli.main(["dot", "--no-labels", figure1_path]) == 0
    graph = _graph(capsys.readouterr().out)
    assert all(e.get_label() is None for e in graph.get_edges())


def test_dot_labelling(figure1_path, capsys):
    assert cli.main(["dot", "--kind", "labelling", figure1_path]) == 0
    graph = _graph(capsys.readouterr().out)
    assert len(_nodes(graph)) == 3
    assert {(e.get_source(), e.get_destination()) for e in graph.get_edges()} == {("1", "3"), ("3", "2")}


def test_dot_labelling_rejects_non_semidistributive(m3_path, capsys):
    assert cli.main(["dot", "--kind", "labelling", m3_path]) == 2
    assert "not a kappa-lattice" in capsys.readouterr().err


def test_dot_brick(tmp_path, figure1_path, capsys):
    out = tmp_path / "a2.lat"
    cli.main(["generate", "nakayama_tors", "--n", "2", "-o", str(out)])
    assert cli.main(["dot", "--kind", "brick", str(out)]) == 0
    graph = _graph(capsys.readouterr().out)
    assert len(_nodes(graph)) == 3
    assert len(graph.get_edges()) == 2
    assert cli.main(["dot", "--kind", "brick", figure1_path]) == 2


# 5. 종료 코드

@pytest.mark.parametrize(
    "exc, code",
    [
        (None, 0),
        (ParseError(1, "bad"), 2),
        (BudgetExceeded("maximal chains", 10), 3),
    ],
)
def test_exit_code_for(exc, code):
    assert exit_code_for(exc) == code


@pytest.mark.parametrize("option, value", [("--jobs", "0"), ("--max-chains", "-1"), ("--max-sets", "0")])
def test_invalid_global_option_is_input_error(figure1_path, option, value, capsys):
    assert cli.main([option, value, "verify", figure1_path]) == 2
    err = capsys.readouterr().err
    assert "invalid option value" in err
    assert option.lstrip("-").replace("-", "_") in err
