import json

import pytest

from qfold import corpus
from qfold.cli import main
from qfold.folding import fold


@pytest.fixture
def corpus_files(tmp_path):
    qa = corpus.crossed_chains_action()
    quiver = tmp_path / "quiver.json"
    action = tmp_path / "action.json"
    quiver.write_text(json.dumps(qa.quiver.to_json()))
    action.write_text(json.dumps({
        "generators": [g.to_json() for g in qa.group.generators],
        "vertex_maps": [list(m) for m in qa.action.gen_maps],
    }))
    return quiver, action


def test_fold_writes_folded_matrix(corpus_files, tmp_path):
    quiver, action = corpus_files
    out = tmp_path / "folded.json"
    assert main(["fold", "-q", str(quiver), "-a", str(action), "-o", str(out)]) == 0
    data = json.loads(out.read_text())
    assert data["m"] == 3
    assert data["entries"] == fold(corpus.crossed_chains_action()).to_json()["entries"]


def test_fold_honors_reps_flag(corpus_files, tmp_path):
    quiver, action = corpus_files
    out = tmp_path / "folded.json"
    main(["fold", "-q", str(quiver), "-a", str(action), "--reps", "2,3,5", "-o", str(out)])
    data = json.loads(out.read_text())
    assert data["reps"] == [2, 3, 5]
    assert data["entries"] == corpus.CROSSED_FOLD_235.to_json()["entries"]


def test_mutate_roundtrip(corpus_files, tmp_path):
    quiver, action = corpus_files
    folded = tmp_path / "folded.json"
    out1 = tmp_path / "m1.json"
    out2 = tmp_path / "m2.json"
    main(["fold", "-q", str(quiver), "-a", str(action), "-o", str(folded)])
    assert main(["mutate", "-m", str(folded), "-k", "2", "-o", str(out1)]) == 0
    first = json.loads(out1.read_text())
    assert first["rule"] == "standard"
    main(["mutate", "-m", str(out1), "-k", "2", "-o", str(out2)])
    assert json.loads(out2.read_text())["entries"] == json.loads(folded.read_text())["entries"]


def test_unfold_then_fold_restores_matrix(corpus_files, tmp_path):
    quiver, action = corpus_files
    folded = tmp_path / "folded.json"
    unfolded = tmp_path / "unfolded.json"
    refolded = tmp_path / "refolded.json"
    main(["fold", "-q", str(quiver), "-a", str(action), "-o", str(folded)])
    assert main(["unfold", "-m", str(folded), "-o", str(unfolded)]) == 0
    data = json.loads(unfolded.read_text())
    q2 = tmp_path / "q2.json"
    a2 = tmp_path / "a2.json"
    q2.write_text(json.dumps({"n": data["n"], "frozen": data["frozen"], "b": data["b"]}))
    a2.write_text(json.dumps({
        "generators": data["generators"],
        "vertex_maps": data["vertex_maps"],
        "reps": data["reps"],
    }))
    main(["fold", "-q", str(q2), "-a", str(a2), "-o", str(refolded)])
    assert json.loads(refolded.read_text())["entries"] == json.loads(folded.read_text())["entries"]


def test_weave_matches_direct_fold(corpus_files, tmp_path):
    quiver, action = corpus_files
    folded = tmp_path / "folded.json"
    woven = tmp_path / "woven.json"
    main(["fold", "-q", str(quiver), "-a", str(action), "-o", str(folded)])
    rc = main([
        "weave", "-m", str(folded), "-j", "1",
        "-g", '{"type":"cyclic","mod":2,"pow":1}', "-o", str(woven),
    ])
    assert rc == 0
    assert json.loads(woven.read_text())["entries"] == corpus.CROSSED_FOLD_235.to_json()["entries"]


def test_graph_summary_and_dot(corpus_files, tmp_path):
    quiver, action = corpus_files
    folded = tmp_path / "folded.json"
    dot = tmp_path / "graph.dot"
    summary = tmp_path / "summary.json"
    main(["fold", "-q", str(quiver), "-a", str(action), "-o", str(folded)])
    rc = main(["graph", "-m", str(folded), "--max-nodes", "1000",
               "--dot", str(dot), "-o", str(summary)])
    assert rc == 0
    data = json.loads(summary.read_text())
    assert data["complete"] is True
    assert dot.read_text().startswith("digraph")


def test_redseq_not_found_exits_nonzero(corpus_files, tmp_path):
    quiver, _ = corpus_files
    out = tmp_path / "red.json"
    rc = main(["redseq", "-q", str(quiver), "--depth", "2", "-o", str(out)])
    assert rc == 1
    assert json.loads(out.read_text()) == {"found": False, "depth": 2}


def test_redseq_finds_a2(tmp_path):
    q = tmp_path / "a2.json"
    q.write_text(json.dumps({"n": 2, "frozen": [], "b": [[0, 1], [-1, 0]]}))
    out = tmp_path / "red.json"
    assert main(["redseq", "-q", str(q), "--depth", "3", "-o", str(out)]) == 0
    assert json.loads(out.read_text()) == {"found": True, "steps": [1, 2]}


def test_missing_file_reports_error(tmp_path, capsys):
    rc = main(["fold", "-q", str(tmp_path / "none.json"), "-a", str(tmp_path / "none.json")])
    assert rc == 2
    assert "error:" in capsys.readouterr().err


def test_mutate_with_wrong_rule_reports_error(corpus_files, tmp_path, capsys):
    quiver, action = corpus_files
    folded = tmp_path / "folded.json"
    main(["fold", "-q", str(quiver), "-a", str(action), "-o", str(folded)])
    rc = main(["mutate", "-m", str(folded), "-k", "2", "--rule", "diag3"])
    assert rc == 2
    assert "error:" in capsys.readouterr().err
