import itertools
import json
import subprocess
import sys

import pytest

from pmingames.cli import main, trial_graph
from pmingames.graph import WeightedGraph, format_graph, parse_graph
from pmingames.recognizer import Verdict

from conftest import BOOK, PATH_12, PATH_FOUR_WEIGHTS, STAR_123, TRIANGLE_123, graph1


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def run_json(capsys, *argv):
    code, out, _ = run(capsys, "--json", *argv)
    payload = json.loads(out)
    assert payload["schema"] == 1
    return code, payload


def test_decide_exit_codes(capsys, write_graph):
    code, payload = run_json(capsys, "decide", write_graph(TRIANGLE_123))
    assert code == 0 and payload["status"] == "Inherits"
    code, payload = run_json(capsys, "decide", write_graph(PATH_FOUR_WEIGHTS))
    assert code == 1 and payload["reason"] == "K_GT_3"
    outside = graph1(5, {(1, 2): 1, (2, 3): 2, (4, 5): 2})
    code, payload = run_json(capsys, "decide", write_graph(outside))
    assert code == 2 and payload["status"] == "OutsideCharacterization"
    assert payload["oracle"]["holds"] in (True, False)


def test_decide_text_output(capsys, write_graph):
    code, out, _ = run(capsys, "decide", write_graph(BOOK))
    assert code == 1 and out.startswith("Fails (TWO_CHORDLESS_CYCLES_THROUGH_MIN_EDGE")


def test_decide_parse_errors(capsys, tmp_path):
    bad = tmp_path / "bad.txt"
    bad.write_text("3 3\n1 2 1\n2 3 1\n")
    code, _, err = run(capsys, "decide", str(bad))
    assert code > 2 and "truncated" in err
    bad.write_text("3 2\n1 2 1\n1 2 1\n")
    code, _, err = run(capsys, "decide", str(bad))
    assert code > 2 and "line 3" in err
    code, _, err = run(capsys, "decide", str(tmp_path / "missing.txt"))
    assert code > 2


def test_usage_errors_are_not_verdict_codes(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["decide"])
    assert exc.value.code > 2
    with pytest.raises(SystemExit) as exc:
        main(["oracle", "x", "--mode", "nope"])
    assert exc.value.code > 2


def test_oracle_command(capsys, write_graph):
    code, payload = run_json(capsys, "oracle", write_graph(BOOK))
    assert code == 1 and not payload["holds"]
    assert payload["witness"] == {"S": [1, 2], "A": [1, 2, 3], "B": [1, 2, 4], "amount": -1, "i": 3}
    code, payload = run_json(capsys, "oracle", write_graph(PATH_12))
    assert code == 0 and payload["holds"]
    code, payload = run_json(capsys, "oracle", "--mode", "f-convexity", write_graph(STAR_123))
    assert code == 1 and payload["mode"] == "f-convexity"


def test_oracle_cap(capsys, write_graph):
    big = WeightedGraph(30, {(i, i + 1): 1 for i in range(29)})
    code, _, err = run(capsys, "oracle", write_graph(big))
    assert code > 2 and "cap" in err
    small = WeightedGraph(5, {(i, i + 1): 1 + i % 2 for i in range(4)})
    code, _, _ = run(capsys, "oracle", "--cap", "4", write_graph(small))
    assert code > 2
    code, _, _ = run(capsys, "--cap", "6", "oracle", write_graph(small))
    assert code in (0, 1)


def test_oracle_sampling(capsys, write_graph):
    g = WeightedGraph(14, {(i, i + 1): 2 for i in range(13)})
    code, payload = run_json(capsys, "oracle", "--sample", "10", "--seed", "3", write_graph(g))
    assert code == 0 and payload["exhaustive"] is False


def test_conditions_command(capsys, write_graph):
    code, payload = run_json(capsys, "conditions", write_graph(STAR_123))
    assert code == 1 and payload["conditions"]["star"]["status"] == "fail"
    assert payload["conditions"]["star"]["witness"]["center"] == 1
    code, payload = run_json(capsys, "conditions", write_graph(graph1(4, {(1, 2): 1, (2, 3): 2, (3, 4): 3})))
    assert code == 0 and payload["status"] == "pass"
    code, payload = run_json(capsys, "conditions", "--extended", write_graph(TRIANGLE_123))
    assert "refined-pan" in payload["conditions"]
    dense = WeightedGraph(9, {e: 2 for e in itertools.combinations(range(9), 2)})
    code, payload = run_json(capsys, "conditions", "--cap", "500", write_graph(dense))
    assert payload["conditions"]["cycle"]["status"] == "skipped"
    assert "500" in payload["conditions"]["cycle"]["detail"]


def test_pmin_command(capsys, write_graph):
    tri = write_graph(graph1(3, {(1, 2): 1, (2, 3): 2, (1, 3): 2}))
    code, payload = run_json(capsys, "pmin", tri, "--coalition", "1,2,3")
    assert code == 0 and payload["blocks"] == [[1, 2, 3]] and payload["sigma"] == [[1, 2]]
    _, payload = run_json(capsys, "pmin", tri, "--coalition", "2")
    assert payload["blocks"] == [[2]] and payload["sigma"] == []
    _, payload = run_json(capsys, "pmin", tri, "--coalition", "-")
    assert payload["blocks"] == []
    code, _, err = run(capsys, "pmin", tri, "--coalition", "1,7")
    assert code > 2 and "unknown vertex 7" in err


def test_restrict_command(capsys, write_graph, tmp_path):
    game = tmp_path / "u23.txt"
    game.write_text("2,3 1\n")
    code, payload = run_json(capsys, "restrict", write_graph(PATH_12), "--game", str(game))
    assert code == 0 and len(payload["table"]) == 8
    assert [t["coalition"] for t in payload["table"] if t["value"]] == [[1, 2, 3]]
    zero = tmp_path / "zero.txt"
    zero.write_text("# nothing\n")
    _, payload = run_json(capsys, "restrict", write_graph(PATH_12), "--game", str(zero))
    assert not any(t["value"] for t in payload["table"])
    full = tmp_path / "uN.txt"
    full.write_text("1,2,3 1\n")
    _, payload = run_json(capsys, "restrict", write_graph(PATH_12), "--game", str(full), "--correspondence", "myerson")
    assert [t["coalition"] for t in payload["table"] if t["value"]] == [[1, 2, 3]]
    bad = tmp_path / "bad.txt"
    bad.write_text("1,4 1\n")
    code, _, _ = run(capsys, "restrict", write_graph(PATH_12), "--game", str(bad))
    assert code > 2


def test_fuzz_summary_and_reproducibility(capsys, tmp_path):
    args = ["fuzz", "--n", "5", "--trials", "150", "--weights", "2", "--seed", "7", "--dump-dir", str(tmp_path)]
    code, out, _ = run(capsys, *args)
    assert code == 0 and out.startswith("150/150 agree")
    code2, out2, _ = run(capsys, *args, "--jobs", "2")
    assert code2 == 0 and out2 == out
    code, out, _ = run(capsys, "fuzz", "--trials", "0")
    assert code == 0 and out.strip() == "0/0 agree"
    code, payload = run_json(capsys, "fuzz", "--n", "4", "--trials", "40", "--weights", "3", "--mode", "f")
    assert code == 0 and payload["agree"] == payload["trials"] == 40


def test_fuzz_graph_sequence_is_seeded():
    a = [format_graph(trial_graph(7, t, 5, 2)) for t in range(20)]
    b = [format_graph(trial_graph(7, t, 5, 2)) for t in range(20)]
    assert a == b
    assert a != [format_graph(trial_graph(8, t, 5, 2)) for t in range(20)]


def test_fuzz_dumps_disagreement(capsys, tmp_path, monkeypatch):
    import pmingames.cli as cli

    real = cli.decide

    def wrong(g, mode="separating"):
        # a recognizer that never reports a failure
        v = real(g, mode)
        return Verdict("Inherits", "X", "y") if v.status == "Fails" else v

    monkeypatch.setattr(cli, "decide", wrong)
    code, out, _ = run(capsys, "fuzz", "--n", "5", "--trials", "50", "--seed", "1", "--dump-dir", str(tmp_path))
    assert code == 1 and "disagreement at trial" in out
    dumped = list(tmp_path.glob("fuzz-seed1-trial*.txt"))
    assert len(dumped) == 1
    g = parse_graph(dumped[0].read_text())
    assert real(g).status == "Fails"


def test_json_exit_codes_match_status(capsys, write_graph):
    for g in (TRIANGLE_123, BOOK, PATH_FOUR_WEIGHTS, graph1(5, {(1, 2): 1, (2, 3): 2, (4, 5): 2})):
        code, payload = run_json(capsys, "decide", write_graph(g))
        assert code == {"Inherits": 0, "Fails": 1, "OutsideCharacterization": 2}[payload["status"]]


def test_console_entry_point(tmp_path):
    path = tmp_path / "t.txt"
    path.write_text(format_graph(TRIANGLE_123))
    proc = subprocess.run([sys.executable, "-m", "pmingames.cli", "decide", str(path)], capture_output=True, text=True)
    assert proc.returncode == 0 and proc.stdout.startswith("Inherits")
