import csv
import json

import pytest

from twdichotomy.cli import EXIT_BUDGET, EXIT_INPUT, EXIT_NO, EXIT_OK, main
from twdichotomy.formats import graph_to_json, parse_graph6, write_edge_list
from twdichotomy.generators import complete, cycle, wall
from twdichotomy.graph import subdivide


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


@pytest.fixture
def c5_file(tmp_path):
    f = tmp_path / "c5.txt"
    f.write_text(write_edge_list(cycle(5)))
    return str(f)


def test_analyze(capsys):
    code, out, _ = run(capsys, "analyze", "--forbidden", "K:4,KK:3,3,S:1,1,1,T:1,1,1", "--json")
    assert code == EXIT_OK and json.loads(out)["overall"] == "Bounded"
    code, out, _ = run(capsys, "analyze", "--forbidden", "K:4,KK:3,3,S:1,1,1")
    assert code == EXIT_NO and "Missing" in out and "line_of_tripod" in out
    code, _, err = run(capsys, "analyze", "--forbidden", "nosuch:3")
    assert code == EXIT_INPUT and err.startswith("error:")


def test_treewidth(capsys, c5_file, tmp_path):
    td_path, dot_path = tmp_path / "td.json", tmp_path / "td.dot"
    code, out, _ = run(capsys, "treewidth", c5_file, "--decomposition", str(td_path), "--dot", str(dot_path))
    assert code == EXIT_OK and out.strip() == "2"
    assert set(json.loads(td_path.read_text())) == {"nodes", "tree_edges", "bags"}
    assert dot_path.read_text().startswith("graph")
    code, _, err = run(capsys, "treewidth", "grid:6,6", "--budget", "3")
    assert code == EXIT_BUDGET and "budget" in err
    code, _, _ = run(capsys, "treewidth", str(tmp_path / "missing.txt"))
    assert code == EXIT_INPUT


def test_recognize(capsys, c5_file):
    code, out, _ = run(capsys, "recognize", "--family", "tripod", "S:1,2,3")
    assert code == EXIT_OK and json.loads(out)["member"]
    code, out, _ = run(capsys, "recognize", "--family", "tripod", c5_file)
    assert code == EXIT_NO and not json.loads(out)["member"]
    assert run(capsys, "recognize", "--family", "line-tripod", "--strict", "P:4")[0] == EXIT_NO
    assert run(capsys, "recognize", "--family", "line-tripod", "P:4")[0] == EXIT_OK
    assert run(capsys, "recognize", "--family", "bipartite", "B?")[0] == EXIT_NO
    assert run(capsys, "recognize", "--family", "bipartite", "--lenient", "B?")[0] == EXIT_OK


def test_detect(capsys):
    code, out, _ = run(capsys, "detect", "--pattern", "K:3", "--host", "K:4")
    data = json.loads(out)
    assert code == EXIT_OK and data["found"] and len(data["embedding"]["map"]) == 3
    code, out, _ = run(capsys, "detect", "--pattern", "C:4", "--host", "K:4")
    assert code == EXIT_NO and json.loads(out) == {"found": False, "embedding": None}
    assert run(capsys, "detect", "--pattern", "C:4", "--host", "K:4", "--subgraph")[0] == EXIT_OK


def test_blocks(capsys):
    code, out, _ = run(capsys, "blocks", "K:5")
    assert code == EXIT_OK and json.loads(out)["block_number"] == 5
    data = json.loads(run(capsys, "blocks", "C:6", "--k", "3")[1])
    assert data["k"] == 3 and data["blocks"] == []


def test_generate(capsys):
    code, out, _ = run(capsys, "generate", "--spec", "wall:3")
    assert code == EXIT_OK and parse_graph6(out.strip()) == wall(3)
    assert run(capsys, "generate", "--spec", "P:3", "--out", "edges")[1] == "3\n0 1\n1 2\n"
    assert "--" in run(capsys, "generate", "--spec", "P:3", "--out", "dot")[1]
    assert run(capsys, "generate", "--spec", "cycle:2")[0] == EXIT_INPUT


def test_constants(capsys):
    assert run(capsys, "constants", "--name", "P", "--args", "3,4")[1].strip() == "10"
    assert run(capsys, "constants", "--name", "C", "--args", "1,2")[1].strip() == "4"
    assert run(capsys, "constants", "--name", "m", "--args", "2,2")[1].strip() == ">2^65536"
    assert run(capsys, "constants", "--name", "R", "--args", "3,4", "--ramsey", "exact")[1].strip() == "9"
    assert run(capsys, "constants", "--name", "P", "--args", "x")[0] == EXIT_INPUT
    assert run(capsys, "constants", "--name", "Z", "--args", "1")[0] == EXIT_INPUT


def test_extract(capsys, tmp_path):
    inputs = {"graph": graph_to_json(complete(4)), "sets": [[0], [1], [2], [3]], "a": 1, "b": 2}
    code, out, _ = run(capsys, "extract", "--procedure", "clique", "--inputs", json.dumps(inputs))
    assert code == EXIT_OK and json.loads(out)["kind"] == "biclique_subgraph"

    host, model = subdivide(complete(4), 1)
    f = tmp_path / "big.json"
    f.write_text(json.dumps({"graph": graph_to_json(host), "model": model.to_json(), "p": 1, "r": 2}))
    code, out, _ = run(capsys, "extract", "--procedure", "bigclique", "--inputs", str(f))
    assert code == EXIT_OK and json.loads(out)["kind"] == "induced_subdivision"

    block = {"graph": "C:6", "block": [0, 3], "p": 2, "m_target": 3}
    code, out, _ = run(capsys, "extract", "--procedure", "block", "--inputs", json.dumps(block))
    assert code == EXIT_NO and json.loads(out)["kind"] == "insufficient"

    assert run(capsys, "extract", "--procedure", "block", "--inputs", "{\"graph\": \"K:3\"}")[0] == EXIT_INPUT
    assert run(capsys, "extract", "--procedure", "block", "--inputs", "not json")[0] == EXIT_INPUT


def test_survey_csv_and_plot(capsys, tmp_path):
    out_csv = tmp_path / "s.csv"
    code, _, err = run(capsys, "survey", "--forbidden", "K:3,KK:2,2,S:1,1,1,T:1,1,1", "--n-min", "3",
                       "--n-max", "7", "--samples", "20", "--seed", "5", "--csv", str(out_csv))
    assert code == EXIT_OK
    rows = list(csv.reader(out_csv.open()))
    assert rows[0] == ["n", "samples", "accepted", "tw_min", "tw_med", "tw_max", "budget_exceeded"]
    assert [r[0] for r in rows[1:]] == ["3", "4", "5", "6", "7"]
    png = tmp_path / "s.png"
    assert png.read_bytes()[:8] == b"\x89PNG\r\n\x1a\n" and str(png) in err


def test_survey_stdout(capsys):
    code, out, _ = run(capsys, "survey", "--forbidden", "K:3", "--n-min", "2", "--n-max", "3",
                       "--samples", "4", "--seed", "1")
    assert code == EXIT_OK and out.splitlines()[0].startswith("n,samples")
    assert len(out.splitlines()) == 3


def test_survey_zero_samples(capsys):
    code, out, _ = run(capsys, "survey", "--forbidden", "K:3", "--n-min", "2", "--n-max", "3",
                       "--samples", "0", "--seed", "1", "--no-plot")
    assert code == EXIT_OK and out.strip() == "n,samples,accepted,tw_min,tw_med,tw_max,budget_exceeded"


def test_module_entry_point():
    import subprocess
    import sys
    res = subprocess.run([sys.executable, "-m", "twdichotomy", "constants", "--name", "P", "--args", "3,4"],
                         capture_output=True, text=True)
    assert res.returncode == 0 and res.stdout.strip() == "10"
