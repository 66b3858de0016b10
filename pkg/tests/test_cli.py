import json
import subprocess
import sys

import pytest

from matgreed.cli import auto_inv_eps, main
from matgreed.graphs import BipartiteGraph, RootedTree, graph_to_json, tree_to_json

SAT1 = "p cnf 1 1\n1 0\n"
UNSAT1 = "p cnf 1 2\n1 0\n-1 0\n"


@pytest.fixture
def files(tmp_path):
    def write(name, text):
        p = tmp_path / name
        p.write_text(text)
        return str(p)

    return write


def run(capsys, *argv):
    code = main([str(a) for a in argv])
    out = capsys.readouterr().out
    return code, dict(line.split(": ", 1) for line in out.splitlines() if ": " in line), out


def test_reduce_sat3_and_check(capsys, files, tmp_path):
    cnf = files("h.cnf", SAT1)
    out = tmp_path / "inst.json"
    code, kv, _ = run(capsys, "reduce", "sat3", cnf, "-o", out)
    assert code == 0 and kv["ground_size"] == "2"
    code, kv, _ = run(capsys, "check", out, "--exhaustive")
    assert code == 0 and kv["matroid"] == "OK" and kv["greedoid"] == "OK"
    code, kv, _ = run(capsys, "solve", out, "--method", "brute")
    assert code == 0 and kv["size"] == "1" and kv["witness"] == "t1"


def test_reduce_padded_and_weighted(capsys, files, tmp_path):
    cnf = files("h.cnf", SAT1)
    code, kv, _ = run(capsys, "reduce", "padded", cnf, "--inv-eps", 2, "-o", tmp_path / "p.json")
    assert code == 0 and kv["ground_size"] == "4"
    w = tmp_path / "w.json"
    code, kv, _ = run(capsys, "reduce", "weighted", cnf, "--k", 1, "-o", w, "--weights-out", tmp_path / "ww.json")
    assert code == 0 and kv["indicator_weight"] == "16"
    assert json.loads((tmp_path / "ww.json").read_text())["weights"]["1"] == "16"
    code, kv, _ = run(capsys, "solve", w)
    assert kv["weight"] == "17"
    code, kv, _ = run(capsys, "solve", w, "--weights", tmp_path / "ww.json")
    assert kv["weight"] == "17"


def test_reduce_bad_params(capsys, files):
    cnf = files("h.cnf", SAT1)
    assert main(["reduce", "padded", cnf, "--inv-eps", "0"]) == 2
    assert main(["reduce", "padded", cnf]) == 2
    circ = files("c.txt", "out = x1\n")
    assert main(["reduce", "wcs", circ, "--k", "2"]) == 2
    assert main(["reduce", "wcs-dual", circ, "--k", "1"]) == 0


def test_check_exit_codes(capsys, files):
    assert main(["check", files("junk.json", "{not json")]) == 2
    bad = files("bad.json", json.dumps({"schema": "v1", "kind": "explicit", "declared": "greedoid", "ground": ["a", "b"], "feasible": [["a", "b"]]}))
    code, kv, _ = run(capsys, "check", bad)
    assert code == 3 and kv["greedoid"] == "MISMATCH" and kv["greedoid.counterexample"] == "M1 X={} Y={}"
    uni = files("u.json", json.dumps({"schema": "v1", "kind": "uniform", "declared": "matroid", "ground": ["a", "b", "c"], "rank": 2}))
    assert main(["check", uni]) == 0
    greedoid_as_matroid = files("g.json", json.dumps({"schema": "v1", "kind": "explicit", "declared": "matroid", "ground": ["a", "b"], "feasible": [[], ["a"], ["a", "b"]]}))
    assert main(["check", greedoid_as_matroid]) == 3
    tree = json.loads(tree_to_json(RootedTree(("r", "a", "b"), {"a": "r", "b": "r"}, "r")))
    sub = files("t.json", json.dumps({"schema": "v1", "kind": "subtree", "declared": "greedoid", "tree": tree}))
    assert main(["check", sub]) == 0
    part = files("pm.json", json.dumps({"schema": "v1", "kind": "partition", "declared": "matroid", "ground": ["a", "b", "c"], "blocks": [["a", "b"]], "capacities": [1]}))
    assert main(["check", part]) == 0


def test_check_sampled_requires_seed(capsys, files):
    uni = files("u.json", json.dumps({"schema": "v1", "kind": "uniform", "declared": "matroid", "ground": ["a", "b"], "rank": 1}))
    assert main(["check", uni, "--samples", "100"]) == 2
    code, kv, _ = run(capsys, "check", uni, "--samples", 100, "--seed", 3)
    assert code == 0 and kv["matroid.mode"] == "sampled"


def test_check_cap_exceeded(capsys, files, tmp_path):
    cnf = files("h.cnf", "p cnf 2 1\n1 2 0\n")
    run(capsys, "reduce", "padded", cnf, "--inv-eps", 2, "-o", tmp_path / "p.json")
    assert main(["check", str(tmp_path / "p.json")]) == 4
    assert main(["check", str(tmp_path / "p.json"), "--cap", "16"]) == 0


def test_solve_edmonds_matching(capsys, files, tmp_path):
    k22 = BipartiteGraph(("u1", "u2"), ("v1", "v2"), (("u1", "v1"), ("u1", "v2"), ("u2", "v1"), ("u2", "v2")))
    g = files("g.json", graph_to_json(k22))
    run(capsys, "reduce", "matching", g, "-o", tmp_path / "m.json")
    code, kv, _ = run(capsys, "solve", tmp_path / "m.json", "--method", "edmonds")
    assert code == 0 and kv["size"] == "2"
    cnf = files("h.cnf", SAT1)
    run(capsys, "reduce", "sat3", cnf, "-o", tmp_path / "s.json")
    assert main(["solve", str(tmp_path / "s.json"), "--method", "edmonds"]) == 2
    code, kv, _ = run(capsys, "solve", tmp_path / "s.json", "--method", "greedy")
    assert code == 0 and kv["size"] == "1"


def test_solve_cap_exceeded(capsys, files, tmp_path):
    cnf = files("h.cnf", "p cnf 3 1\n1 2 3 0\n")
    run(capsys, "reduce", "padded", cnf, "--inv-eps", 2, "-o", tmp_path / "p.json")
    assert main(["solve", str(tmp_path / "p.json")]) == 4


@pytest.mark.parametrize("via", ["direct", "intersection", "padded", "weighted"])
def test_sat_routes(capsys, files, via):
    code, kv, _ = run(capsys, "sat", files("s.cnf", SAT1), "--via", via)
    assert code == 10 and kv["result"] == "SAT"
    code, kv, _ = run(capsys, "sat", files("u.cnf", UNSAT1), "--via", via)
    assert code == 20 and kv["result"] == "UNSAT"
    assert main(["sat", files("bad.cnf", "p cnf 1 1\n7 0\n"), "--via", via]) == 2


def test_sat_cap(capsys, files):
    assert main(["sat", files("big.cnf", "p cnf 30 1\n1 0\n")]) == 4


def test_auto_inv_eps():
    assert [auto_inv_eps(n) for n in (1, 2, 3, 4)] == [4, 2, 1, 1]


def _tree_files(files, graph, tree):
    return files("g.json", graph_to_json(graph)), files("t.json", tree_to_json(tree))


@pytest.mark.parametrize("method", ["enum", "intersection"])
def test_treematch(capsys, files, method):
    g, t = _tree_files(files, BipartiteGraph(("r",), ("x",), (("r", "x"),)), RootedTree(("r",), {}, "r"))
    code, kv, _ = run(capsys, "treematch", g, t, "--method", method)
    assert code == 0 and kv["size"] == "1" and kv["edge"] == "r x"

    path = RootedTree(("r", "a", "b"), {"a": "r", "b": "a"}, "r")
    right = ("x", "y", "z")
    graph = BipartiteGraph(path.vertices, right, tuple((u, v) for u in path.vertices for v in right))
    g, t = _tree_files(files, graph, path)
    code, kv, out = run(capsys, "treematch", g, t, "--method", method)
    assert code == 0 and kv["size"] == "3" and out.count("edge: ") == 3

    g, t = _tree_files(files, BipartiteGraph(("r", "a"), ("x",), (("a", "x"),)), RootedTree(("r", "a"), {"a": "r"}, "r"))
    code, kv, _ = run(capsys, "treematch", g, t, "--method", method)
    assert code == 0 and kv["matching"] == "empty" and kv["size"] == "0"


def test_treematch_budget(capsys, files):
    tree = RootedTree.complete_binary(2)
    g, t = _tree_files(files, BipartiteGraph(tree.vertices, ("x",), ()), tree)
    assert main(["treematch", g, t, "--budget", "5"]) == 4


def test_subprocess_outputs_are_byte_identical(files, tmp_path):
    cnf = files("h.cnf", "p cnf 2 1\n1 2 0\n")
    cmd = [sys.executable, "-m", "matgreed.cli"]
    runs = []
    for _ in range(2):
        r = subprocess.run(cmd + ["reduce", "padded", cnf, "--inv-eps", "2"], capture_output=True)
        s = subprocess.run(cmd + ["sat", cnf, "--via", "padded"], capture_output=True)
        runs.append((r.stdout, r.returncode, s.stdout, s.returncode))
    assert runs[0] == runs[1]
    assert runs[0][1] == 0 and runs[0][3] == 10
