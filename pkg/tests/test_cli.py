import json
import subprocess
import sys

import pytest

from leafsearch.cli import COUNTEREXAMPLE, NEGATIVE, OK, USAGE, main


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, [json.loads(line) for line in out.splitlines() if line.startswith("{")], err


def test_leaf_fig1_bfs_f_branch(capsys):
    code, recs, _ = run(
        capsys, "leaf", "--graph", "fig1", "--vertex", "z", "--search", "bfs",
        "--tree", "f", "--kind", "branch", "--witness",
    )
    assert code == OK
    (rec,) = recs
    assert rec["answer"] is True and rec["method"] == "chordal-bfs-radius"
    from leafsearch.families import fig1
    from leafsearch.trees import build_tree, leaves

    g = fig1()
    t = build_tree(g, ",".join(rec["witness"]), "f")
    assert g.vertex("z") in leaves(t) and t.root != g.vertex("z")


def test_leaf_p3_cut_vertex(capsys):
    argv = ["leaf", "--graph", "p3", "--vertex", "b", "--search", "gs", "--tree", "l", "--kind", "any"]
    code, recs, _ = run(capsys, *argv)
    assert code == OK
    assert recs[0]["answer"] is False and recs[0]["certificate"]["cut_vertex"] == "b"
    assert "witness" not in recs[0]
    code, _, _ = run(capsys, *argv, "--strict")
    assert code == NEGATIVE


def test_leaf_all_vertices(capsys):
    code, recs, _ = run(capsys, "leaf", "--graph", "p3", "--search", "dfs", "--tree", "l", "--kind", "branch")
    assert code == OK
    assert {r["vertex"]: r["answer"] for r in recs} == {"a": True, "b": False, "c": True}


def test_oracle_certify_t5(capsys):
    code, recs, _ = run(capsys, "oracle", "certify", "--theorem", "T5", "--nmax", "5")
    assert code == OK and recs[0]["passed"] and recs[0]["graphs"] == 771


def test_oracle_certify_lowercase_and_class(capsys):
    code, recs, _ = run(capsys, "oracle", "certify", "--theorem", "t23", "--nmax", "4", "--class", "split")
    assert code == OK and recs[0]["theorem"] == "T23"


def test_oracle_unknown_theorem(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["oracle", "certify", "--theorem", "T99"])
    assert exc.value.code == USAGE


def test_oracle_sets(capsys):
    code, recs, _ = run(capsys, "oracle", "sets", "--graph", "p3", "--search", "gs")
    assert code == OK
    assert recs[0]["l-root"] == ["a", "c"] and recs[0]["f-root"] == ["a", "c"]


def test_classify(capsys):
    code, recs, _ = run(capsys, "classify", "--graph", "fig1")
    rec = recs[0]
    assert code == OK and rec["chordal"] and not rec["bipartite"]
    assert rec["cut_vertices"] == [] and rec["diameter"] == 2


def test_search_variants(capsys):
    _, recs, _ = run(capsys, "search", "--graph", "fig1", "--search", "bfs", "--rho", "w,v,x,z,u,y")
    assert recs[0]["ordering"] == ["w", "v", "x", "z", "u", "y"]
    _, recs, _ = run(capsys, "search", "--graph", "p3", "--search", "bfs", "--all")
    assert len(recs) == 4
    _, a, _ = run(capsys, "search", "--graph", "fig1", "--search", "mns", "--seed", "5")
    _, b, _ = run(capsys, "search", "--graph", "fig1", "--search", "mns", "--seed", "5")
    assert a == b


def test_search_flags_are_exclusive(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["search", "--graph", "p3", "--search", "bfs", "--all", "--seed", "1"])
    assert exc.value.code == USAGE


def test_tree(capsys):
    code, recs, _ = run(capsys, "tree", "--graph", "fig1", "--tree", "f", "--ordering", "w,v,x,z,u,y")
    rec = recs[0]
    assert code == OK and rec["root"] == "w"
    assert sorted(v for v, r in rec["roles"].items() if r == "branch-leaf") == ["u", "y", "z"]
    main(["tree", "--graph", "p3", "--tree", "l", "--ordering", "a,b,c", "--format", "text"])
    assert capsys.readouterr().out == "root a\nb a\nc b\n"


def test_witness_round_trips_through_check(capsys):
    cases = [
        ("fig1", "z", "bfs", "f", "branch"),
        ("fig1", "u", "mns", "l", "branch"),
        ("c4", "a", "bfs", "l", "branch"),
        ("c5", "a", "dfs", "f", "any"),
        ("k3+pendant", "p", "dfs", "f", "branch"),
        ("fig1", "w", "ldfs", "l", "root"),
    ]
    for graph, v, search, tree, kind in cases:
        flags = ["--graph", graph, "--vertex", v, "--search", search, "--tree", tree, "--kind", kind]
        _, recs, _ = run(capsys, "leaf", *flags, "--witness")
        assert recs[0]["answer"], (graph, v, search, tree, kind)
        ordering = ",".join(recs[0]["witness"])
        code, checked, _ = run(capsys, "check", "--strict", "--ordering", ordering, *flags)
        assert code == OK and checked[0]["valid"] and checked[0]["role"]


def test_check_rejects_invalid(capsys):
    code, recs, _ = run(capsys, "check", "--graph", "p3", "--search", "bfs", "--ordering", "a,c,b", "--strict")
    assert code == NEGATIVE and recs[0]["valid"] is False


def test_gadget_build_and_verify(capsys, tmp_path):
    src = tmp_path / "k2.txt"
    src.write_text("a b\n")
    out = tmp_path / "target.txt"
    code, recs, _ = run(capsys, "gadget", "build", "dfs-f", "--in", str(src), "--out", str(out))
    assert code == OK and recs[0]["n"] == 5 and recs[0]["query_vertex"] == "y"
    from leafsearch.graph import read_graph

    assert read_graph(out).m == 7
    code, recs, _ = run(capsys, "gadget", "verify", "dfs-f", "--in", str(src))
    assert code == OK and recs[0]["equivalent"]
    code, recs, _ = run(capsys, "gadget", "verify", "bfs-f", "--in", "p3", "--r", "a", "--v", "c")
    assert code == OK and recs[0]["target"]


def test_gadget_sat(capsys, tmp_path):
    cnf = tmp_path / "f.cnf"
    cnf.write_text("p cnf 3 2\n1 2 3 0\n-1 2 -3 0\n")
    code, recs, _ = run(capsys, "gadget", "verify", "sat-f", "--in", str(cnf), "--search", "mns")
    assert code == OK and recs[0]["equivalent"] and recs[0]["kinds"] == ["mns"]
    unsat = tmp_path / "u.cnf"
    unsat.write_text("p cnf 2 2\n1 1 1 0\n-1 -1 -1 0\n")
    code, recs, _ = run(capsys, "gadget", "verify", "sat-f", "--in", str(unsat), "--strict")
    assert code == NEGATIVE and recs[0]["equivalent"] and not recs[0]["target"]


def test_usage_errors(capsys, tmp_path):
    code, _, err = run(capsys, "classify", "--graph", str(tmp_path / "missing.txt"))
    assert code == USAGE and "error" in err
    code, _, err = run(capsys, "leaf", "--graph", "p3", "--vertex", "q", "--search", "gs",
                       "--tree", "f", "--kind", "root")
    assert code == USAGE
    code, _, _ = run(capsys, "gadget", "build", "bfs-f", "--in", "p3")
    assert code == USAGE
    code, _, _ = run(capsys, "leaf", "--graph", "c6", "--vertex", "a", "--search", "lbfs",
                     "--tree", "f", "--kind", "branch", "--cap", "4")
    assert code == USAGE


def test_exit_code_constants():
    assert (OK, NEGATIVE, USAGE, COUNTEREXAMPLE) == (0, 1, 2, 3)


def test_pretty_output(capsys):
    main(["leaf", "--graph", "p3", "--vertex", "a", "--search", "gs", "--tree", "f",
          "--kind", "root", "--pretty"])
    out = capsys.readouterr().out
    assert "answer: " in out and not out.startswith("{")


def test_module_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "leafsearch", "classify", "--graph", "k3"],
        capture_output=True, text=True, check=False,
    )
    assert proc.returncode == 0 and json.loads(proc.stdout)["chordal"]
