from __future__ import annotations

import json
import os
import subprocess
import sys

import pytest

from fewham.cli import main, random_corpus
from fewham.constructions import fig10_graphs
from fewham.graph import cycle_graph, doubled_triangle
from fewham.graph_io import write_graph, write_graph6


def run(capsys, *argv, manifest=False):
    args = list(argv) + ([] if manifest else ["--no-manifest"])
    code = main(args)
    out = capsys.readouterr()
    return code, out.out, out.err


def test_count_k5(capsys):
    assert run(capsys, "count", "--cycles", "-g", "D~{")[:2] == (0, "12\n")


def test_count_both_on_c6(capsys):
    code, out, _ = run(capsys, "count", "--algo", "both", "-g", write_graph6(cycle_graph(6)))
    assert code == 0 and out == "1\tbacktrack,held_karp\n"


def test_count_paths_and_multigraph_input(capsys, tmp_path):
    f = tmp_path / "g.txt"
    f.write_text("# doubled triangle\n" + write_graph(doubled_triangle()) + "\nD~{\n")
    code, out, _ = run(capsys, "count", str(f))
    assert code == 0 and out == "2\n12\n"
    code, out, _ = run(capsys, "count", "--paths", "0", "1", "--algo", "held-karp", "-g", "D~{")
    assert out == "6\n"


def test_table_k4(capsys, tmp_path):
    side = tmp_path / "t.json"
    code, out, _ = run(capsys, "table", "--k", "4", "--n-max", "10", "--json", str(side))
    assert code == 0
    rows = [line.split("\t") for line in out.splitlines()]
    assert rows[0] == ["n", "k", "value", "witnesses"]
    assert [r[2] for r in rows[1:]] == ["12", "16", "23", "29", "36", "36"]
    assert [r[3] for r in rows[1:]] == ["1"] * 6
    data = json.loads(side.read_text())
    assert all(isinstance(r["value"], str) for r in data)


def test_table_infinite_row(capsys):
    code, out, _ = run(capsys, "table", "--k", "3", "--n-min", "5", "--n-max", "5")
    assert out.splitlines()[1] == "5\t3\tinf\t0"


def test_jobs_do_not_change_output(capsys):
    a = run(capsys, "verify", "--n-max", "5", "--random", "40", "--jobs", "1")[1]
    b = run(capsys, "verify", "--n-max", "5", "--random", "40", "--jobs", "8")[1]
    assert a == b
    a = run(capsys, "table", "--k", "3", "--n-max", "10", "--jobs", "1")[1]
    b = run(capsys, "table", "--k", "3", "--n-max", "10", "--jobs", "8")[1]
    assert a == b


def test_manifest_digests_are_reproducible(capsys, tmp_path):
    m1, m2 = tmp_path / "a.json", tmp_path / "b.json"
    run(capsys, "count", "-g", "D~{", "--manifest", str(m1), manifest=True)
    run(capsys, "count", "-g", "D~{", "--manifest", str(m2), manifest=True)
    a, b = json.loads(m1.read_text()), json.loads(m2.read_text())
    assert a["outputs"] == b["outputs"] and a["inputs"] == b["inputs"]
    assert set(a) == {"command", "config", "inputs", "outputs", "elapsed", "workers", "version"}


def test_manifest_on_stderr(capsys):
    code, out, err = run(capsys, "count", "-g", "D~{", manifest=True)
    man = json.loads(err.strip().splitlines()[-1])
    assert man["command"][:2] == ["fewham", "count"] and man["workers"] == 1


def test_exit_codes(capsys):
    assert run(capsys, "count", "-g", "D~")[0] == 2  # malformed graph6
    with pytest.raises(SystemExit) as err:
        main(["count", "--algo", "nope"])
    assert err.value.code == 2
    assert run(capsys, "construct", "dagger", "-g", "D~{")[0] == 2  # precondition
    assert run(capsys, "construct", "fig1", "--d", "9")[0] == 4  # cap exceeded
    assert run(capsys, "generate", "--n", "20", "--k", "6")[0] == 4


def test_validation_exit_code(capsys, monkeypatch):
    import fewham.cli as cli

    monkeypatch.setattr(cli, "count_ham_cycles",
                        lambda g, a: type("R", (), {"value": 1 if a == "backtrack" else 2})())
    assert run(capsys, "count", "--algo", "both", "-g", "D~{")[0] == 3


def test_enumerate(capsys):
    code, out, _ = run(capsys, "enumerate", "-g", write_graph(doubled_triangle()))
    assert out.splitlines() == ["0 1 2", "0 1 2 [1 0 0]"]


def test_generate(capsys):
    code, out, _ = run(capsys, "generate", "--n", "8", "--k", "3")
    assert code == 0 and len(out.splitlines()) == 5
    code, out, _ = run(capsys, "generate", "--n", "4", "--any", "--disconnected")
    assert len(out.splitlines()) == 11


def test_construct(capsys):
    code, out, _ = run(capsys, "construct", "fig10", "--count")
    lines = out.splitlines()
    assert [l.split("\t")[0] for l in lines] == [write_graph(g) for g in fig10_graphs()]
    assert all(l.endswith("\t1") for l in lines)
    code, out, _ = run(capsys, "construct", "fig1", "--d", "5", "--count")
    assert out.split("\t")[1].strip() == "27648"
    code, out, _ = run(capsys, "construct", "petersen", "--count")
    assert out.strip().endswith("\t0")
    g1 = run(capsys, "construct", "dagger", "--count", "-g", write_graph(doubled_triangle()))[1]
    assert g1.split("\t")[1].strip() == "2"
    g2 = run(capsys, "construct", "double", "--count", "-g", g1.split("\t")[0])[1]
    assert g2.split("\t")[1].strip() == "1"
    out = run(capsys, "construct", "subdivide", "--count", "-g", "D~{")[1]
    assert out.strip().endswith("\t1")
    out = run(capsys, "construct", "chain", "--m", "3", "--edge", "0-1", "--count", "-g", "C~")[1]
    assert out.strip().endswith("\t8")
    out = run(capsys, "construct", "triangle", "--v", "0", "--count", "-g", "C~")[1]
    assert out.strip().endswith("\t3")


def test_domset_search(capsys, tmp_path):
    rep = tmp_path / "r.txt"
    code, out, _ = run(capsys, "domset-search", "--n-min", "8", "--n-max", "10", "--reports", str(rep))
    rows = out.splitlines()
    assert rows[1].split("\t")[:4] == ["8", "3", "general", "0"]
    assert rows[2].split("\t")[:5] == ["9", "3", "general", "0", "0"]
    assert rows[3].split("\t")[:4] == ["10", "3", "general", "110"]
    assert rep.read_text().count("none") == 110


def test_check_bounds(capsys):
    out = run(capsys, "check-bounds", "conjecture", "--d", "5")[1]
    assert out.splitlines()[1] == "5\t0\t<"
    out = run(capsys, "check-bounds", "family-inequality", "--d-min", "5", "--d-max", "59", "--jobs", "2")[1]
    assert all(l.endswith("\t<") for l in out.splitlines()[1:]) and len(out.splitlines()) == 56
    out = run(capsys, "check-bounds", "corollary")[1]
    assert out.splitlines()[1:] == ["5\t50\ttrue", "6\t50\ttrue", "7\t50\ttrue"]
    out = run(capsys, "check-bounds", "lll-condition", "--d", "100")[1]
    assert out.splitlines()[1].split("\t")[2] == "false"
    out = run(capsys, "check-bounds", "lll-min", "--eps", "1")[1]
    assert out.splitlines()[1].split("\t")[2:] == ["6092", "true", "false"]
    out = run(capsys, "check-bounds", "lll-verify", "--d", "6092")[1]
    assert [l.split("\t")[3] for l in out.splitlines()[1:]] == ["true", "true"]


def test_random_corpus_is_seeded():
    assert random_corpus(20, 8, 12, 5) == random_corpus(20, 8, 12, 5)
    assert random_corpus(20, 8, 12, 5) != random_corpus(20, 8, 12, 6)


def test_jit_switch_in_a_fresh_process():
    code = "from fewham import kernels; from fewham.cli import main; print(kernels.USING_JIT); main(['count', '-g', 'D~{', '--no-manifest'])"
    for flag, using in (("0", "False"), ("1", "True")):
        env = dict(os.environ, FEWHAM_JIT=flag)
        out = subprocess.run([sys.executable, "-c", code], env=env, capture_output=True, text=True, check=True)
        assert out.stdout.split() == [using, "12"]
