import io
import json
import os
import subprocess
import sys

import pytest
import sympy

from ramanujan_bigraphs import cert, cli
from ramanujan_bigraphs import graph as G
from ramanujan_bigraphs.errors import InternalInconsistency


def run(*argv):
    out, err = io.StringIO(), io.StringIO()
    code = cli.run(list(argv), out=out, err=err)
    return code, out.getvalue(), err.getvalue()


@pytest.fixture
def files(tmp_path):
    paths = {}
    for name, X in (("skf4", G.subdivision(G.complete_graph_adjacency(4))),
                    ("k23", G.complete_bipartite(2, 3)),
                    ("star", G.complete_bipartite(1, 3))):
        p = tmp_path / f"{name}.bigraph"
        G.write_edge_list(X, p)
        paths[name] = str(p)
    bad = tmp_path / "bad.bigraph"
    bad.write_text("bigraph 1\n2 2\n0 0\n0 1\n1 0\n")
    paths["bad"] = str(bad)
    return paths


def test_certify_json(files):
    code, out, _ = run("certify", files["skf4"], "--json")
    assert code == 0
    assert json.loads(out)["verdict"] == "Ramanujan"


def test_certify_text(files):
    code, out, _ = run("certify", files["k23"])
    assert code == 0 and "NotWeaklyRamanujan" in out


def test_text_renders_json_data(files):
    code, out, _ = run("certify", files["skf4"], "--json")
    _, text, _ = run("certify", files["skf4"])
    assert text == cert.render_text(json.loads(out))


def test_certify_exact(files):
    code, out, _ = run("certify", files["skf4"], "--json", "--exact")
    assert code == 0 and json.loads(out)["mode"] == "exact"


def test_star_is_exit_2(files):
    code, _, err = run("certify", files["star"])
    assert code == 2 and "AcyclicGraph" in err


@pytest.mark.parametrize("argv", [
    ("certify", "/nonexistent/file.bigraph"),
    ("certify", "BAD"),
    ("zeta", "SKF4", "--max-edges", "5"),
    ("generate", "random_biregular", "--n1", "3", "--n2", "4", "--q1", "2", "--q2", "1",
     "--seed", "1"),
])
def test_input_errors_exit_2(files, argv):
    argv = [files["bad"] if a == "BAD" else files["skf4"] if a == "SKF4" else a for a in argv]
    assert run(*argv)[0] == 2


@pytest.mark.parametrize("argv", [
    (), ("frobnicate",), ("certify",), ("certify", "x", "--tol", "abc"),
    ("hecke",), ("hecke", "--su3"), ("hecke", "--su3", "--q", "2", "--nu", "zz"),
    ("generate", "complete_bipartite", "--m", "2"),
    ("scan", "--n1", "4"),
])
def test_usage_errors_exit_1(argv):
    assert run(*argv)[0] == 1


def test_internal_inconsistency_exit_3(files, monkeypatch):
    def boom(*a, **k):
        raise InternalInconsistency("rh_iff_ramanujan", "forced")
    monkeypatch.setattr(cli, "certify", boom)
    code, _, err = run("certify", files["skf4"])
    assert code == 3 and "rh_iff_ramanujan" in err


def test_spectrum_and_zeta(files):
    code, out, _ = run("spectrum", files["k23"], "--json")
    d = json.loads(out)
    assert code == 0 and d["zero_multiplicity"] == 3 and d["ramanujan"] == "no"
    code, out, _ = run("zeta", files["k23"], "--json")
    d = json.loads(out)
    u = sympy.symbols("u")
    expected = sympy.Poly(sympy.expand((1 - u)**2 * (1 - 2*u) * (1 + u)**2 * (1 + 2*u)), u)
    assert d["zeta_coeffs"] == [str(c) for c in reversed(expected.all_coeffs())]
    assert d["factorization"]["nt"] == 1 and not d["rh"]["satisfied"]
    code, out, _ = run("zeta", files["skf4"])
    assert code == 0 and "RH: holds" in out


def test_generate_models(tmp_path):
    p = tmp_path / "g.bigraph"
    assert run("generate", "subdivision", "--base", "petersen", "-o", str(p))[0] == 0
    X = G.read_edge_list(p)
    assert (X.n1, X.n2) == (10, 15)
    code, out, _ = run("generate", "complete_bipartite", "--m", "2", "--n", "3")
    assert code == 0 and G.parse_edge_list(out).num_edges == 6
    code, out, _ = run("generate", "subdivision", "--base", "Kn", "--n", "5")
    assert G.parse_edge_list(out).q1 == 3
    assert run("generate", "subdivision", "--base", "Kn")[0] == 1
    a = run("generate", "random_biregular", "--n1", "6", "--n2", "9", "--q1", "2", "--q2", "1",
            "--seed", "4")[1]
    b = run("generate", "random_biregular", "--n1", "6", "--n2", "9", "--q1", "2", "--q2", "1",
            "--seed", "4")[1]
    assert a == b


def test_hecke_nu_zero():
    code, out, _ = run("hecke", "--su3", "--q", "2", "--nu", "0", "--json")
    m = json.loads(out)["module"]
    assert code == 0
    assert m["kind"] == "principal_series" and m["tempered"] and m["unitary"]
    assert m["trace"] == {"re": 2.0, "im": 0.0}


def test_hecke_reducible_point():
    code, out, _ = run("hecke", "--q", "2", "--lam", "3", "--lam-star", "1", "--nu", "2", "--json")
    m = json.loads(out)["module"]
    assert m["reducible"] and m["borderline"]
    assert [c["label"] for c in m["constituents"]] == ["sph", "St"]
    code, out, _ = run("hecke", "--su3", "--q", "2", "--nu", "1+4.532360141827194i")
    assert code == 0 and "reducible=True" in out


def test_hecke_invalid_q():
    assert run("hecke", "--su3", "--q", "1")[0] == 2


def test_scan():
    argv = ("scan", "--n1", "6", "--n2", "9", "--q1", "2", "--q2", "1", "--count", "4",
            "--seed", "3", "--json")
    code, out, _ = run(*argv)
    d = json.loads(out)
    assert code == 0 and len(d["graphs"]) == 4
    assert [g["seed"] for g in d["graphs"]] == [3, 4, 5, 6]
    assert sum(b["count"] for b in d["histogram"]) == 4
    assert run(*argv, "--workers", "2")[1] == out


def test_byte_identical_json_subprocess(files):
    cmd = [sys.executable, "-m", "ramanujan_bigraphs", "certify", files["skf4"], "--json"]
    env = dict(os.environ)
    a = subprocess.run(cmd, capture_output=True, env=env)
    b = subprocess.run(cmd, capture_output=True, env=env)
    assert a.returncode == 0 and a.stdout == b.stdout and a.stdout


def test_subprocess_exit_codes(files):
    base = [sys.executable, "-m", "ramanujan_bigraphs"]
    assert subprocess.run(base + ["certify", files["star"]], capture_output=True).returncode == 2
    assert subprocess.run(base + ["nope"], capture_output=True).returncode == 1
