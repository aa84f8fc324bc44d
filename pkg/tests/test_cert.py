import json
import math

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from ramanujan_bigraphs import cert, hecke
from ramanujan_bigraphs import graph as G
from ramanujan_bigraphs.errors import AcyclicGraph, InternalInconsistency

from conftest import CORPUS, tight_subdivision


def as_counts(dec):
    out = {}
    for d, m, tr in dec.entries:
        key = d.label if isinstance(d, hecke.OneDim) else ("X", round(tr, 9))
        out[key] = m
    return out


def test_decompose_skf4(skf4):
    dec = cert.decompose(skf4)
    assert as_counts(dec) == {"St": 3, "sph": 1, "ds": 2, ("X", round(-1 / math.sqrt(2), 9)): 3}
    assert dec.degree() == 12 == skf4.num_edges
    ps = [d for d, _, _ in dec.entries if isinstance(d, hecke.PrincipalSeries)][0]
    assert hecke.is_tempered(ps)


def test_decompose_k23(k23):
    assert as_counts(cert.decompose(k23)) == {"St": 2, "sph": 1, "ds": 2, "nt": 1}


def test_decompose_acyclic():
    with pytest.raises(AcyclicGraph):
        cert.decompose(G.complete_bipartite(1, 4))


def test_conjecture_check(skf4, k23):
    assert cert.conjecture_check(cert.decompose(skf4))
    assert not cert.conjecture_check(cert.decompose(k23))
    # a quadratic with |trace| > 2 is never tempered
    X = CORPUS["R(9,3)#1"]
    dec = cert.decompose(X)
    if any(tr is not None and abs(tr) > 2 + 1e-9 for _, _, tr in dec.entries):
        assert not cert.conjecture_check(dec)


@pytest.mark.parametrize("name, verdict", [
    ("S(K4)", "Ramanujan"), ("K_2_3", "NotWeaklyRamanujan"), ("S(Petersen)", "Ramanujan"),
    ("C6", "Ramanujan"), ("K_3_3", "NotWeaklyRamanujan"), ("S(K33)", "NotWeaklyRamanujan")])
def test_certify_verdicts(name, verdict):
    rep = cert.certify(CORPUS[name])
    assert rep.verdict == verdict
    assert all(ok for _, ok in rep.consistency)


@pytest.mark.parametrize("name", sorted(CORPUS))
def test_certify_corpus(name):
    rep = cert.certify(CORPUS[name])
    assert rep.decomposition.degree() == CORPUS[name].num_edges
    assert len(rep.consistency) == 10
    if rep.verdict == "Ramanujan":
        assert rep.spectral.rank_B == rep.spectral.n1


@settings(max_examples=15, deadline=None)
@given(st.integers(0, 10**6))
def test_certify_random_32(seed):
    rep = cert.certify(G.random_biregular(4, 6, 2, 1, seed=seed))
    assert all(ok for _, ok in rep.consistency)


def test_exact_mode(skf4):
    rep = cert.certify(skf4, exact_mode=True)
    assert rep.verdict == "Ramanujan" and rep.mode == "exact"


def test_borderline_propagates():
    X = tight_subdivision()
    rep = cert.certify(X)
    assert rep.verdict == "Ramanujan" and rep.borderline
    assert "--exact" in rep.summary()
    rep = cert.certify(X, exact_mode=True)
    assert rep.verdict == "Ramanujan" and not rep.borderline


def test_acyclic_rejected():
    with pytest.raises(AcyclicGraph):
        cert.certify(G.complete_bipartite(1, 3))


def test_consistency_failure_is_loud(monkeypatch, skf4):
    monkeypatch.setattr(cert, "conjecture_check", lambda dec: False)
    with pytest.raises(InternalInconsistency) as info:
        cert.certify(skf4)
    assert info.value.check == "conjecture_iff_ramanujan"


def test_json_schema(skf4):
    d = json.loads(cert.certify(skf4).to_json())
    for key in ("format_version", "graph", "rank", "verdict", "borderline", "spectrum",
                "zeta_coeffs", "factorization", "rh", "consistency"):
        assert key in d
    assert set(d["graph"]) >= {"n1", "n2", "q1", "q2", "edges"}
    assert d["verdict"] == "Ramanujan" and d["rank"] == 3
    assert all(isinstance(c, str) for c in d["zeta_coeffs"])
    f = d["factorization"]
    assert (f["st"], f["ds"], f["sph"], f["nt"]) == (3, 2, 1, 0)
    (quad,) = f["quadratics"]
    assert quad["mult"] == 3 and quad["tempered"] and quad["nu"]["re"] == 0.0
    assert set(quad) == {"trace", "mult", "nu", "tempered"}
    assert {z["class"] for z in d["rh"]["zeros"]} == {"trivial", "nontrivial"}
    assert d["spectrum"][0]["margin"] is None
    assert d["spectrum"][1]["margin"] == pytest.approx(2 * math.sqrt(2) - 1)
    assert all(c["pass"] for c in d["consistency"])


def test_json_big_coefficients_are_strings():
    d = cert.certify(CORPUS["R(9,3)#1"]).to_dict()
    assert max(abs(int(c)) for c in d["zeta_coeffs"]) > 2**63


def test_num_rounding():
    assert cert._num(1 / 3) == 0.333333333333
    assert cert._num(0.0) == 0.0 and cert._num(-0.0) == 0.0
    assert cert._num(1e-300) == 1e-300
