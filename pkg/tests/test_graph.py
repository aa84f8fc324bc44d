import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from ramanujan_bigraphs import graph as G
from ramanujan_bigraphs.errors import (
    EdgeListSyntaxError,
    EmptyGraph,
    InfeasibleDegrees,
    InputError,
    NotBiregular,
    NotConnected,
    NotRegular,
    ParallelEdges,
    RetryLimitExceeded,
)

from conftest import CORPUS


def _counts_hold(X):
    return X.n1 * (X.q1 + 1) == X.n2 * (X.q2 + 1) == X.num_edges


def test_validate_star():
    X = G.validate(1, 3, [(0, 0), (0, 1), (0, 2)])
    assert (X.n1, X.n2, X.q1, X.q2) == (1, 3, 2, 0)


def test_validate_six_cycle():
    X = G.cycle(6)
    assert (X.n1, X.n2, X.q1, X.q2) == (3, 3, 1, 1)


def test_validate_orients_larger_degree_first():
    # K_{2,3} given with the degree-2 side first
    edges = [(v, u) for u in range(2) for v in range(3)]
    X = G.validate(3, 2, edges)
    assert (X.n1, X.n2, X.q1, X.q2) == (2, 3, 2, 1)
    assert set(X.edges) == {(u, v) for u in range(2) for v in range(3)}


@pytest.mark.parametrize("n1, n2, edges, err", [
    (1, 1, [], EmptyGraph),
    (2, 2, [(0, 0), (0, 1), (1, 1)], NotBiregular),
    (2, 2, [(0, 0), (1, 1)], NotConnected),
    (1, 2, [(0, 0), (0, 0), (0, 1), (0, 1)], ParallelEdges),
])
def test_validate_errors(n1, n2, edges, err):
    with pytest.raises(err):
        G.validate(n1, n2, edges)


def test_parallel_edges_allowed_with_flag():
    X = G.validate(1, 1, [(0, 0), (0, 0)], allow_multi=True)
    assert (X.q1, X.q2) == (1, 1)


def test_errors_are_value_errors():
    assert issubclass(NotBiregular, InputError) and issubclass(InputError, ValueError)


@pytest.mark.parametrize("m, n, q1, q2, edges", [(1, 4, 3, 0, 4), (2, 3, 2, 1, 6), (3, 3, 2, 2, 9)])
def test_complete_bipartite(m, n, q1, q2, edges):
    X = G.complete_bipartite(m, n)
    assert (X.n1, X.n2, X.q1, X.q2, X.num_edges) == (m, n, q1, q2, edges)


def _degree_oracle(adj):
    """Degrees of the subdivision computed straight from the base adjacency."""
    A = np.asarray(adj)
    n = A.shape[0]
    m = int(A.sum()) // 2
    return n, m, int(A[0].sum()) - 1, 1, 2 * m


@pytest.mark.parametrize("adj", [
    G.complete_graph_adjacency(4),
    G.complete_bipartite_adjacency(3, 3),
    G.petersen_adjacency(),
])
def test_subdivision(adj):
    X = G.subdivision(adj)
    assert (X.n1, X.n2, X.q1, X.q2, X.num_edges) == _degree_oracle(adj)
    assert len(set(X.edges)) == X.num_edges


def test_subdivision_shapes():
    assert (G.subdivision(G.complete_graph_adjacency(4)).n2) == 6
    X = G.subdivision(G.complete_bipartite_adjacency(3, 3))
    assert (X.n1, X.n2, X.q1, X.q2) == (6, 9, 2, 1)
    X = G.subdivision(G.petersen_adjacency())
    assert (X.n1, X.n2, X.q1, X.q2) == (10, 15, 2, 1)


def test_subdivision_rejects_bad_input():
    with pytest.raises(NotRegular):
        G.subdivision(G.complete_graph_adjacency(3))  # degree 2
    A = np.zeros((8, 8), dtype=np.int64)
    A[:4, :4] = G.complete_graph_adjacency(4)
    A[4:, 4:] = G.complete_graph_adjacency(4)
    with pytest.raises(NotConnected):
        G.subdivision(A)
    P = np.array([[0, 1, 0], [1, 0, 1], [0, 1, 0]])
    with pytest.raises(NotRegular):
        G.subdivision(P)


@pytest.mark.parametrize("name, r", [("S(K4)", 3), ("C6", 1), ("K_2_3", 2)])
def test_rank(name, r):
    assert G.rank(CORPUS[name]) == r


def test_random_biregular_postconditions():
    X = G.random_biregular(4, 6, 2, 1, seed=7)
    assert X.num_edges == 12 and (X.q1, X.q2) == (2, 1)
    assert G.validate(X.n1, X.n2, X.edges) == X


def test_random_biregular_star_is_forced():
    X = G.random_biregular(1, 5, 4, 0, seed=3)
    assert sorted(X.edges) == [(0, v) for v in range(5)]


def test_random_biregular_three_three_is_six_cycle():
    # oracle: enumerate every 2-regular bipartite graph on 3 + 3 labelled vertices
    all_graphs = G.enumerate_biregular(3, 3, 1, 1)
    connected = [e for e in all_graphs if G._is_connected(3, 3, e)]
    assert len(connected) == 6  # 3! * 2! / 2 labelled hexagons
    for seed in range(20):
        X = G.random_biregular(3, 3, 1, 1, seed=seed)
        assert sorted(X.edges) in connected


def test_random_biregular_deterministic():
    a = G.random_biregular(9, 27, 8, 2, seed=11)
    b = G.random_biregular(9, 27, 8, 2, seed=11)
    assert a.edges == b.edges


def test_random_biregular_errors():
    with pytest.raises(InfeasibleDegrees):
        G.random_biregular(3, 4, 2, 1, seed=0)
    with pytest.raises(InfeasibleDegrees):
        G.random_biregular(2, 2, 3, 3, seed=0)
    # two disjoint edges always: (1,1)-biregular on 2 + 2 vertices is never connected
    with pytest.raises(RetryLimitExceeded):
        G.random_biregular(2, 2, 0, 0, seed=0, max_retries=5)


@pytest.mark.parametrize("name", sorted(CORPUS))
def test_corpus_counts(name):
    X = CORPUS[name]
    assert _counts_hold(X)
    assert X.n2 >= X.n1 and X.q1 >= X.q2


@pytest.mark.parametrize("name", sorted(CORPUS))
def test_serialize_roundtrip(name):
    X = CORPUS[name]
    text = G.serialize(X)
    Y = G.parse_edge_list(text)
    assert Y == X.canonical()
    assert G.serialize(Y) == text


def test_parse_comments_and_file_io(tmp_path):
    text = "# header comment\nbigraph 1\n2 3  # sizes\n" + "".join(
        f"{u} {v}\n" for u in range(2) for v in range(3))
    X = G.parse_edge_list(text)
    p = tmp_path / "k23.bigraph"
    G.write_edge_list(X, p)
    assert G.read_edge_list(p) == X.canonical()


@pytest.mark.parametrize("text, line", [
    ("", None),
    ("graph 1\n", 1),
    ("bigraph 2\n", 1),
    ("bigraph 1\n2\n", 2),
    ("bigraph 1\n1 2\n0 x\n", 3),
    ("bigraph 1\n1 2\n0 0\n0 5\n", 4),
    ("bigraph 1\n", None),
])
def test_parse_errors_carry_line(text, line):
    with pytest.raises(EdgeListSyntaxError) as info:
        G.parse_edge_list(text)
    assert info.value.line == line


@settings(max_examples=20, deadline=None)
@given(st.integers(0, 10**6))
def test_random_graphs_roundtrip(seed):
    X = G.random_biregular(6, 9, 2, 1, seed=seed)
    assert G.parse_edge_list(G.serialize(X)) == X.canonical()
