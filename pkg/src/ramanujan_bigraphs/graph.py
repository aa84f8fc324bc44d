"""Biregular bipartite graphs: validation, generators and the edge-list format."""
from collections import Counter
from dataclasses import dataclass
from itertools import combinations

import numpy as np

from .errors import (
    EdgeListSyntaxError,
    EmptyGraph,
    InfeasibleDegrees,
    InvalidEdge,
    NotBiregular,
    NotConnected,
    NotRegular,
    ParallelEdges,
    RetryLimitExceeded,
)

FORMAT_MAGIC = "bigraph"
FORMAT_VERSION = 1
MAX_RETRIES = 1000


@dataclass(frozen=True)
class Bigraph:
    """A connected (q1+1, q2+1)-biregular bipartite graph.

    Color-1 vertices are ``0..n1-1`` and have degree ``q1 + 1``; color-2
    vertices are ``0..n2-1`` and have degree ``q2 + 1``. ``q1 >= q2`` always.
    Edges are ``(color-1 index, color-2 index)`` pairs in input order.
    Instances should come from :func:`validate` or one of the generators.
    """

    n1: int
    n2: int
    q1: int
    q2: int
    edges: tuple

    @property
    def num_edges(self):
        return len(self.edges)

    @property
    def num_vertices(self):
        return self.n1 + self.n2

    def canonical(self):
        return Bigraph(self.n1, self.n2, self.q1, self.q2, tuple(sorted(self.edges)))

    def edge_array(self):
        return np.array(self.edges, dtype=np.int64).reshape(-1, 2)


def rank(X):
    """Rank of the fundamental group: |E| - |V| + 1."""
    return X.num_edges - X.num_vertices + 1


def _components(n, adjacency):
    seen = [False] * n
    count = 0
    for start in range(n):
        if seen[start]:
            continue
        count += 1
        seen[start] = True
        stack = [start]
        while stack:
            v = stack.pop()
            for w in adjacency[v]:
                if not seen[w]:
                    seen[w] = True
                    stack.append(w)
    return count


def _is_connected(n1, n2, edges):
    adjacency = [[] for _ in range(n1 + n2)]
    for u, v in edges:
        adjacency[u].append(n1 + v)
        adjacency[n1 + v].append(u)
    return _components(n1 + n2, adjacency) == 1


def validate(n1, n2, edges, allow_multi=False):
    """Check a raw edge list and return an oriented :class:`Bigraph`.

    ``edges`` pairs a vertex of the first side (``< n1``) with a vertex of the
    second side (``< n2``). Degrees are inferred; if the first side has the
    smaller degree the two sides are swapped so that ``q1 >= q2``.
    """
    edges = [(int(u), int(v)) for u, v in edges]
    if not edges or n1 < 1 or n2 < 1:
        raise EmptyGraph("graph has no edges")
    for u, v in edges:
        if not (0 <= u < n1 and 0 <= v < n2):
            raise InvalidEdge(f"edge ({u}, {v}) out of range for sides {n1}, {n2}")
    if not allow_multi:
        dup = [e for e, c in Counter(edges).items() if c > 1]
        if dup:
            raise ParallelEdges(f"parallel edges, e.g. {dup[0]}")

    deg1 = np.bincount([u for u, _ in edges], minlength=n1)
    deg2 = np.bincount([v for _, v in edges], minlength=n2)
    if deg1.min() != deg1.max() or deg2.min() != deg2.max():
        raise NotBiregular(
            f"side degrees range over {sorted(set(deg1.tolist()))} and "
            f"{sorted(set(deg2.tolist()))}"
        )
    d1, d2 = int(deg1[0]), int(deg2[0])
    if d1 == 0 or d2 == 0:
        raise NotBiregular("isolated vertices")
    if not _is_connected(n1, n2, edges):
        raise NotConnected("graph is not connected")

    if d1 < d2:
        n1, n2, d1, d2 = n2, n1, d2, d1
        edges = [(v, u) for u, v in edges]
    return Bigraph(n1, n2, d1 - 1, d2 - 1, tuple(edges))


def complete_bipartite(m, n):
    """K_{m,n} with ``m <= n``; the m-side is color 1."""
    if m < 1 or n < m:
        raise ValueError("need 1 <= m <= n")
    edges = [(u, v) for u in range(m) for v in range(n)]
    return validate(m, n, edges)


def _check_regular(A):
    A = np.asarray(A)
    if A.ndim != 2 or A.shape[0] != A.shape[1]:
        raise NotRegular("adjacency matrix must be square")
    if not np.array_equal(A, A.T) or np.any(np.diag(A) != 0) or not np.isin(A, (0, 1)).all():
        raise NotRegular("adjacency matrix must describe a simple undirected graph")
    degs = A.sum(axis=1)
    if degs.size == 0 or degs.min() != degs.max():
        raise NotRegular(f"degrees {sorted(set(degs.tolist()))}")
    n = A.shape[0]
    adjacency = [np.flatnonzero(A[i]).tolist() for i in range(n)]
    if _components(n, adjacency) != 1:
        raise NotConnected("graph is not connected")
    return int(degs[0])


def subdivision(adjacency):
    """Subdivide every edge of a connected simple d-regular graph, d >= 3.

    Original vertices become color 1 (valency d); each original edge becomes a
    color-2 vertex of valency 2.
    """
    A = np.asarray(adjacency)
    d = _check_regular(A)
    if d < 3:
        raise NotRegular(f"subdivision needs degree >= 3, got {d}")
    n = A.shape[0]
    edges = []
    k = 0
    for i in range(n):
        for j in range(i + 1, n):
            if A[i, j]:
                edges.append((i, k))
                edges.append((j, k))
                k += 1
    return validate(n, k, edges)


def complete_graph_adjacency(n):
    return np.ones((n, n), dtype=np.int64) - np.eye(n, dtype=np.int64)


def complete_bipartite_adjacency(m, n):
    A = np.zeros((m + n, m + n), dtype=np.int64)
    A[:m, m:] = 1
    A[m:, :m] = 1
    return A


def petersen_adjacency():
    A = np.zeros((10, 10), dtype=np.int64)
    pairs = []
    for i in range(5):
        pairs.append((i, (i + 1) % 5))          # outer cycle
        pairs.append((i, i + 5))                # spokes
        pairs.append((5 + i, 5 + (i + 2) % 5))  # inner pentagram
    for a, b in pairs:
        A[a, b] = A[b, a] = 1
    return A


def cycle(length):
    """The even cycle C_{length} as a (2,2)-biregular bigraph."""
    if length < 4 or length % 2:
        raise ValueError("bipartite cycles need even length >= 4")
    m = length // 2
    edges = [(i, i) for i in range(m)] + [((i + 1) % m, i) for i in range(m)]
    return validate(m, m, edges)


def _pair_stubs(stubs1, stubs2, rng, allow_multi):
    """One configuration-model attempt; None when it gets stuck."""
    if allow_multi:
        rng.shuffle(stubs2)
        return list(zip(stubs1.tolist(), stubs2.tolist()))
    edges = set()
    left, right = stubs1, stubs2
    for _ in range(10 * (len(stubs1) + 1)):
        rng.shuffle(right)
        bad_l, bad_r = [], []
        for u, v in zip(left.tolist(), right.tolist()):
            if (u, v) in edges:
                bad_l.append(u)
                bad_r.append(v)
            else:
                edges.add((u, v))
        if not bad_l:
            break
        if all((u, v) in edges for u in set(bad_l) for v in set(bad_r)):
            return None
        left = np.array(bad_l, dtype=np.int64)
        right = np.array(bad_r, dtype=np.int64)
    else:
        return None
    return sorted(edges)


def random_biregular(n1, n2, q1, q2, seed, allow_multi=False, max_retries=MAX_RETRIES):
    """Random connected (q1+1, q2+1)-biregular bigraph from the configuration model.

    Stubs that would create a parallel edge are re-paired among themselves; a
    stuck pairing or a disconnected result costs one retry. Deterministic in
    ``seed``.
    """
    if n1 < 1 or n2 < 1 or q1 < 0 or q2 < 0 or n1 * (q1 + 1) != n2 * (q2 + 1):
        raise InfeasibleDegrees(f"n1*(q1+1) = {n1 * (q1 + 1)} != n2*(q2+1) = {n2 * (q2 + 1)}")
    if not allow_multi and (q1 + 1 > n2 or q2 + 1 > n1):
        raise InfeasibleDegrees("degree exceeds the size of the other side")
    rng = np.random.default_rng(seed)
    stubs1 = np.repeat(np.arange(n1, dtype=np.int64), q1 + 1)
    stubs2 = np.repeat(np.arange(n2, dtype=np.int64), q2 + 1)
    for _ in range(max_retries):
        edges = _pair_stubs(stubs1, stubs2.copy(), rng, allow_multi)
        if edges is None or not _is_connected(n1, n2, edges):
            continue
        return validate(n1, n2, edges, allow_multi=allow_multi)
    raise RetryLimitExceeded(f"no connected sample after {max_retries} attempts")


def serialize(X):
    lines = [f"{FORMAT_MAGIC} {FORMAT_VERSION}", f"{X.n1} {X.n2}"]
    lines += [f"{u} {v}" for u, v in sorted(X.edges)]
    return "\n".join(lines) + "\n"


def _int_fields(text, count, lineno):
    parts = text.split()
    if len(parts) != count:
        raise EdgeListSyntaxError(f"expected {count} integers, got {text!r}", lineno)
    try:
        return [int(p) for p in parts]
    except ValueError:
        raise EdgeListSyntaxError(f"non-integer field in {text!r}", lineno) from None


def parse_edge_list(text, allow_multi=False):
    """Parse the ``bigraph 1`` text format and validate the result."""
    header = None
    sizes = None
    edges = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if header is None:
            parts = line.split()
            if len(parts) != 2 or parts[0] != FORMAT_MAGIC:
                raise EdgeListSyntaxError(f"missing '{FORMAT_MAGIC} {FORMAT_VERSION}' header", lineno)
            if parts[1] != str(FORMAT_VERSION):
                raise EdgeListSyntaxError(f"unsupported format version {parts[1]}", lineno)
            header = lineno
        elif sizes is None:
            sizes = _int_fields(line, 2, lineno)
            if min(sizes) < 1:
                raise EdgeListSyntaxError("vertex counts must be positive", lineno)
        else:
            u, v = _int_fields(line, 2, lineno)
            if not (0 <= u < sizes[0] and 0 <= v < sizes[1]):
                raise EdgeListSyntaxError(f"edge ({u}, {v}) out of range", lineno)
            edges.append((u, v))
    if header is None:
        raise EdgeListSyntaxError("empty input")
    if sizes is None:
        raise EdgeListSyntaxError("missing vertex-count line")
    return validate(sizes[0], sizes[1], edges, allow_multi=allow_multi)


def read_edge_list(path, allow_multi=False):
    with open(path, encoding="utf-8") as fh:
        return parse_edge_list(fh.read(), allow_multi=allow_multi)


def write_edge_list(X, path):
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(serialize(X))


def enumerate_biregular(n1, n2, q1, q2):
    """All simple (q1+1, q2+1)-biregular edge sets on fixed labelled sides.

    Brute force over neighbourhoods of color-1 vertices; only for tiny cases.
    """
    out = []
    choices = list(combinations(range(n2), q1 + 1))

    def rec(u, deg2, acc):
        if u == n1:
            if all(d == q2 + 1 for d in deg2):
                out.append(sorted(acc))
            return
        for nb in choices:
            if any(deg2[v] >= q2 + 1 for v in nb):
                continue
            for v in nb:
                deg2[v] += 1
            rec(u + 1, deg2, acc + [(u, v) for v in nb])
            for v in nb:
                deg2[v] -= 1

    rec(0, [0] * n2, [])
    return out
