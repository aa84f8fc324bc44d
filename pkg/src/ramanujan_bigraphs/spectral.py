"""Spectra of bigraphs and the spectrum-level Ramanujan tests."""
import enum
import math
from dataclasses import dataclass

import numpy as np

from . import exact
from .errors import InternalInconsistency, NotConnected, NotRegular
from .graph import Bigraph, _check_regular, _is_connected

DEFAULT_TOL = 1e-9
ASSERT_TOL = 1e-10


class Verdict(enum.Enum):
    YES = "yes"
    NO = "no"
    BORDERLINE = "borderline"


@dataclass(frozen=True)
class SpectralData:
    """Spectrum of a bigraph, from the eigenvalues of B B^T.

    ``sigma`` holds the n1 singular values of the biadjacency matrix in
    descending order; ``sigma_sq`` the matching eigenvalues of B B^T (kept
    separately to avoid squaring a square root). Singular values that are
    exactly zero (decided by integer rank) are stored as ``0.0``.
    ``char_poly_BBt`` is det(tI - B B^T), lowest degree first.
    """

    n1: int
    n2: int
    q1: int
    q2: int
    sigma: tuple
    sigma_sq: tuple
    char_poly_BBt: tuple
    rank_B: int
    zero_mult: int

    @property
    def lambda1(self):
        return self.sigma[0]

    @property
    def lambda2(self):
        return second_eigenvalue(self)

    @property
    def num_zero_sigma(self):
        return self.n1 - self.rank_B

    def full_spectrum(self):
        """All n1 + n2 adjacency eigenvalues, descending."""
        s = np.array(self.sigma)
        vals = np.concatenate([s, -s, np.zeros(self.n2 - self.n1)])
        return np.sort(vals)[::-1]

    def margins(self):
        """2 sqrt(q1 q2) - |sigma_j^2 - q1 - q2| for j = 2..n1."""
        bound = 2.0 * math.sqrt(self.q1 * self.q2)
        return tuple(bound - abs(t - self.q1 - self.q2) for t in self.sigma_sq[1:])


def biadjacency(X):
    B = np.zeros((X.n1, X.n2), dtype=np.int64)
    for u, v in X.edges:
        B[u, v] += 1
    return B


def adjacency(X):
    B = biadjacency(X)
    n = X.n1 + X.n2
    A = np.zeros((n, n), dtype=np.int64)
    A[:X.n1, X.n1:] = B
    A[X.n1:, :X.n1] = B.T
    return A


def spectrum(X, backend=None):
    if not _is_connected(X.n1, X.n2, X.edges):
        raise NotConnected("spectrum requires a connected graph")
    B = biadjacency(X)
    G = B @ B.T
    chi = exact.charpoly(G, backend=backend)
    rank_b = exact.bareiss_rank(B)
    z = X.n1 - rank_b

    eig = np.linalg.eigvalsh(G.astype(np.float64))[::-1]
    eig = np.clip(eig, 0.0, None)
    if z:
        eig[X.n1 - z:] = 0.0
    sigma = np.sqrt(eig)

    lam1_sq = (1 + X.q1) * (1 + X.q2)
    if abs(sigma[0] - math.sqrt(lam1_sq)) > ASSERT_TOL * max(1.0, math.sqrt(lam1_sq)):
        raise InternalInconsistency("trivial_singular_value", f"sigma_1 = {sigma[0]!r}")
    return SpectralData(
        n1=X.n1, n2=X.n2, q1=X.q1, q2=X.q2,
        sigma=tuple(float(s) for s in sigma),
        sigma_sq=tuple(float(t) for t in eig),
        char_poly_BBt=tuple(chi),
        rank_B=rank_b,
        zero_mult=(X.n2 - X.n1) + 2 * z,
    )


def _as_spectral(X):
    return X if isinstance(X, SpectralData) else spectrum(X)


def second_eigenvalue(X):
    """lambda(X): largest |eigenvalue| besides the trivial pair, or None."""
    S = X if isinstance(X, SpectralData) else spectrum(X)
    if S.n1 >= 2:
        return S.sigma[1]
    if S.n2 > 1:
        return 0.0
    return None


def is_weakly_ramanujan(X):
    """True iff the biadjacency matrix has full rank n1 (exact)."""
    if isinstance(X, SpectralData):
        return X.rank_B == X.n1
    return exact.bareiss_rank(biadjacency(X)) == X.n1


def ramanujan_inequality(X, tol=DEFAULT_TOL):
    """True iff |sigma_j^2 - q1 - q2| <= 2 sqrt(q1 q2) for all j >= 2 (within tol).

    Unlike :func:`is_ramanujan` this ignores the requirement sigma_{n1} > 0,
    which the inequality already implies unless q1 == q2.
    """
    S = _as_spectral(X)
    scale = max(1.0, 2.0 * math.sqrt(S.q1 * S.q2))
    return all(m >= -tol * scale for m in S.margins())


def _numeric_verdict(S, tol):
    if S.n1 == 1:
        return Verdict.YES
    scale = max(1.0, 2.0 * math.sqrt(S.q1 * S.q2))
    margins = S.margins()
    if any(m < -tol * scale for m in margins):
        return Verdict.NO
    if S.rank_B < S.n1:
        return Verdict.NO
    if any(abs(m) <= tol * scale for m in margins):
        return Verdict.BORDERLINE
    return Verdict.YES


def reduced_char_poly(S):
    """char_poly_BBt with the trivial root (1+q1)(1+q2) divided out."""
    lam1_sq = (1 + S.q1) * (1 + S.q2)
    return exact.poly_exact_div(list(S.char_poly_BBt), [-lam1_sq, 1])


def ramanujan_test_polynomial(q1, q2):
    """g(t) = (t - q1 - q2)^2 - 4 q1 q2; the inequality holds iff g(sigma^2) <= 0."""
    return [(q1 - q2) ** 2, -2 * (q1 + q2), 1]


def _exact_verdict(S):
    if S.n1 == 1:
        return Verdict.YES
    h = reduced_char_poly(S)
    if h[0] == 0:
        return Verdict.NO
    g = ramanujan_test_polynomial(S.q1, S.q2)
    bad = exact.count_roots_where_positive(h, g)
    return Verdict.YES if bad == 0 else Verdict.NO


def is_ramanujan(X, mode="numeric", tol=DEFAULT_TOL):
    """Decide the Ramanujan bigraph property.

    Requires |sigma_j^2 - q1 - q2| <= 2 sqrt(q1 q2) for j = 2..n1 and
    sigma_{n1} > 0. ``numeric`` mode returns BORDERLINE when every test passes
    but some margin is within ``tol`` (relative to 2 sqrt(q1 q2)) of equality;
    ``exact`` mode counts roots of the integer characteristic polynomial with
    Sturm sequences and never returns BORDERLINE.
    """
    S = _as_spectral(X)
    if mode == "numeric":
        return _numeric_verdict(S, tol)
    if mode == "exact":
        return _exact_verdict(S)
    raise ValueError(f"unknown mode {mode!r}")


def feng_li_bound(q1, q2):
    if q1 < 0 or q2 < 0:
        raise ValueError("q1, q2 must be nonnegative")
    return math.sqrt(q1) + math.sqrt(q2)


def _regular_spectrum(G):
    """(k, eigenvalues descending, bipartite?) for a connected regular graph."""
    if isinstance(G, Bigraph):
        if G.q1 != G.q2:
            raise NotRegular(f"bigraph with q1={G.q1} != q2={G.q2} is not regular")
        A = adjacency(G)
        k = G.q1 + 1
        bipartite = True
    else:
        A = np.asarray(G, dtype=np.int64)
        k = _check_regular(A)
        bipartite = _two_colorable(A)
    eig = np.linalg.eigvalsh(A.astype(np.float64))[::-1]
    return k, eig, bipartite


def _two_colorable(A):
    n = A.shape[0]
    color = [-1] * n
    color[0] = 0
    stack = [0]
    while stack:
        v = stack.pop()
        for w in np.flatnonzero(A[v]).tolist():
            if color[w] < 0:
                color[w] = 1 - color[v]
                stack.append(w)
            elif color[w] == color[v]:
                return False
    return True


def regular_lambda(G):
    """Second largest |eigenvalue| of a connected k-regular graph, excluding +-k."""
    k, eig, bipartite = _regular_spectrum(G)
    rest = eig[1:]            # drop the single eigenvalue k
    if bipartite:
        rest = rest[:-1]      # and the single eigenvalue -k
    return k, (float(np.abs(rest).max()) if rest.size else 0.0)


def regular_ramanujan_check(G, tol=DEFAULT_TOL):
    """lambda(X) <= 2 sqrt(k - 1) for a connected k-regular graph."""
    k, lam = regular_lambda(G)
    return lam <= 2.0 * math.sqrt(k - 1) + tol


def expansion_coefficient_bound(G):
    """c with 2c = 1 - lambda(X)/k."""
    k, lam = regular_lambda(G)
    return (1.0 - lam / k) / 2.0
