"""Colored edge operators, the reciprocal zeta polynomial and its zeros.

The reciprocal zeta polynomial Z_X(u)^{-1} is computed two independent ways:
as det(I - T1 T2 u) from the edge operators, and from the characteristic
polynomial of B B^T through the product formula. Both are exact integers.
"""
import cmath
import math
from dataclasses import dataclass

import numpy as np
import scipy.sparse as sp

from . import exact
from .errors import AcyclicGraph, InconsistentFactorization, SizeLimitExceeded
from .graph import rank
from .spectral import DEFAULT_TOL, spectrum

DEFAULT_MAX_EDGES = 500
RH_TOL = 1e-9
CLUSTER_TOL = 1e-8
RECON_TOL = 1e-8


@dataclass(frozen=True)
class EdgeOperators:
    T1: sp.csr_matrix
    T2: sp.csr_matrix

    def product(self):
        return (self.T1 @ self.T2).toarray()


@dataclass(frozen=True)
class ZetaPolynomial:
    """Exact integer coefficients of Z_X(u)^{-1}, lowest degree first."""

    coeffs: tuple

    @property
    def degree(self):
        return len(self.coeffs) - 1

    def __call__(self, u):
        return exact.poly_eval(self.coeffs, u)


@dataclass(frozen=True)
class ZetaFactorization:
    """Multiplicities of the one-dimensional factors and the remaining quadratics.

    ``quadratics`` lists ``(c, multiplicity)`` for factors 1 - c u + q1 q2 u^2
    with c = sigma_j^2 - q1 - q2, one entry per distinct nonzero nontrivial
    sigma_j. ``c`` is an ``int`` when sigma_j^2 is an integer, else a float.
    """

    q1: int
    q2: int
    mult_St: int
    mult_ds: int
    mult_sph: int
    mult_nt: int
    quadratics: tuple
    exact_quadratics: bool

    def linear_factors(self):
        q1, q2 = self.q1, self.q2
        return {
            "St": ([1, -1], self.mult_St),
            "ds": ([1, q2], self.mult_ds),
            "sph": ([1, -q1 * q2], self.mult_sph),
            "nt": ([1, q1], self.mult_nt),
        }

    def traces(self):
        s = math.sqrt(self.q1 * self.q2)
        return [(c / s, m) for c, m in self.quadratics]


@dataclass(frozen=True)
class Zero:
    u: complex
    s: complex  # None when q1 q2 == 1 and u = (q1 q2)^(-s) does not determine s
    kind: str   # "trivial" | "nontrivial" | "boundary"
    source: str


@dataclass(frozen=True)
class RHReport:
    zeros: tuple
    satisfied: bool
    borderline: bool


def _require_cycles(X):
    if rank(X) < 1:
        raise AcyclicGraph("graph is a tree; its zeta function is identically 1")


def edge_operators(X):
    """T_i = M_i - I where M_i(e, e') = 1 iff e, e' share their color-i endpoint."""
    E = X.num_edges
    arr = X.edge_array()
    cols = np.arange(E)
    ones = np.ones(E, dtype=np.int64)
    C1 = sp.csr_matrix((ones, (arr[:, 0], cols)), shape=(X.n1, E))
    C2 = sp.csr_matrix((ones, (arr[:, 1], cols)), shape=(X.n2, E))
    eye = sp.identity(E, dtype=np.int64, format="csr")
    T1 = (C1.T @ C1 - eye).tocsr()
    T2 = (C2.T @ C2 - eye).tocsr()
    return EdgeOperators(T1.astype(np.int64), T2.astype(np.int64))


def quadratic_relation_residual(T, q):
    """Max |entry| of T^2 - (q-1) T - q I; zero for a correct edge operator."""
    E = T.shape[0]
    R = T @ T - (q - 1) * T - q * sp.identity(E, dtype=np.int64, format="csr")
    R = R.tocsr()
    R.eliminate_zeros()
    return int(abs(R).max()) if R.nnz else 0


def zeta_inverse_det(X, max_edges=DEFAULT_MAX_EDGES, backend=None):
    """det(I - T1 T2 u) via the exact characteristic polynomial of T1 T2."""
    _require_cycles(X)
    if X.num_edges > max_edges:
        raise SizeLimitExceeded(f"|E| = {X.num_edges} exceeds the cap {max_edges}")
    ops = edge_operators(X)
    chi = exact.charpoly(ops.product(), backend=backend)
    # det(I - M u) = u^n chi(1/u): reverse the coefficient list
    return ZetaPolynomial(tuple(reversed(chi)))


def product_quadratics(chi, q1, q2):
    """prod_j (1 - (t_j - q1 - q2) u + q1 q2 u^2) over the roots t_j of ``chi``.

    Equals u^n chi((1 + q1 u)(1 + q2 u) / u); evaluated in exact integers.
    """
    n = len(chi) - 1
    base = [1, q1 + q2, q1 * q2]  # (1 + q1 u)(1 + q2 u)
    out = []
    power = [1]
    for k, a in enumerate(chi):
        if a:
            term = [0] * (n - k) + exact.poly_scale(power, a)
            out = exact.poly_add(out, term)
        power = exact.poly_mul(power, base)
    return out


def zeta_inverse_product(X, spectral=None):
    """(1-u)^(r-1) (1+q2 u)^(n2-n1) prod_j (1 - (sigma_j^2 - q1 - q2) u + q1 q2 u^2)."""
    _require_cycles(X)
    S = spectral if spectral is not None else spectrum(X)
    r = rank(X)
    poly = product_quadratics(list(S.char_poly_BBt), X.q1, X.q2)
    poly = exact.poly_mul(poly, exact.poly_pow([1, -1], r - 1))
    poly = exact.poly_mul(poly, exact.poly_pow([1, X.q2], X.n2 - X.n1))
    return ZetaPolynomial(tuple(poly))


def _cluster(values, tol):
    """Group sorted floats into (mean, count) clusters of near-equal values."""
    groups = []
    for v in values:
        if groups and abs(v - groups[-1][-1]) <= tol:
            groups[-1].append(v)
        else:
            groups.append([v])
    return [(sum(g) / len(g), len(g)) for g in groups]


def _snap_boundary(c, q1, q2, tol):
    bound = 2.0 * math.sqrt(q1 * q2)
    if abs(abs(c) - bound) <= tol * max(1.0, bound):
        return math.copysign(bound, c)
    return c


def factorize(X, zeta, spectral=None, tol=DEFAULT_TOL):
    """Split Z_X(u)^{-1} into St, ds, sph, nt factors and quadratics.

    Multiplicities come from the spectrum (zero singular values are counted by
    exact rank); the result is then checked against ``zeta`` exactly for the
    linear part and numerically for irrational quadratics.
    """
    _require_cycles(X)
    S = spectral if spectral is not None else spectrum(X)
    q1, q2 = X.q1, X.q2
    r = rank(X)
    z = S.n1 - S.rank_B

    nontrivial = sorted(S.sigma_sq[1:S.n1 - z])
    scale = max(1.0, S.sigma_sq[0])
    clusters = _cluster(nontrivial, CLUSTER_TOL * scale)

    # integer eigenvalues of B B^T are confirmed exactly against chi
    chi = list(S.char_poly_BBt)
    rounded = [(round(t), m) for t, m in clusters]
    all_integer = all(abs(t - ti) <= 1e-6 * scale for (t, _), (ti, _) in zip(clusters, rounded))
    if all_integer:
        expected = exact.poly_mul([-(1 + q1) * (1 + q2), 1], exact.poly_pow([0, 1], z))
        for t, m in rounded:
            expected = exact.poly_mul(expected, exact.poly_pow([-t, 1], m))
        all_integer = expected == chi
    if all_integer:
        quads = tuple((t - q1 - q2, m) for t, m in rounded)
    else:
        quads = tuple((_snap_boundary(t - q1 - q2, q1, q2, tol), m) for t, m in clusters)

    fac = ZetaFactorization(
        q1=q1, q2=q2,
        mult_St=r, mult_ds=(S.n2 - S.n1) + z, mult_sph=1, mult_nt=z,
        quadratics=quads, exact_quadratics=all_integer,
    )
    _check_reassembly(fac, zeta)
    return fac


def _check_reassembly(fac, zeta):
    coeffs = list(zeta.coeffs)
    rest = coeffs
    for name, (lin, m) in fac.linear_factors().items():
        for _ in range(m):
            try:
                rest = exact.poly_exact_div(rest, lin)
            except ArithmeticError:
                raise InconsistentFactorization(f"{name} factor multiplicity") from None
    n_quad = sum(m for _, m in fac.quadratics)
    if len(rest) - 1 != 2 * n_quad:
        raise InconsistentFactorization("degree of the quadratic part")
    q1q2 = fac.q1 * fac.q2
    if fac.exact_quadratics:
        prod = [1]
        for c, m in fac.quadratics:
            prod = exact.poly_mul(prod, exact.poly_pow([1, -c, q1q2], m))
        if prod != rest:
            raise InconsistentFactorization("exact quadratic product")
        return
    # compare in v = sqrt(q1 q2) u so every quadratic is 1 - tau v + v^2
    s = math.sqrt(q1q2)
    approx = np.array([1.0])
    for c, m in fac.quadratics:
        for _ in range(m):
            approx = np.convolve(approx, [1.0, -c / s, 1.0])
    scaled = np.array([_scaled_coeff(a, k, q1q2) for k, a in enumerate(rest)])
    err = np.abs(approx - scaled).max() / max(1.0, np.abs(scaled).max())
    if err > RECON_TOL:
        raise InconsistentFactorization(f"quadratic reconstruction error {err:.3g}")


def _scaled_coeff(a, k, q1q2):
    """a / q1q2^(k/2) as a float without overflowing on large ints."""
    val = a / q1q2 ** (k // 2)
    if k % 2:
        val /= math.sqrt(q1q2)
    return val


def _s_of(u, q1q2):
    if q1q2 == 1:
        return None
    return -cmath.log(u) / math.log(q1q2)


def _quadratic_roots(c, q1q2):
    disc = c * c - 4 * q1q2
    if abs(disc) <= 1e-12 * 4 * q1q2:
        disc = 0.0  # c was snapped onto +-2 sqrt(q1 q2): a double root
    if disc <= 0:
        root = cmath.sqrt(disc)
    else:
        root = math.sqrt(disc)
    return [(c + root) / (2 * q1q2), (c - root) / (2 * q1q2)]


def rh_report(X, factorization, tol=RH_TOL):
    """Zeros of Z_X(u)^{-1} and the graph Riemann Hypothesis verdict.

    Zeros come from the closed forms of the factors, never from a general
    root finder. Zeros with value 1, 1/(q1 q2) or -1/q2 are trivial. Any other
    zero must satisfy |u| = (q1 q2)^(-1/2); real zeros with Re(s) in {0, 1}
    are tagged ``boundary`` and count as violations (they come from a zero
    singular value, which the Ramanujan property excludes).
    """
    _require_cycles(X)
    fac = factorization
    q1, q2 = fac.q1, fac.q2
    q1q2 = q1 * q2
    critical = q1q2 ** -0.5
    trivial_values = (1.0, 1.0 / q1q2, -1.0 / q2)

    zeros = []

    def add(u, source):
        u = complex(u)
        s = _s_of(u, q1q2)
        if any(abs(u - t) <= 1e-12 for t in trivial_values):
            kind = "trivial"
        elif s is not None and abs(u.imag) <= 1e-15 and (
                abs(s.real) <= tol or abs(s.real - 1.0) <= tol):
            kind = "boundary"
        else:
            kind = "nontrivial"
        zeros.append(Zero(u=u, s=s, kind=kind, source=source))

    for name, (lin, m) in fac.linear_factors().items():
        for _ in range(m):
            add(-1.0 / lin[1], name)
    for c, m in fac.quadratics:
        for _ in range(m):
            for u in _quadratic_roots(float(c), q1q2):
                add(u, "quadratic")

    satisfied = True
    borderline = False
    for zr in zeros:
        if zr.kind == "trivial":
            continue
        gap = abs(abs(zr.u) - critical)
        if gap > tol:
            satisfied = False
        elif abs(zr.u.imag) <= 1e-15:
            borderline = True
    return RHReport(zeros=tuple(zeros), satisfied=satisfied, borderline=borderline)


def zeta_data(X, max_edges=DEFAULT_MAX_EDGES, backend=None):
    """Both zeta routes, factorization and RH report in one call."""
    S = spectrum(X, backend=backend)
    det_route = zeta_inverse_det(X, max_edges=max_edges, backend=backend)
    prod_route = zeta_inverse_product(X, S)
    fac = factorize(X, prod_route, S)
    return S, det_route, prod_route, fac, rh_report(X, fac)


def check_rh_ramanujan_equivalence(X):
    """(Ramanujan inequality holds) == (RH holds).

    For q1 != q2 the inequality is the full Ramanujan property; for q1 == q2
    a zero singular value satisfies the inequality with equality and is
    invisible to the zeta zeros, so the inequality is the right comparison.
    """
    from .spectral import ramanujan_inequality

    S = spectrum(X)
    zeta = zeta_inverse_product(X, S)
    fac = factorize(X, zeta, S)
    return ramanujan_inequality(S) == rh_report(X, fac).satisfied
