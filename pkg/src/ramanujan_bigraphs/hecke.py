"""Rank-one Iwahori-Hecke algebra with unequal parameters (q^lam, q^lam_star).

Bernstein-Lusztig presentation: generators T and theta with
    T^2 = (q^lam - 1) T + q^lam,
    theta T - T theta^{-1} = (q^lam - 1) theta + (q^{(lam+lam*)/2} - q^{(lam-lam*)/2}).
For SU(3), lam = 3 and lam* = 1. Spectral parameters nu live in
C / (2 pi i / log q) modulo nu ~ -nu.
"""
import cmath
import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .errors import InvalidQ, PoleAtMinusMu, ThetaSingular, UnsupportedXi

POINT_TOL = 1e-12
MATRIX_TOL = 1e-10
ONE_DIM_LABELS = ("St", "ds", "sph", "nt")


@dataclass(frozen=True)
class HeckeParams:
    q: float
    lam: float
    lam_star: float

    def __post_init__(self):
        if not self.q > 1:
            raise InvalidQ(f"q must exceed 1, got {self.q}")
        if not self.lam >= self.lam_star >= 0:
            raise ValueError("need lam >= lam_star >= 0")

    @property
    def q1(self):
        return self.q ** self.lam

    @property
    def q2(self):
        return self.q ** self.lam_star

    @property
    def log_q(self):
        return math.log(self.q)

    @property
    def period(self):
        """Imaginary period 2 pi / log q of the parameter space."""
        return 2 * math.pi / self.log_q

    @property
    def mu_plus(self):
        return (self.lam + self.lam_star) / 2

    @property
    def mu_minus(self):
        return (self.lam - self.lam_star) / 2

    @property
    def shift(self):
        """The constant q^{(lam+lam*)/2} - q^{(lam-lam*)/2} of the commutation relation."""
        return self.q ** self.mu_plus - self.q ** self.mu_minus


def params_from_su3(q):
    if not q > 1:
        raise InvalidQ(f"q must exceed 1, got {q}")
    return HeckeParams(q, 3, 1)


def _int_log(a, b):
    """k with b**k == a for integers, else None."""
    k, x = 0, 1
    while x < a:
        x *= b
        k += 1
    return k if x == a else None


def params_from_graph(q1, q2):
    """Hecke parameters with q^lam = q1 and q^lam_star = q2 for a graph.

    q = q2 and lam_star = 1 when q2 > 1 (so q1 = q2^3 gives the SU(3) data);
    q = q1, lam = 1, lam_star = 0 when q2 = 1; for cycles (q1 = q2 = 1) the
    algebra degenerates and q = 2, lam = lam_star = 0 is used as a scale.
    """
    if q2 >= 2:
        k = _int_log(q1, q2)
        lam = k if k is not None else math.log(q1) / math.log(q2)
        return HeckeParams(q2, lam, 1)
    if q1 >= 2:
        return HeckeParams(q1, 1, 0)
    return HeckeParams(2, 0, 0)


def canonical_nu(nu, params):
    """Representative of nu modulo 2 pi i / log q and nu ~ -nu.

    Re nu >= 0 and Im nu * log q in (-pi, pi]; when Re nu == 0 additionally
    Im nu * log q in [0, pi].
    """
    nu = complex(nu)
    P = params.period

    def wrap(im):
        im = math.fmod(im, P)
        if im > P / 2:
            im -= P
        elif im <= -P / 2:
            im += P
        return im

    re, im = nu.real, wrap(nu.imag)
    if abs(re) <= POINT_TOL:
        re = 0.0
    if re < 0:
        re, im = -re, wrap(-im)
    if re == 0.0 and im < 0:
        im = wrap(-im)
    if abs(im - P / 2) <= POINT_TOL:
        im = P / 2
    if abs(im) <= POINT_TOL:
        im = 0.0
    return complex(re, im)


def _weight(params, nu):
    return cmath.exp(nu * params.log_q)


def principal_series_matrices(nu, params):
    """T and theta on X(nu) in the basis {(T+1) x 1_nu, (T - q^lam) x 1_nu}."""
    q, lam = params.q, params.lam
    a = params.shift
    ql = q ** lam
    qnu = _weight(params, nu)
    qmnu = 1 / qnu
    T = np.array([[ql, 0], [0, -1]], dtype=complex)
    theta = np.array([
        [ql * qmnu + ql * qnu + a, ql * qmnu - qnu + a],
        [qmnu - ql * qnu - a, qmnu + qnu - a],
    ], dtype=complex) / (ql + 1)
    return T, theta


def commutation_residual(T, theta, params):
    """Max |entry| of theta T - T theta^{-1} - (q^lam - 1) theta - shift I."""
    lhs = theta @ T - T @ np.linalg.inv(theta)
    rhs = (params.q1 - 1) * theta + params.shift * np.eye(2)
    return float(np.abs(lhs - rhs).max())


def _same_point(a, b, params):
    """Equality in C / (2 pi i / log q) within POINT_TOL."""
    d = a - b
    P = params.period
    im = math.fmod(d.imag, P)
    im = min(abs(im), P - abs(im))
    return abs(d.real) <= POINT_TOL and im <= POINT_TOL


def reducibility_points(params):
    return (
        complex(params.mu_plus, 0.0),
        canonical_nu(complex(params.mu_minus, math.pi / params.log_q), params),
    )


def is_reducible(nu, params):
    nu = canonical_nu(nu, params)
    for pt in reducibility_points(params):
        if _same_point(nu, pt, params) or _same_point(-nu, pt, params):
            return True
    return False


@dataclass(frozen=True)
class PrincipalSeries:
    nu: complex
    params: HeckeParams
    reducible: bool

    @property
    def dim(self):
        return 2

    @property
    def label(self):
        return "X(nu)"

    def weights(self):
        w = _weight(self.params, self.nu)
        return (w, 1 / w)


@dataclass(frozen=True)
class OneDim:
    label: str
    params: HeckeParams

    def __post_init__(self):
        if self.label not in ONE_DIM_LABELS:
            raise ValueError(f"unknown one-dimensional module {self.label!r}")

    @property
    def dim(self):
        return 1

    @property
    def t_value(self):
        return -1.0 if self.label in ("St", "ds") else self.params.q1

    @property
    def theta_value(self):
        p = self.params
        return {
            "St": p.q ** -p.mu_plus,
            "ds": -(p.q ** -p.mu_minus),
            "sph": p.q ** p.mu_plus,
            "nt": -(p.q ** p.mu_minus),
        }[self.label]

    def weights(self):
        return (self.theta_value,)


def principal_series(nu, params):
    nu = canonical_nu(nu, params)
    return PrincipalSeries(nu, params, is_reducible(nu, params))


def one_dimensionals(params):
    return tuple(OneDim(label, params) for label in ONE_DIM_LABELS)


def scalar_relation_residual(t, theta, params):
    """|theta t - t / theta - (q^lam - 1) theta - shift| for scalar actions."""
    return abs(theta * t - t / theta - (params.q1 - 1) * theta - params.shift)


def char_poly_module(desc):
    """p(u) = det(1 - phi(T1 T2) u), lowest degree first."""
    p = desc.params
    q1, q2 = p.q1, p.q2
    if isinstance(desc, OneDim):
        return {
            "St": [1.0, -1.0],
            "ds": [1.0, q2],
            "sph": [1.0, -q1 * q2],
            "nt": [1.0, q1],
        }[desc.label]
    trace = central_character(desc.nu, p)
    mid = -math.sqrt(q1 * q2) * trace
    if abs(mid.imag) <= MATRIX_TOL * max(1.0, abs(mid)):
        mid = mid.real
    return [1.0, mid, q1 * q2]


def is_tempered(desc):
    return all(abs(w) <= 1 + POINT_TOL for w in desc.weights())


def is_discrete_series(desc):
    if isinstance(desc, PrincipalSeries):
        return False
    return abs(desc.theta_value) < 1 - POINT_TOL


def is_unitary(nu, params, with_flag=False):
    """Unitary subquotients of X(nu).

    Real nu with |nu| <= (lam+lam*)/2, Re nu = 0, or Im nu = pi/log q with
    |Re nu| <= (lam-lam*)/2. With ``with_flag`` also returns whether nu sits
    within tolerance of a range endpoint.
    """
    nu = canonical_nu(nu, params)
    half = math.pi / params.log_q
    re, im = nu.real, nu.imag
    on_real = abs(im) <= POINT_TOL
    on_half = abs(abs(im) - half) <= POINT_TOL
    unitary = (
        (on_real and re <= params.mu_plus + POINT_TOL)
        or re <= POINT_TOL
        or (on_half and re <= params.mu_minus + POINT_TOL)
    )
    if not with_flag:
        return unitary
    borderline = (on_real and abs(re - params.mu_plus) <= POINT_TOL) or (
        on_half and abs(re - params.mu_minus) <= POINT_TOL)
    return unitary, borderline


def central_character(nu, params):
    """Scalar by which theta + theta^{-1} acts on X(nu): q^nu + q^-nu."""
    w = _weight(params, nu)
    return w + 1 / w


def theta_sum_matrix(nu, params):
    _, theta = principal_series_matrices(nu, params)
    if abs(np.linalg.det(theta)) < 1e-300:
        raise ThetaSingular("theta is not invertible")
    return theta + np.linalg.inv(theta)


def eigenvalue_to_parameter(lam_j, params, q1=None, q2=None):
    """Canonical nu with q^nu + q^-nu = (lam_j^2 - q1 - q2) / sqrt(q1 q2).

    ``q1``/``q2`` default to the algebra's q^lam, q^lam_star; graph callers pass
    their integer valencies to avoid rounding in q**lam.
    """
    q1 = params.q1 if q1 is None else q1
    q2 = params.q2 if q2 is None else q2
    trace = (lam_j * lam_j - q1 - q2) / math.sqrt(q1 * q2)
    return trace_to_parameter(trace, params)


def trace_to_parameter(trace, params):
    """Solve x + 1/x = trace for x = q^nu and return canonical nu."""
    lq = params.log_q
    if abs(trace) <= 2:
        return canonical_nu(complex(0.0, math.acos(trace / 2) / lq), params)
    x = (abs(trace) + math.sqrt(trace * trace - 4)) / 2
    re = math.log(x) / lq
    im = 0.0 if trace > 0 else math.pi / lq
    return canonical_nu(complex(re, im), params)


def parameter_to_eigenvalue_sq(nu, params, q1=None, q2=None):
    q1 = params.q1 if q1 is None else q1
    q2 = params.q2 if q2 is None else q2
    return q1 + q2 + math.sqrt(q1 * q2) * central_character(nu, params).real


# -- graded Hecke algebra ----------------------------------------------------

@dataclass(frozen=True)
class GradedParams:
    mu: float
    origin: str  # "0" or "pi i/log q"


def graded_parameter(xi, params):
    """Graded algebra H_mu attached to the imaginary part xi of nu."""
    xi = complex(xi)
    if abs(xi) <= POINT_TOL:
        return GradedParams(params.mu_plus, "0")
    if abs(xi.real) <= POINT_TOL and abs(xi.imag - math.pi / params.log_q) <= POINT_TOL:
        return GradedParams(params.mu_minus, "pi i/log q")
    raise UnsupportedXi(f"xi = {xi} gives an abelian graded algebra")


def _matrix(rows, exact):
    return np.array(rows, dtype=object if exact else complex)


def _is_exact(*vals):
    return all(isinstance(v, (int, Fraction)) for v in vals)


def graded_module_matrices(nu, gp):
    """s and epsilon on the principal series in the basis {1 x 1_nu, s x 1_nu}."""
    mu = gp.mu
    ex = _is_exact(nu, mu)
    S = _matrix([[0, 1], [1, 0]], ex)
    E = _matrix([[nu, 2 * mu], [0, -nu]], ex)
    return S, E


def graded_module_matrices_pm(nu, gp):
    """The same action in the basis {(1+s) x 1_nu, (1-s) x 1_nu}."""
    mu = gp.mu
    ex = _is_exact(nu, mu)
    S = _matrix([[1, 0], [0, -1]], ex)
    E = _matrix([[mu, nu - mu], [nu + mu, -mu]], ex)
    return S, E


def graded_intertwiner(nu, gp):
    """A(nu): Xbar(nu) -> Xbar(-nu) in the basis {(1+s) x 1, (1-s) x 1}.

    The map x |-> x (eps s - mu) / (nu + mu); diagonal with entries 1 and
    (mu - nu) / (mu + nu).
    """
    mu = gp.mu
    if nu + mu == 0:
        raise PoleAtMinusMu("A(nu) has a pole at nu = -mu")
    ex = _is_exact(nu, mu)
    ratio = Fraction(mu - nu) / Fraction(mu + nu) if ex else (mu - nu) / (mu + nu)
    return _matrix([[1, 0], [0, ratio]], ex)


def graded_form_is_psd(nu, gp):
    """Positivity of the Hermitian form on Xbar(nu) for real nu.

    Uses the unnormalized operator diag(mu + nu, mu - nu), which is A(nu) times
    mu + nu and stays finite at nu = -mu.
    """
    mu = gp.mu
    return mu + nu >= 0 and mu - nu >= 0
