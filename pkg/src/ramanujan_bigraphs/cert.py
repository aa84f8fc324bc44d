"""Certification: spectrum, zeta and Hecke modules tied together with cross-checks."""
import json
import math
from dataclasses import dataclass, field
from fractions import Fraction

from . import exact, hecke
from .errors import InternalInconsistency
from .graph import rank
from .spectral import (
    DEFAULT_TOL,
    Verdict,
    is_ramanujan,
    ramanujan_inequality,
    spectrum,
)
from .zeta import (
    DEFAULT_MAX_EDGES,
    edge_operators,
    factorize,
    quadratic_relation_residual,
    rh_report,
    zeta_inverse_det,
    zeta_inverse_product,
)

FORMAT_VERSION = 1
SIG_DIGITS = 12

RAMANUJAN = "Ramanujan"
WEAKLY_ONLY = "WeaklyRamanujanOnly"
NOT_WEAKLY = "NotWeaklyRamanujan"


@dataclass(frozen=True)
class Decomposition:
    """Hecke modules with their multiplicities in Z_X(u)^{-1}.

    ``entries`` holds ``(descriptor, multiplicity, trace)`` triples; ``trace``
    is Tr(theta) for principal series and None for one-dimensional modules.
    """

    entries: tuple

    def degree(self):
        return sum(m * (len(hecke.char_poly_module(d)) - 1) for d, m, _ in self.entries)

    def multiplicity(self, label):
        return sum(m for d, m, _ in self.entries
                   if isinstance(d, hecke.OneDim) and d.label == label)


@dataclass(frozen=True)
class CertificationReport:
    graph: object
    rank: int
    verdict: str
    borderline: bool
    mode: str
    spectral: object
    zeta: object
    factorization: object
    rh: object
    decomposition: Decomposition
    consistency: tuple = field(default=())

    def to_dict(self):
        return report_dict(self)

    def to_json(self):
        return json.dumps(self.to_dict(), indent=2, sort_keys=False) + "\n"

    def summary(self):
        return render_text(self.to_dict())


def decompose(X, factorization=None, params=None):
    """Map a zeta factorization to Hecke modules over ``params_from_graph``."""
    if factorization is None:
        S = spectrum(X)
        factorization = factorize(X, zeta_inverse_product(X, S), S)
    fac = factorization
    params = params or hecke.params_from_graph(X.q1, X.q2)
    entries = []
    for label, m in (("St", fac.mult_St), ("sph", fac.mult_sph),
                     ("ds", fac.mult_ds), ("nt", fac.mult_nt)):
        if m:
            entries.append((hecke.OneDim(label, params), m, None))
    for tr, m in fac.traces():
        nu = hecke.trace_to_parameter(tr, params)
        entries.append((hecke.principal_series(nu, params), m, tr))
    return Decomposition(tuple(entries))


def conjecture_check(decomposition):
    """Every module other than sph is tempered."""
    return all(hecke.is_tempered(d) for d, _, _ in decomposition.entries
               if not (isinstance(d, hecke.OneDim) and d.label == "sph"))


def _nt_from_zeta(X, zeta):
    """mult_nt read off the zeta polynomial alone, for the weak-Ramanujan check.

    Only the 1 + q1 u factor can carry it: a quadratic 1 - c u + q1 q2 u^2 with
    root -1/q1 forces sigma = 0, which the factorization already splits off.
    When q1 == q2 the ds and nt factors coincide and share the count evenly.
    """
    m = exact.multiplicity_of(list(zeta.coeffs), [1, X.q1])
    return m // 2 if X.q1 == X.q2 else m


def _verdict(S, mode, tol):
    v = is_ramanujan(S, mode=mode, tol=tol)
    if v in (Verdict.YES, Verdict.BORDERLINE):
        return RAMANUJAN, v is Verdict.BORDERLINE
    if S.rank_B == S.n1:
        return WEAKLY_ONLY, False
    return NOT_WEAKLY, False


def certify(X, exact_mode=False, tol=DEFAULT_TOL, max_edges=DEFAULT_MAX_EDGES, backend=None):
    """Certify ``X`` and run every consistency check; raises on any failure.

    The equivalences with the Ramanujan property are checked against the
    inequality |sigma_j^2 - q1 - q2| <= 2 sqrt(q1 q2): when q1 == q2 a zero
    singular value is on the boundary of that range and is invisible to the
    zeta zeros and to temperedness, so only the weak-Ramanujan check sees it.
    """
    S = spectrum(X, backend=backend)
    mode = "exact" if exact_mode else "numeric"
    verdict, borderline = _verdict(S, mode, tol)

    det_route = zeta_inverse_det(X, max_edges=max_edges, backend=backend)
    prod_route = zeta_inverse_product(X, S)
    fac = factorize(X, prod_route, S, tol=tol)
    rh = rh_report(X, fac)
    dec = decompose(X, fac)
    ops = edge_operators(X)
    inequality = ramanujan_inequality(S, tol=tol)
    weakly = S.rank_B == S.n1
    lam1_sq = (1 + X.q1) * (1 + X.q2)
    r = rank(X)

    checks = [
        ("conjecture_iff_ramanujan", conjecture_check(dec) == inequality),
        ("rh_iff_ramanujan", rh.satisfied == inequality),
        ("nt_free_iff_weakly_ramanujan", (_nt_from_zeta(X, det_route) == 0) == weakly),
        ("dual_route_zeta", det_route.coeffs == prod_route.coeffs),
        ("degree_identity",
         det_route.degree == X.num_edges == (r - 1) + (X.n2 - X.n1) + 2 * X.n1
         and dec.degree() == X.num_edges),
        ("multiplicity_identity",
         fac.mult_St == r and fac.mult_sph == 1
         and fac.mult_nt == fac.mult_ds - (X.n2 - X.n1)),
        ("trivial_zeros",
         det_route(1) == 0 and exact.poly_eval(det_route.coeffs, Fraction(1, X.q1 * X.q2)) == 0),
        ("trivial_singular_value", exact.poly_eval(list(S.char_poly_BBt), lam1_sq) == 0),
        ("operator_relations",
         quadratic_relation_residual(ops.T1, X.q1) == 0
         and quadratic_relation_residual(ops.T2, X.q2) == 0
         and (ops.T1 != ops.T1.T).nnz == 0 and (ops.T2 != ops.T2.T).nnz == 0),
        ("verdict_monotone", verdict != RAMANUJAN or weakly),
    ]
    for name, ok in checks:
        if not ok:
            raise InternalInconsistency(name)
    return CertificationReport(
        graph=X, rank=r, verdict=verdict, borderline=borderline, mode=mode,
        spectral=S, zeta=det_route, factorization=fac, rh=rh,
        decomposition=dec, consistency=tuple(checks),
    )


def _num(x):
    """Round to SIG_DIGITS significant digits so output is platform-stable."""
    x = float(x)
    if x == 0 or not math.isfinite(x):
        return 0.0 if x == 0 else x
    out = float(f"{x:.{SIG_DIGITS - 1}e}")
    return 0.0 if out == 0 else out


def report_dict(rep):
    X = rep.graph
    S = rep.spectral
    margins = (None,) + S.margins()
    params = hecke.params_from_graph(X.q1, X.q2)
    quads = []
    for d, m, tr in rep.decomposition.entries:
        if isinstance(d, hecke.PrincipalSeries):
            quads.append({
                "trace": _num(tr),
                "mult": m,
                "nu": {"re": _num(d.nu.real), "im": _num(d.nu.imag)},
                "tempered": hecke.is_tempered(d),
            })
    fac = rep.factorization
    return {
        "format_version": FORMAT_VERSION,
        "graph": {"n1": X.n1, "n2": X.n2, "q1": X.q1, "q2": X.q2,
                  "edges": [list(e) for e in sorted(X.edges)]},
        "rank": rep.rank,
        "verdict": rep.verdict,
        "borderline": rep.borderline,
        "mode": rep.mode,
        "hecke": {"q": _num(params.q), "lambda": _num(params.lam),
                  "lambda_star": _num(params.lam_star)},
        "spectrum": [{"sigma": _num(s), "margin": None if mg is None else _num(mg)}
                     for s, mg in zip(S.sigma, margins)],
        "zeta_coeffs": [str(c) for c in rep.zeta.coeffs],
        "factorization": {
            "st": fac.mult_St, "ds": fac.mult_ds, "sph": fac.mult_sph, "nt": fac.mult_nt,
            "quadratics": quads,
        },
        "rh": {
            "satisfied": rep.rh.satisfied,
            "borderline": rep.rh.borderline,
            "zeros": [{"re": _num(z.u.real), "im": _num(z.u.imag), "class": z.kind}
                      for z in rep.rh.zeros],
        },
        "consistency": [{"name": n, "pass": bool(ok)} for n, ok in rep.consistency],
    }


def render_text(d):
    """Human-readable rendering of a report dictionary."""
    g = d["graph"]
    lines = [
        f"graph: n1={g['n1']} n2={g['n2']} q1={g['q1']} q2={g['q2']} "
        f"|E|={len(g['edges'])} rank={d['rank']}",
        f"verdict: {d['verdict']}" + (" (borderline)" if d["borderline"] else ""),
    ]
    if d["borderline"]:
        lines.append("  a margin is within tolerance of equality; rerun with --exact")
    sig = ", ".join(f"{s['sigma']:.6g}" for s in d["spectrum"])
    lines.append(f"singular values: {sig}")
    f = d["factorization"]
    lines.append(f"factors: St^{f['st']} ds^{f['ds']} sph^{f['sph']} nt^{f['nt']}")
    for qd in f["quadratics"]:
        tag = "tempered" if qd["tempered"] else "not tempered"
        lines.append(f"  X(nu) trace={qd['trace']:.6g} mult={qd['mult']} "
                     f"nu={qd['nu']['re']:.6g}{qd['nu']['im']:+.6g}i {tag}")
    nontriv = sum(1 for z in d["rh"]["zeros"] if z["class"] != "trivial")
    lines.append(f"RH: {'holds' if d['rh']['satisfied'] else 'fails'} "
                 f"({nontriv} nontrivial zeros)")
    failed = [c["name"] for c in d["consistency"] if not c["pass"]]
    lines.append(f"consistency: {len(d['consistency']) - len(failed)}/"
                 f"{len(d['consistency'])} checks pass")
    return "\n".join(lines) + "\n"
