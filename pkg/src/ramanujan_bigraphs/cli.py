"""Command-line interface.

Exit codes: 0 success, 1 usage error, 2 invalid input, 3 internal inconsistency.
"""
import argparse
import json
import sys
from concurrent.futures import ProcessPoolExecutor

import numpy as np

from . import graph as G
from . import hecke
from .cert import _num, certify, render_text
from .errors import CertError, InputError, InternalInconsistency
from .spectral import DEFAULT_TOL, feng_li_bound, is_ramanujan, spectrum
from .zeta import DEFAULT_MAX_EDGES, factorize, rh_report, zeta_inverse_det, zeta_inverse_product

EXIT_OK, EXIT_USAGE, EXIT_INPUT, EXIT_INTERNAL = 0, 1, 2, 3
BASES = ("K4", "K33", "petersen", "Kn")


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(f"{self.prog}: error: {message}")


def _emit(out, data, as_json, text):
    if as_json:
        out.write(json.dumps(data, indent=2) + "\n")
    else:
        out.write(text(data))


def _load(args):
    return G.read_edge_list(args.path, allow_multi=args.allow_multi)


def _complex(text):
    try:
        return complex(text.replace(" ", "").replace("i", "j"))
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a complex number: {text!r}") from None


def _cplx(z):
    return {"re": _num(z.real), "im": _num(z.imag)}


# -- subcommands -------------------------------------------------------------

def cmd_certify(args, out):
    X = _load(args)
    rep = certify(X, exact_mode=args.exact, tol=args.tol, max_edges=args.max_edges)
    _emit(out, rep.to_dict(), args.json, render_text)


def _spectrum_dict(X, S, args):
    mode = "exact" if args.exact else "numeric"
    return {
        "graph": {"n1": X.n1, "n2": X.n2, "q1": X.q1, "q2": X.q2},
        "sigma": [_num(s) for s in S.sigma],
        "rank_B": S.rank_B,
        "zero_multiplicity": S.zero_mult,
        "char_poly_BBt": [str(c) for c in S.char_poly_BBt],
        "lambda": None if S.lambda2 is None else _num(S.lambda2),
        "feng_li": _num(feng_li_bound(X.q1, X.q2)),
        "ramanujan": is_ramanujan(S, mode=mode, tol=args.tol).value,
    }


def _spectrum_text(d):
    g = d["graph"]
    return (f"graph: n1={g['n1']} n2={g['n2']} q1={g['q1']} q2={g['q2']}\n"
            f"singular values: {', '.join(f'{s:.10g}' for s in d['sigma'])}\n"
            f"zero eigenvalue multiplicity: {d['zero_multiplicity']}\n"
            f"lambda(X) = {d['lambda']}  Feng-Li = {d['feng_li']:.10g}\n"
            f"Ramanujan: {d['ramanujan']}\n")


def cmd_spectrum(args, out):
    X = _load(args)
    S = spectrum(X)
    _emit(out, _spectrum_dict(X, S, args), args.json, _spectrum_text)


def cmd_zeta(args, out):
    X = _load(args)
    S = spectrum(X)
    det_route = zeta_inverse_det(X, max_edges=args.max_edges)
    prod_route = zeta_inverse_product(X, S)
    if det_route.coeffs != prod_route.coeffs:
        raise InternalInconsistency("dual_route_zeta")
    fac = factorize(X, det_route, S, tol=args.tol)
    rh = rh_report(X, fac)
    data = {
        "zeta_coeffs": [str(c) for c in det_route.coeffs],
        "factorization": {
            "st": fac.mult_St, "ds": fac.mult_ds, "sph": fac.mult_sph, "nt": fac.mult_nt,
            "quadratics": [{"c": _num(c), "mult": m} for c, m in fac.quadratics],
        },
        "rh": {"satisfied": rh.satisfied, "borderline": rh.borderline,
               "zeros": [{"re": _num(z.u.real), "im": _num(z.u.imag), "class": z.kind}
                         for z in rh.zeros]},
    }

    def text(d):
        f = d["factorization"]
        lines = ["Z^-1 coefficients: " + " ".join(d["zeta_coeffs"]),
                 f"factors: St^{f['st']} ds^{f['ds']} sph^{f['sph']} nt^{f['nt']}"]
        lines += [f"  1 - ({qd['c']:.10g}) u + q1 q2 u^2  ^{qd['mult']}" for qd in f["quadratics"]]
        lines.append(f"RH: {'holds' if d['rh']['satisfied'] else 'fails'}")
        return "\n".join(lines) + "\n"

    _emit(out, data, args.json, text)


def _base_adjacency(base, n):
    if base == "K4":
        return G.complete_graph_adjacency(4)
    if base == "K33":
        return G.complete_bipartite_adjacency(3, 3)
    if base == "petersen":
        return G.petersen_adjacency()
    if n is None:
        raise UsageError("--base Kn needs --n")
    return G.complete_graph_adjacency(n)


def _need(args, *names):
    missing = [n for n in names if getattr(args, n) is None]
    if missing:
        raise UsageError(f"{args.model} needs " + ", ".join("--" + m.replace("_", "-") for m in missing))


def cmd_generate(args, out):
    if args.model == "complete_bipartite":
        _need(args, "m", "n")
        X = G.complete_bipartite(args.m, args.n)
    elif args.model == "subdivision":
        X = G.subdivision(_base_adjacency(args.base, args.n))
    else:
        _need(args, "n1", "n2", "q1", "q2", "seed")
        X = G.random_biregular(args.n1, args.n2, args.q1, args.q2, seed=args.seed,
                               allow_multi=args.allow_multi)
    if args.out:
        G.write_edge_list(X, args.out)
    else:
        out.write(G.serialize(X))


def _hecke_params(args):
    if args.su3:
        if args.q is None:
            raise UsageError("--su3 needs --q")
        return hecke.params_from_su3(args.q)
    if args.q is None or args.lam is None or args.lam_star is None:
        raise UsageError("give --su3 --q, or --q --lam --lam-star")
    return hecke.HeckeParams(args.q, args.lam, args.lam_star)


def _one_dim_dict(d):
    return {
        "label": d.label,
        "T": _num(d.t_value),
        "theta": _num(d.theta_value),
        "char_poly": [_num(c) for c in hecke.char_poly_module(d)],
        "tempered": hecke.is_tempered(d),
        "discrete_series": hecke.is_discrete_series(d),
    }


def hecke_dict(params, nu=None):
    data = {
        "params": {"q": _num(params.q), "lambda": _num(params.lam),
                   "lambda_star": _num(params.lam_star),
                   "q1": _num(params.q1), "q2": _num(params.q2)},
        "one_dimensionals": [_one_dim_dict(d) for d in hecke.one_dimensionals(params)],
    }
    if nu is not None:
        desc = hecke.principal_series(nu, params)
        unitary, edge = hecke.is_unitary(desc.nu, params, with_flag=True)
        module = {
            "kind": "principal_series",
            "nu": _cplx(desc.nu),
            "reducible": desc.reducible,
            "trace": _cplx(hecke.central_character(desc.nu, params)),
            "char_poly": [_cplx(complex(c)) for c in hecke.char_poly_module(desc)],
            "tempered": hecke.is_tempered(desc),
            "discrete_series": False,
            "unitary": unitary,
            "borderline": edge,
        }
        if desc.reducible:
            plus = abs(desc.nu.imag) <= hecke.POINT_TOL
            labels = ("sph", "St") if plus else ("nt", "ds")
            module["constituents"] = [_one_dim_dict(hecke.OneDim(lb, params)) for lb in labels]
        data["module"] = module
    return data


def _hecke_text(d):
    p = d["params"]
    lines = [f"q={p['q']} lambda={p['lambda']} lambda*={p['lambda_star']} "
             f"(q1={p['q1']}, q2={p['q2']})"]
    for od in d["one_dimensionals"]:
        lines.append(f"  {od['label']:>3}: T={od['T']:g} theta={od['theta']:g} "
                     f"tempered={od['tempered']} discrete={od['discrete_series']}")
    m = d.get("module")
    if m:
        lines.append(f"X(nu), nu = {m['nu']['re']:g}{m['nu']['im']:+g}i: "
                     f"reducible={m['reducible']} trace={m['trace']['re']:g}{m['trace']['im']:+g}i "
                     f"tempered={m['tempered']} unitary={m['unitary']}")
    return "\n".join(lines) + "\n"


def cmd_hecke(args, out):
    params = _hecke_params(args)
    _emit(out, hecke_dict(params, args.nu), args.json, _hecke_text)


def _scan_one(job):
    n1, n2, q1, q2, seed, tol, max_edges = job
    X = G.random_biregular(n1, n2, q1, q2, seed=seed)
    rep = certify(X, tol=tol, max_edges=max_edges)
    lam = rep.spectral.lambda2
    return {"seed": seed, "verdict": rep.verdict, "borderline": rep.borderline,
            "lambda": None if lam is None else _num(lam)}


def cmd_scan(args, out):
    jobs = [(args.n1, args.n2, args.q1, args.q2, args.seed + i, args.tol, args.max_edges)
            for i in range(args.count)]
    if args.workers > 1:
        with ProcessPoolExecutor(max_workers=args.workers) as pool:
            rows = list(pool.map(_scan_one, jobs))
    else:
        rows = [_scan_one(j) for j in jobs]
    fl = feng_li_bound(args.q1, args.q2)
    lams = [r["lambda"] for r in rows if r["lambda"] is not None]
    counts, edges = np.histogram(lams, bins=args.bins) if lams else ([], [])
    rama = sum(r["verdict"] == "Ramanujan" for r in rows)
    data = {
        "params": {"n1": args.n1, "n2": args.n2, "q1": args.q1, "q2": args.q2,
                   "count": args.count, "seed": args.seed},
        "feng_li": _num(fl),
        "fraction_ramanujan": _num(rama / len(rows)) if rows else 0.0,
        "graphs": rows,
        "histogram": [{"lo": _num(lo), "hi": _num(hi), "count": int(c)}
                      for lo, hi, c in zip(edges[:-1], edges[1:], counts)],
    }

    def text(d):
        lines = [f"{d['params']['count']} graphs, fraction Ramanujan "
                 f"{d['fraction_ramanujan']:.4g}",
                 f"Feng-Li sqrt(q1)+sqrt(q2) = {d['feng_li']:.6g}"]
        for b in d["histogram"]:
            mark = "*" if b["lo"] <= d["feng_li"] < b["hi"] else " "
            lines.append(f"{mark}[{b['lo']:.4f}, {b['hi']:.4f}) {'#' * b['count']} {b['count']}")
        return "\n".join(lines) + "\n"

    _emit(out, data, args.json, text)


# -- parser ------------------------------------------------------------------

def build_parser():
    common = _Parser(add_help=False)
    common.add_argument("--json", action="store_true", help="emit JSON")
    common.add_argument("--tol", type=float, default=DEFAULT_TOL)
    common.add_argument("--exact", action="store_true", help="exact Sturm-sequence verdict")
    common.add_argument("--allow-multi", action="store_true", help="accept parallel edges")
    common.add_argument("--max-edges", type=int, default=DEFAULT_MAX_EDGES)
    common.add_argument("--seed", type=int)

    p = _Parser(prog="ramanujan-bigraphs",
                description="Certify Ramanujan bigraphs and compute their zeta functions.")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    for name, fn, helptext in (("certify", cmd_certify, "full certification report"),
                               ("spectrum", cmd_spectrum, "singular values and verdict"),
                               ("zeta", cmd_zeta, "reciprocal zeta polynomial and RH")):
        sp_ = sub.add_parser(name, parents=[common], help=helptext)
        sp_.add_argument("path")
        sp_.set_defaults(func=fn)

    g = sub.add_parser("generate", parents=[common], help="write an edge-list file")
    g.add_argument("model", choices=("complete_bipartite", "subdivision", "random_biregular"))
    g.add_argument("--m", type=int)
    g.add_argument("--n", type=int)
    g.add_argument("--base", choices=BASES, default="K4")
    for k in ("n1", "n2", "q1", "q2"):
        g.add_argument(f"--{k}", type=int)
    g.add_argument("-o", "--out")
    g.set_defaults(func=cmd_generate)

    h = sub.add_parser("hecke", parents=[common], help="Hecke module classification")
    h.add_argument("--su3", action="store_true")
    h.add_argument("--q", type=float)
    h.add_argument("--lam", type=float)
    h.add_argument("--lam-star", type=float)
    h.add_argument("--nu", type=_complex)
    h.set_defaults(func=cmd_hecke)

    s = sub.add_parser("scan", parents=[common], help="certify random biregular graphs")
    for k in ("n1", "n2", "q1", "q2"):
        s.add_argument(f"--{k}", type=int, required=True)
    s.add_argument("--count", type=int, default=10)
    s.add_argument("--workers", type=int, default=1)
    s.add_argument("--bins", type=int, default=10)
    s.set_defaults(func=cmd_scan, seed=0)
    return p


def run(argv=None, out=None, err=None):
    out = out or sys.stdout
    err = err or sys.stderr
    try:
        args = build_parser().parse_args(argv)
        if args.command == "scan" and args.seed is None:
            args.seed = 0
        args.func(args, out)
    except UsageError as exc:
        err.write(f"{exc}\n")
        return EXIT_USAGE
    except InternalInconsistency as exc:
        err.write(f"internal error: {exc}\n")
        return EXIT_INTERNAL
    except (InputError, OSError) as exc:
        err.write(f"error: {type(exc).__name__}: {exc}\n")
        return EXIT_INPUT
    except CertError as exc:
        err.write(f"internal error: {type(exc).__name__}: {exc}\n")
        return EXIT_INTERNAL
    return EXIT_OK


def main():
    sys.exit(run())
