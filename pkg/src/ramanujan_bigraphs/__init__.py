"""Ramanujan bigraph certification, Hashimoto zeta functions and SU(3) Hecke modules."""
from .cert import CertificationReport, Decomposition, certify, conjecture_check, decompose
from .errors import CertError, InputError, InternalInconsistency
from .graph import (
    Bigraph,
    complete_bipartite,
    cycle,
    parse_edge_list,
    random_biregular,
    rank,
    read_edge_list,
    subdivision,
    validate,
    write_edge_list,
)
from .hecke import HeckeParams, params_from_graph, params_from_su3
from .spectral import SpectralData, Verdict, is_ramanujan, is_weakly_ramanujan, spectrum
from .zeta import (
    edge_operators,
    factorize,
    rh_report,
    zeta_inverse_det,
    zeta_inverse_product,
)

__version__ = "0.1.0"

__all__ = [
    "CertificationReport",
    "Decomposition",
    "certify",
    "conjecture_check",
    "decompose",
    "CertError",
    "InputError",
    "InternalInconsistency",
    "Bigraph",
    "complete_bipartite",
    "cycle",
    "parse_edge_list",
    "random_biregular",
    "rank",
    "read_edge_list",
    "subdivision",
    "validate",
    "write_edge_list",
    "HeckeParams",
    "params_from_graph",
    "params_from_su3",
    "SpectralData",
    "Verdict",
    "is_ramanujan",
    "is_weakly_ramanujan",
    "spectrum",
    "edge_operators",
    "factorize",
    "rh_report",
    "zeta_inverse_det",
    "zeta_inverse_product",
]
