"""Numerical geometry of the Riemann sphere of M_n(C)."""

from . import errors, hopf, matfun, opgraph, rsphere, spectral_lab
from .config import DEFAULTS, Tolerances
from .hopf import SphereVector, TangentAtSphere, hopf as hopf_map
from .matfun import PolarParts, herm_fun, op_norm, polar, principal_log_unitary, rank_eps
from .rsphere import (
    Geodesic,
    TangentVector,
    base_projection,
    exp_p0,
    finsler_dist,
    geodesic_eval,
    log_general,
    log_p0,
)

__all__ = [
    "DEFAULTS",
    "Geodesic",
    "PolarParts",
    "SphereVector",
    "TangentAtSphere",
    "TangentVector",
    "Tolerances",
    "base_projection",
    "errors",
    "exp_p0",
    "finsler_dist",
    "geodesic_eval",
    "herm_fun",
    "hopf",
    "hopf_map",
    "log_general",
    "log_p0",
    "matfun",
    "op_norm",
    "opgraph",
    "polar",
    "principal_log_unitary",
    "rank_eps",
    "rsphere",
    "spectral_lab",
]
