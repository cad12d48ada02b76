"""Concrete geometry of W and of quadric sections X = W ∩ Ω."""

from .aut import AutReport, aut_suite, eigen_chain_from_v5, eigen_multiplicities
from .conics import ConicRecord, EnlargeField, classify_conic, conic_from_plane, intersection_length, same_conic
from .core import Degenerate, ModelCorruption, WModel, build_w_model, linear_section_degree, quadric_evaluation_rank
from .cubic import (
    CubicInput,
    DegenerateBisecant,
    LineData,
    PreconditionError,
    TwistedCubicParam,
    certify,
    random_input,
    same_curve,
    twisted_cubic,
)
from .kappa import gamma0_check, kappa, kappa_inverse, kappa_roundtrip
from .modelio import dumps, loads
from .planes import m_space, plane_incidences, reducibility_scan
from .threefold import (
    NonGenericOmega,
    XModel,
    build_X,
    elliptic_quartic,
    iota,
    rho_conic,
    sigma_conic,
    sigma_incidences,
    x_geometry,
)
from .zerodim import DegreeCertificate, zero_dim_certificate

__all__ = [
    "AutReport",
    "ConicRecord",
    "CubicInput",
    "DegreeCertificate",
    "Degenerate",
    "DegenerateBisecant",
    "EnlargeField",
    "LineData",
    "ModelCorruption",
    "NonGenericOmega",
    "PreconditionError",
    "TwistedCubicParam",
    "WModel",
    "XModel",
    "aut_suite",
    "build_X",
    "build_w_model",
    "certify",
    "classify_conic",
    "conic_from_plane",
    "dumps",
    "eigen_chain_from_v5",
    "eigen_multiplicities",
    "elliptic_quartic",
    "gamma0_check",
    "intersection_length",
    "iota",
    "kappa",
    "kappa_inverse",
    "kappa_roundtrip",
    "linear_section_degree",
    "loads",
    "m_space",
    "plane_incidences",
    "quadric_evaluation_rank",
    "random_input",
    "reducibility_scan",
    "rho_conic",
    "same_conic",
    "same_curve",
    "sigma_conic",
    "sigma_incidences",
    "twisted_cubic",
    "x_geometry",
    "zero_dim_certificate",
]
