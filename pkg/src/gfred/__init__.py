"""Exact Lie-theoretic computations on vector fields of the circle acting on
the loop Borel algebra of sl2, with trigonometric-polynomial coefficients."""

from .algebra import (
    BorelLoop,
    CocycleParams,
    GElem,
    GHatElem,
    VectorField,
    borel_bracket,
    g_bracket,
    ghat_bracket,
    jacobi_defect,
    witt_bracket,
)
from .coadjoint import (
    DualElem,
    base_functional,
    coad,
    decompose,
    lambda_ok,
    orbit_form,
    pair,
    stabilizer_elem,
)
from .cocycles import cocycle_identity_defect, eval_c, eval_c1, eval_c2, eval_c3
from .errors import (
    CertificateNotFound,
    ConstraintViolated,
    FitFailed,
    GfredError,
    InconsistentLambda,
    NotTangent,
    ParseError,
    UnknownSuite,
)
from .reduction import (
    HillPoint,
    SL2Connection,
    ds_gauge,
    gf_coefficient_report,
    hill_to_dual,
    momentum_cocycle_res,
    momentum_cocycle_stab,
    residual_vector,
)
from .trigpoly import PiScalar, TrigPoly

__all__ = [
    "BorelLoop",
    "CocycleParams",
    "GElem",
    "GHatElem",
    "VectorField",
    "borel_bracket",
    "g_bracket",
    "ghat_bracket",
    "jacobi_defect",
    "witt_bracket",
    "DualElem",
    "base_functional",
    "coad",
    "decompose",
    "lambda_ok",
    "orbit_form",
    "pair",
    "stabilizer_elem",
    "cocycle_identity_defect",
    "eval_c",
    "eval_c1",
    "eval_c2",
    "eval_c3",
    "CertificateNotFound",
    "ConstraintViolated",
    "FitFailed",
    "GfredError",
    "InconsistentLambda",
    "NotTangent",
    "ParseError",
    "UnknownSuite",
    "HillPoint",
    "SL2Connection",
    "ds_gauge",
    "gf_coefficient_report",
    "hill_to_dual",
    "momentum_cocycle_res",
    "momentum_cocycle_stab",
    "residual_vector",
    "PiScalar",
    "TrigPoly",
]

__version__ = "0.1.0"
