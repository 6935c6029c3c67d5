"""Weierstrass-type functions and their p-th variation along b-adic partitions."""

from .errors import (
    CapacityError,
    ContractError,
    DomainError,
    FormatError,
    FracvarError,
    HypothesisError,
    InvalidWaveError,
    NoBracketError,
    ShapeError,
    UnsupportedSignError,
    UnsupportedSpecError,
)
from .ingest import SampledPath, load_csv, multiscale_variation, save_csv
from .stochastic import (
    DigitPath,
    NonzeroCertificate,
    PathFunctionals,
    ZMomentEstimate,
    enumerate_variation,
    exhaustive_bound_check,
    nonzero_certificate,
    path_functionals,
    z_moment,
    z_samples,
)
from .variation import (
    IndexEstimate,
    RieszCurve,
    VariationCurve,
    check_regime_bounds,
    classify_trend,
    estimate_variation_index,
    pth_variation,
    riesz_normalized_curve,
    riesz_variation,
    variation_curve,
)
from .waves import WavePhi, certify_holder, eval_wave, parse_wave, slope, slopes
from .weights import (
    RegimeReport,
    WeightPsi,
    classify_regime,
    estimate_alpha,
    eval_weight,
    parse_weight,
    verify_submultiplicative,
)
from .wtf import (
    GridPoint,
    SignRule,
    WtfSpec,
    check_holder_bounds,
    eval_f,
    eval_f_grid,
    holder_bound,
)
from ._numerics import BoundReport, CertificateReport, set_threads

__version__ = "0.1.0"

__all__ = [
    "BoundReport",
    "CapacityError",
    "CertificateReport",
    "ContractError",
    "DigitPath",
    "DomainError",
    "FormatError",
    "FracvarError",
    "GridPoint",
    "HypothesisError",
    "IndexEstimate",
    "InvalidWaveError",
    "NoBracketError",
    "NonzeroCertificate",
    "PathFunctionals",
    "RegimeReport",
    "RieszCurve",
    "SampledPath",
    "ShapeError",
    "SignRule",
    "UnsupportedSignError",
    "UnsupportedSpecError",
    "VariationCurve",
    "WavePhi",
    "WeightPsi",
    "WtfSpec",
    "ZMomentEstimate",
    "certify_holder",
    "check_holder_bounds",
    "check_regime_bounds",
    "classify_regime",
    "classify_trend",
    "enumerate_variation",
    "estimate_alpha",
    "estimate_variation_index",
    "eval_f",
    "eval_f_grid",
    "eval_wave",
    "eval_weight",
    "exhaustive_bound_check",
    "holder_bound",
    "load_csv",
    "multiscale_variation",
    "nonzero_certificate",
    "parse_wave",
    "parse_weight",
    "path_functionals",
    "pth_variation",
    "riesz_normalized_curve",
    "riesz_variation",
    "save_csv",
    "set_threads",
    "slope",
    "slopes",
    "variation_curve",
    "verify_submultiplicative",
    "z_moment",
    "z_samples",
]
