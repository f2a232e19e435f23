"""Exact Hilbert-Samuel functions and Hilbert coefficients of parameter
ideals in quotient rings of polynomial rings."""

__version__ = "0.1.0"

from .exactalg import QQ, GF32003, ExactMatrix, FieldConfig, FieldElement, prime_field
from .groebner import (
    GroebnerBasis,
    IdealHandle,
    ideal,
    ideal_equal,
    ideal_power,
    ideal_product,
    ideal_sum,
    intersect,
    local_colength,
    maximal_ideal,
    normal_form,
    saturate,
)
from .hilbert import (
    HilbertReport,
    ParameterIdealSpec,
    QuotientRingSpec,
    extract_coeffs,
    hilbert_report,
    hs_function,
    is_reduction,
    k_plus_j_hilbert,
    lambda_map,
    parameter_ideal,
    sample_reductions,
)
from .polyring import DEGREVLEX, LEX, MonomialOrder, Polynomial, RingSpec, parse_poly
from .secmethods import (
    ArtinAlgebra,
    action_pair,
    annihilator_length,
    artin_algebra,
    e1_e2_via_kernel,
    e1_via_slice,
    is_d_sequence,
    is_superficial,
    sally_lengths,
    sally_rank,
    tn_length,
    unmixed_component,
)

__all__ = [
    "QQ",
    "GF32003",
    "ExactMatrix",
    "FieldConfig",
    "FieldElement",
    "prime_field",
    "GroebnerBasis",
    "IdealHandle",
    "ideal",
    "ideal_equal",
    "ideal_power",
    "ideal_product",
    "ideal_sum",
    "intersect",
    "local_colength",
    "maximal_ideal",
    "normal_form",
    "saturate",
    "HilbertReport",
    "ParameterIdealSpec",
    "QuotientRingSpec",
    "extract_coeffs",
    "hilbert_report",
    "hs_function",
    "is_reduction",
    "k_plus_j_hilbert",
    "lambda_map",
    "parameter_ideal",
    "sample_reductions",
    "DEGREVLEX",
    "LEX",
    "MonomialOrder",
    "Polynomial",
    "RingSpec",
    "parse_poly",
    "ArtinAlgebra",
    "action_pair",
    "annihilator_length",
    "artin_algebra",
    "e1_e2_via_kernel",
    "e1_via_slice",
    "is_d_sequence",
    "is_superficial",
    "sally_lengths",
    "sally_rank",
    "tn_length",
    "unmixed_component",
]
