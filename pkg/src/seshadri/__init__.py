"""Exact certification of Seshadri-function rationality on blown-up planes.

The package decides, in exact arithmetic over Q and real quadratic fields
Q(sqrt(n)), whether the Seshadri function mu -> epsilon(mu) along the
uniform ray L(mu) = mu*H - (E_1 + ... + E_r) on the blow-up of P^2 at
r >= 10 very general points is computed by an explicit curve class, and
certifies the finite search that rules out counterexamples above the
per-r threshold mu_0(r).
"""

__version__ = "0.1.0"

from .errors import (
    DepthLimitExceeded,
    DivisionByZeroInterval,
    ExceptionalClassUnsupported,
    IncompatibleRadicands,
    InvalidMultiplicityIndex,
    InvalidT,
    InvalidT0,
    NegativeRadicand,
    NegativeRadicandInterval,
    NotAboveSqrtR,
    SeshadriError,
    UnsupportedR,
)
from .exact import (
    DEFAULT_SQRT_WIDTH,
    QuadraticNumber,
    RationalInterval,
    compare,
    interval_eval,
    parse_quadratic,
    sqrt_enclosure,
    squarefree_decomposition,
)
from .surface import (
    CurveClass,
    MuInterval,
    UniformPolarization,
    arithmetic_genus,
    degree_against,
    expected_dim,
    is_weakly_submaximal,
    parse_curve_class,
    self_intersection,
    submaximal_locus,
    submaximality_quadratic,
)
from .search import (
    BalancedPair,
    Outcome,
    Verdict,
    VerificationReport,
    balanced_split,
    balancing_move,
    brute_force_oracle,
    check_pair,
    critical_pair_for,
    edim_condition,
    enumerate_critical_pairs,
    small_degree_pairs,
    t_range,
    total_multiplicity_bound,
    verify_no_counterexample,
)
from .region import (
    Certificate,
    QEvaluation,
    audit_certificate,
    discriminant_t,
    large_r_inequalities,
    m_bar_zero,
    m_bar_zero_at_sqrt_r,
    q_coefficients,
    q_exact,
    q_value,
    verify_large_r,
    verify_t_bound,
)
from .thresholds import (
    CatalogCurve,
    Classification,
    CoverageReport,
    RationalityVerdict,
    ThresholdEntry,
    catalog,
    classify,
    threshold,
    verify_coverage,
)

__all__ = [
    "__version__",
    "SeshadriError",
    "NegativeRadicand",
    "IncompatibleRadicands",
    "DivisionByZeroInterval",
    "NegativeRadicandInterval",
    "ExceptionalClassUnsupported",
    "UnsupportedR",
    "InvalidT",
    "InvalidT0",
    "InvalidMultiplicityIndex",
    "NotAboveSqrtR",
    "DepthLimitExceeded",
    "DEFAULT_SQRT_WIDTH",
    "QuadraticNumber",
    "RationalInterval",
    "compare",
    "interval_eval",
    "parse_quadratic",
    "sqrt_enclosure",
    "squarefree_decomposition",
    "CurveClass",
    "MuInterval",
    "UniformPolarization",
    "arithmetic_genus",
    "degree_against",
    "expected_dim",
    "is_weakly_submaximal",
    "parse_curve_class",
    "self_intersection",
    "submaximal_locus",
    "submaximality_quadratic",
    "BalancedPair",
    "Outcome",
    "Verdict",
    "VerificationReport",
    "balanced_split",
    "balancing_move",
    "brute_force_oracle",
    "check_pair",
    "critical_pair_for",
    "edim_condition",
    "enumerate_critical_pairs",
    "small_degree_pairs",
    "t_range",
    "total_multiplicity_bound",
    "verify_no_counterexample",
    "Certificate",
    "QEvaluation",
    "audit_certificate",
    "discriminant_t",
    "large_r_inequalities",
    "m_bar_zero",
    "m_bar_zero_at_sqrt_r",
    "q_coefficients",
    "q_exact",
    "q_value",
    "verify_large_r",
    "verify_t_bound",
    "CatalogCurve",
    "Classification",
    "CoverageReport",
    "RationalityVerdict",
    "ThresholdEntry",
    "catalog",
    "classify",
    "threshold",
    "verify_coverage",
]
