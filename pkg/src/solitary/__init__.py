"""Exact computations on Lie algebras with ad-invariant metrics.

Decides whether an ad-invariant metric is solitary or weakly solitary,
whether an algebra is T*-solitary, and computes certified (metric)
Nikolayevsky derivations, over the rationals and the Gaussian rationals.
"""

from __future__ import annotations

from .exact import FIELD_Q, FIELD_QI, GaussianRational, parse_scalar, format_scalar
from .lie import (
    JacobiError,
    LieAlgebra,
    MapSpace,
    NonSplitCharPoly,
    SalamonSyntaxError,
    Subspace,
    adinvariant_endos,
    center,
    check_jacobi,
    derivation_space,
    derived_series,
    is_nice,
    is_nilpotent,
    is_solvable,
    lower_central_series,
    parse_salamon,
    quotient,
    render_salamon,
)
from .metric import (
    Metric,
    MetricSyntaxError,
    NEITHER,
    SOLITARY,
    WEAKLY_SOLITARY,
    adinvariant_forms,
    all_derivations_traceless,
    check_adinvariant,
    classify_selfadjoint,
    classify_solitary,
    find_adinvariant_metric,
    find_sigma_diagonal_metric,
    parse_metric,
    render_metric,
    selfadjoint_adinvariant_space,
    symmetrized_derivation_space,
)
from .grading import Grading, grading_from_derivation
from .constructions import (
    CotangentPackage,
    DoubleExtensionData,
    complexify,
    complexify_metric,
    cotangent,
    direct_sum,
    double_extension,
    double_extension_from_grading,
    realify,
    realify_metric,
    tstar_solitary,
)
from .nikolayevsky import (
    CertificateError,
    NikResult,
    Unsupported,
    cotangent_nikolayevsky,
    der_cap_co,
    metric_nikolayevsky,
    nikolayevsky_nice,
    solitary_by_positivity,
    tstar_by_grading,
)

__version__ = "0.1.0"
