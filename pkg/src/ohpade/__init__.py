"""ohpade: simultaneous rational approximation from orthogonal expansions.

Builds (n, m) rational approximants to systems of analytic functions from
their expansions in polynomials orthonormal with respect to a measure on a
compact set (the unit circle or a real interval).  The common denominator's
zeros locate the system's poles, and the coefficient errors reproduce the
geometric convergence rate dictated by the exterior conformal map.
"""

from ._kernels import BACKEND as kernel_backend
from .basis import (
    WEIGHTS,
    MeasureSpec,
    OrthoBasis,
    build_basis,
    circle_measure,
    interval_measure,
    kappa_lower_envelope,
    quadrature_rule,
    recurrence_coefficients,
    reg_diagnostics,
)
from .catalog import (
    ENTRIES,
    RADIUS_CASES,
    CatalogEntry,
    RadiusCase,
    catalog_rows,
    distinct_functions,
    get_entry,
)
from .coeffs import (
    CoeffTable,
    RadiusEstimate,
    coeff_contour,
    coeff_quadrature,
    contour_series,
    radius_from_coeffs,
)
from .domain import (
    ConformalMap,
    Domain,
    default_phi_examples,
    joukowski_ellipse_axes,
    sup_phi,
)
from .errors import (
    ConfigError,
    DegenerateSystemError,
    DomainError,
    InsufficientDataError,
    NumericError,
    OhpadeError,
    ParameterError,
    UnsupportedInputError,
)
from .functions import (
    AnalyticFunction,
    ExpTerm,
    LogTerm,
    PoleTerm,
    PolyTerm,
    PowTerm,
    from_terms,
    pole,
)
from .incomplete import (
    CaptureTrace,
    incomplete_matrix,
    matched_distance,
    pole_capture_trace,
    solve_incomplete,
)
from .poles import (
    GroundTruth,
    IndependenceResult,
    RateCheck,
    RateFit,
    SystemPoleSpec,
    approximation_rate_check,
    flat_zeros,
    measured_theta,
    poly_independence_check,
    predicted_theta,
    rate_check_errors,
    roots,
    stable_zero_groups,
)
from .solver import (
    ApproximantSet,
    DenominatorResult,
    FunctionSystem,
    MultiIndex,
    assemble_system,
    classical_denominator,
    coefficient_tables,
    definition_residual,
    numerators,
    solve_denominator,
    solve_hp,
    system,
)
from .sweep import (
    CONFIG_SCHEMA,
    ConvergenceReport,
    ExperimentConfig,
    PerOrderRow,
    capture_csv_text,
    config_from_entry,
    load_config,
    report_csv_text,
    run_capture,
    run_sweep,
    write_capture,
    write_report,
)
from .verify import SUITES, CriterionResult, VerifyReport, run_suite

__version__ = "0.1.0"

__all__ = [
    "kernel_backend",
    "WEIGHTS",
    "MeasureSpec",
    "OrthoBasis",
    "build_basis",
    "circle_measure",
    "interval_measure",
    "kappa_lower_envelope",
    "quadrature_rule",
    "recurrence_coefficients",
    "reg_diagnostics",
    "ENTRIES",
    "RADIUS_CASES",
    "CatalogEntry",
    "RadiusCase",
    "catalog_rows",
    "distinct_functions",
    "get_entry",
    "CoeffTable",
    "RadiusEstimate",
    "coeff_contour",
    "coeff_quadrature",
    "contour_series",
    "radius_from_coeffs",
    "ConformalMap",
    "Domain",
    "default_phi_examples",
    "joukowski_ellipse_axes",
    "sup_phi",
    "ConfigError",
    "DegenerateSystemError",
    "DomainError",
    "InsufficientDataError",
    "NumericError",
    "OhpadeError",
    "ParameterError",
    "UnsupportedInputError",
    "AnalyticFunction",
    "ExpTerm",
    "LogTerm",
    "PoleTerm",
    "PolyTerm",
    "PowTerm",
    "from_terms",
    "pole",
    "CaptureTrace",
    "incomplete_matrix",
    "matched_distance",
    "pole_capture_trace",
    "solve_incomplete",
    "GroundTruth",
    "IndependenceResult",
    "RateCheck",
    "RateFit",
    "SystemPoleSpec",
    "approximation_rate_check",
    "flat_zeros",
    "measured_theta",
    "poly_independence_check",
    "predicted_theta",
    "rate_check_errors",
    "roots",
    "stable_zero_groups",
    "ApproximantSet",
    "DenominatorResult",
    "FunctionSystem",
    "MultiIndex",
    "assemble_system",
    "classical_denominator",
    "coefficient_tables",
    "definition_residual",
    "numerators",
    "solve_denominator",
    "solve_hp",
    "system",
    "CONFIG_SCHEMA",
    "ConvergenceReport",
    "ExperimentConfig",
    "PerOrderRow",
    "capture_csv_text",
    "config_from_entry",
    "load_config",
    "report_csv_text",
    "run_capture",
    "run_sweep",
    "write_capture",
    "write_report",
    "SUITES",
    "CriterionResult",
    "VerifyReport",
    "run_suite",
    "__version__",
]
