"""Spectral laboratory for the abstract heat flow y' + Ay = 0.

The operator A is a nonnegative self-adjoint operator with discrete
spectrum, represented by its eigenvalue sequence.  The package measures
how well trajectories exp(-At) f are approximated by entire solutions of
exponential type, verifies the direct (Jackson-type) and inverse-side
(Bernstein-type) bounds, classifies smoothness from decay rates, and
grounds everything in the explicit Dirichlet box example with an
independent finite-difference check.
"""

from .errors import NumericalError, ValidationError
from .spectral import (
    DiscreteSpectrum,
    SpectralVector,
    make_spectrum,
    project,
    apply_power,
    norm,
    sobolev_norm,
    vector_type,
    log_power_norms,
    class_norm,
    vector_to_csv,
    vector_from_csv,
)
from .growth import (
    GrowthSequence,
    RatioGrowthBound,
    log_tau,
    reciprocal_decay,
    dominates_geometric,
    ratio_growth_bound,
)
from .semigroup import (
    BACKWARD_TAG,
    SolutionHandle,
    evolve,
    derivative,
    sup_norm,
    derivative_sup_norm,
    difference_power,
    difference_power_binomial,
    entire_eval,
    log_entire_eval,
)
from .approximation import (
    DecayCurve,
    InequalityReport,
    jackson_constant,
    best_approx,
    modulus,
    jackson_check,
    derivative_jackson_check,
    bernstein_check,
    decay_curve,
    curve_to_csv,
    report_record,
)
from .classification import (
    LineFit,
    SmoothnessClass,
    classify_decay,
    order_from_beta,
    order_from_taylor,
    order_from_log_derivative_norms,
    classification_record,
)
from .cube import (
    CubeOperator,
    CubeSpectrumIndex,
    WeylFit,
    cube_spectrum,
    eigenfunction_eval,
    heat_solution_eval,
    heat_profile_1d,
    weyl_fit,
    fd_oracle_1d,
    cube_vector_to_csv,
)
from .config import ExperimentConfig, load_config, parse_config
from .experiments import run, random_suite_vector

__version__ = "0.1.0"

__all__ = [
    "NumericalError",
    "ValidationError",
    "DiscreteSpectrum",
    "SpectralVector",
    "make_spectrum",
    "project",
    "apply_power",
    "norm",
    "sobolev_norm",
    "vector_type",
    "log_power_norms",
    "class_norm",
    "vector_to_csv",
    "vector_from_csv",
    "GrowthSequence",
    "RatioGrowthBound",
    "log_tau",
    "reciprocal_decay",
    "dominates_geometric",
    "ratio_growth_bound",
    "BACKWARD_TAG",
    "SolutionHandle",
    "evolve",
    "derivative",
    "sup_norm",
    "derivative_sup_norm",
    "difference_power",
    "difference_power_binomial",
    "entire_eval",
    "log_entire_eval",
    "DecayCurve",
    "InequalityReport",
    "jackson_constant",
    "best_approx",
    "modulus",
    "jackson_check",
    "derivative_jackson_check",
    "bernstein_check",
    "decay_curve",
    "curve_to_csv",
    "report_record",
    "LineFit",
    "SmoothnessClass",
    "classify_decay",
    "order_from_beta",
    "order_from_taylor",
    "order_from_log_derivative_norms",
    "classification_record",
    "CubeOperator",
    "CubeSpectrumIndex",
    "WeylFit",
    "cube_spectrum",
    "eigenfunction_eval",
    "heat_solution_eval",
    "heat_profile_1d",
    "weyl_fit",
    "fd_oracle_1d",
    "cube_vector_to_csv",
    "ExperimentConfig",
    "load_config",
    "parse_config",
    "run",
    "random_suite_vector",
]
