"""Gateaux and Frechet differentiability of L1 / Lp norms on atomic measure spaces."""

from .errors import InputError, PreconditionError
from .measure import (
    INF,
    MeasureSpace,
    SimpleFunction,
    ae_equal,
    check_a1,
    finite_positive_subset,
    in_class_g,
    is_integrable,
    l1_norm,
    measure_of,
    signum,
    zero_set,
)
from .gateaux import (
    DifferentiabilityReport,
    DualElement,
    OneSided,
    TwoSided,
    classify,
    derivative_functional,
    directional_derivatives,
    gateaux_derivative,
    pointwise_limit,
    pointwise_quotient,
    sign_stability_radius,
    stability_radius,
    witness_direction,
)
from .lp import lp_frechet_derivative, lp_norm, lp_remainder_ratio
from .ell1 import (
    FiniteSupportDirection,
    GeoTailSequence,
    frechet_failure_witness,
    seq_classify,
    seq_gateaux,
    seq_in_g,
    seq_l1_norm,
)
from .verification import FDReport, FDSchedule, fd_directional, fd_quotient, monte_carlo_null

__version__ = "0.1.0"
