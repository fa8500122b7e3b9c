"""Dilation-average (Hausdorff) operators on Bergman spaces of the upper
half-plane: measures on (0, inf), function families, adaptive quadrature,
operator evaluation, and a verification harness."""

from .errors import (
    DivergentIntegral,
    MissingExponentMetadata,
    NonIntegrableAtInfinity,
    NumericsError,
    ParameterOutOfRange,
    QuadratureFailure,
)
from .halfplane import (
    HalfPlaneFunction,
    HalfPlanePoint,
    ModulusFunction,
    Sector,
    TestFunction,
    check_sector_inequality,
    dilate,
    parse_function_spec,
    rational_power,
    sample_sector,
)
from .hausdorff import (
    HausdorffOperator,
    adjoint_pairing_check,
    apply,
    apply_quasi,
    apply_with_error,
    as_function,
    quasi_as_function,
)
from .measure import (
    Atom,
    Boundedness,
    DensitySegment,
    Measure,
    MomentResult,
    classify_boundedness,
    dump_measure,
    load_measure,
    measure_from_json,
    measure_to_json,
    moment,
    pushforward_inverse,
    restrict,
    theoretical_norm,
    truncate,
)
from .quadrature import (
    IntegralResult,
    QuadratureConfig,
    bergman_norm_p,
    bergman_norm_p_power,
    integrate_segment,
    pairing,
)

__version__ = "0.1.0"

__all__ = [
    "Atom",
    "Boundedness",
    "DensitySegment",
    "DivergentIntegral",
    "HalfPlaneFunction",
    "HalfPlanePoint",
    "HausdorffOperator",
    "IntegralResult",
    "Measure",
    "MissingExponentMetadata",
    "ModulusFunction",
    "MomentResult",
    "NonIntegrableAtInfinity",
    "NumericsError",
    "ParameterOutOfRange",
    "QuadratureConfig",
    "QuadratureFailure",
    "Sector",
    "TestFunction",
    "adjoint_pairing_check",
    "apply",
    "apply_quasi",
    "apply_with_error",
    "as_function",
    "bergman_norm_p",
    "bergman_norm_p_power",
    "check_sector_inequality",
    "classify_boundedness",
    "dilate",
    "dump_measure",
    "integrate_segment",
    "load_measure",
    "measure_from_json",
    "measure_to_json",
    "moment",
    "pairing",
    "parse_function_spec",
    "pushforward_inverse",
    "quasi_as_function",
    "rational_power",
    "restrict",
    "sample_sector",
    "theoretical_norm",
    "truncate",
]
