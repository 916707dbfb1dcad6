"""Quantum rotational states and the Lz-phi uncertainty-relation catalog."""

from .engine import DEFAULT_SETTINGS, EngineSettings
from .fourier import (
    FourierCoefficients,
    coefficients,
    line_transform,
    parseval_check,
    width_product,
)
from .moments import (
    Correlation,
    MomentSet,
    commutator_mean,
    correlation,
    higher_correlation,
    mean,
    moment_set,
    std_dev,
)
from .numerics import QuadratureRule, gauss_hermite, gauss_legendre, hermite_poly, theta_lm
from .observables import (
    COS_PHI,
    LZ,
    PHI,
    PHI_SQUARED,
    SIN_PHI,
    THETA,
    THETA_PHI,
    MatrixElementTable,
    ObservableKind,
    RotorBasis,
    SphericalBasis,
    chi,
    lz_phi_symmetry_deficit,
    matrix_element,
    matrix_table,
    symmetry_deficit,
)
from .relations import (
    RelationId,
    RelationParams,
    RelationReport,
    Verdict,
    delta_chi,
    evaluate,
    fourier_boundary_term,
    gamma,
)
from .specio import SpecDocument, SpecParseError, canonical_text, parse, serialize_report
from .states import (
    CircularState,
    PendulumState,
    RotorSuperposition,
    SphericalState,
    energy,
    norm,
    wavefunction,
)

__version__ = "0.1.0"

__all__ = [
    "CircularState",
    "Correlation",
    "COS_PHI",
    "DEFAULT_SETTINGS",
    "EngineSettings",
    "FourierCoefficients",
    "LZ",
    "MatrixElementTable",
    "MomentSet",
    "ObservableKind",
    "PendulumState",
    "PHI",
    "PHI_SQUARED",
    "QuadratureRule",
    "RelationId",
    "RelationParams",
    "RelationReport",
    "RotorBasis",
    "RotorSuperposition",
    "SIN_PHI",
    "SpecDocument",
    "SpecParseError",
    "SphericalBasis",
    "SphericalState",
    "THETA",
    "THETA_PHI",
    "Verdict",
    "canonical_text",
    "chi",
    "coefficients",
    "commutator_mean",
    "correlation",
    "delta_chi",
    "energy",
    "evaluate",
    "fourier_boundary_term",
    "gamma",
    "gauss_hermite",
    "gauss_legendre",
    "hermite_poly",
    "higher_correlation",
    "line_transform",
    "lz_phi_symmetry_deficit",
    "matrix_element",
    "matrix_table",
    "mean",
    "moment_set",
    "norm",
    "parse",
    "parseval_check",
    "serialize_report",
    "std_dev",
    "symmetry_deficit",
    "theta_lm",
    "wavefunction",
    "width_product",
]
