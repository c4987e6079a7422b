"""Time-dependent complex Riccati equations solved through su(1,1), su(2) and so(2,1) group products."""

from .algebra import AlgebraKind, CoefficientTriple, hermiticity_residual, structure_constants
from .bloch import (
    InversionRow,
    SechPulse,
    SweepConfig,
    analytic_f_inf,
    analytic_inversion,
    bre_cre,
    bre_drive,
    sech_pulse_value,
    simulate_inversion,
    sweep,
)
from .errors import (
    AmbiguousMatch,
    DomainError,
    InsufficientCoefficientDerivatives,
    LieRiccatiError,
    NoAlgebraMatch,
    NotPureImaginaryB1,
    SingularComposition,
    SingularFactorization,
    SingularInverse,
)
from .factorization import FactorResult, factor_antinormal, factor_normal, nu
from .group import GroupElement, UnitarityReport, compose, identity, inverse, unitarity
from .propagator import (
    Drive,
    Trajectory,
    beta_gamma_quadrature,
    evolve,
    gcf_alpha,
    riccati_residual,
    single_jump,
)
from .riccati import GenericCRE, classify, nth_derivative, solve

__version__ = "0.1.0"
