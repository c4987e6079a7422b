"""Exception hierarchy shared across the package."""


class LieRiccatiError(Exception):
    """Base class for all library errors."""


class SingularFactorization(LieRiccatiError):
    """The element lies outside the chart of the requested exponential ordering."""

    def __init__(self, message, step=None):
        if step is not None:
            message = f"{message} (step {step})"
        super().__init__(message)
        self.step = step


class SingularComposition(LieRiccatiError):
    """``1 - eps*delta*alpha_inner*gamma_outer`` vanished during composition."""

    def __init__(self, message, step=None):
        if step is not None:
            message = f"{message} (step {step})"
        super().__init__(message)
        self.step = step


class SingularInverse(LieRiccatiError):
    """The inverse of an element has no normal-ordered factorization."""


class DomainError(LieRiccatiError, ValueError):
    """An analytic formula was evaluated outside its domain of validity."""


class ClassificationError(LieRiccatiError, ValueError):
    """A generic Riccati equation could not be mapped onto one of the algebras."""


class NotPureImaginaryB1(ClassificationError):
    pass


class NoAlgebraMatch(ClassificationError):
    def __init__(self, message, deviations=None):
        super().__init__(message)
        self.deviations = deviations or {}


class AmbiguousMatch(ClassificationError):
    pass


class InsufficientCoefficientDerivatives(LieRiccatiError, ValueError):
    pass
