"""Exception types shared across the package."""


class FraclayerError(Exception):
    """Base class for all package errors."""


class UndefinedTail(FraclayerError):
    """Evaluation requested in a tail with no model attached."""


class DivergentEnergy(FraclayerError):
    """The requested interaction integral is infinite.

    Raised instead of returning a large float so that downstream fits
    are never silently corrupted.
    """


class JumpOutsideDomain(FraclayerError):
    """A phase jump falls outside the open container interval."""


class PreconditionViolated(FraclayerError):
    """An operation contract was violated by its inputs."""


class GammaAtWell(FraclayerError):
    """Boundary datum sits at (or beyond) a potential well, |gamma| >= 1."""


class NotConverged(FraclayerError):
    """Iterative solve stopped before reaching its tolerance.

    Carries the best iterate so callers can inspect it.
    """

    def __init__(self, message, best=None):
        super().__init__(message)
        self.best = best


class SingularSystem(FraclayerError):
    """Stiffness system could not be solved; signals an assembly bug."""


class ScaleViolation(FraclayerError):
    """Gluing width does not dominate the layer width (rho <= eps)."""


class IllConditionedFit(FraclayerError):
    """Extrapolation input is non-monotone beyond noise level."""


class ParseError(FraclayerError):
    """Config text could not be parsed."""

    def __init__(self, message, line=None):
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)
        self.line = line


class RangeError(FraclayerError):
    """A config value lies outside its legal interval."""
