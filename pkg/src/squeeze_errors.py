#!/usr/bin/env python3
"""
Squeeze Lab error hierarchy.

Every error carries a remediation ``hint`` and the CLI ``exit_code``:
validation problems exit with 2, numerical failures with 3.
All classes also derive from ValueError so plain ``except ValueError``
callers keep working.
"""

from typing import Optional


class SqueezeLabError(ValueError):
    """Base class for all toolkit errors."""

    exit_code = 1
    default_hint = ""

    def __init__(self, message: str, hint: Optional[str] = None):
        super().__init__(message)
        self.message = message
        self.hint = hint if hint is not None else self.default_hint

    def __str__(self):
        return f"❌ {self.__class__.__name__}: {self.message}"


class ValidationError(SqueezeLabError):
    """Bad input: the caller can fix it."""

    exit_code = 2


class NumericalError(SqueezeLabError):
    """The numerics broke down on valid input."""

    exit_code = 3


# Validation family

class OutOfRange(ValidationError):
    default_hint = "Check the documented parameter range for this operation."


class OutsideDomain(ValidationError):
    default_hint = "The point must satisfy rho < 0 and avoid the excluded set."


class NotSymmetric(ValidationError):
    default_hint = "Symmetrize the matrix, e.g. (m + m.T) / 2."


class ShapeMismatch(ValidationError):
    default_hint = "Matrix variables must match the base type's size parameters."


class SymmetryViolation(ValidationError):
    default_hint = "Type II needs symmetric Z, type III needs skew-symmetric Z."


class UnknownDomain(ValidationError):
    default_hint = "Run `squeeze_lab.py catalog` to list domain identifiers."


class UnknownCommand(ValidationError):
    default_hint = "Run `squeeze_lab.py --help` to list commands."


class BadParams(ValidationError):
    default_hint = "See `squeeze_lab.py <command> --help`."


class NotGsc(ValidationError):
    default_hint = "The boundary estimate needs a point with positive pinching radius."


class EmptySamples(ValidationError):
    default_hint = "Increase --samples or check the domain's bounding box."


class BasepointNotMappedToZero(ValidationError):
    default_hint = "Compose the map with a translation or automorphism so f(p) = 0."


class ImageEscapesBall(ValidationError):
    default_hint = "The embedding must map the domain into the unit ball; rescale it."


class NotDecreasing(ValidationError):
    default_hint = "Pinching functions must be positive and decreasing on (0, 1)."


class NotOnBoundary(ValidationError):
    default_hint = "Project the point onto the zero set of rho first."


# Numerical family

class NonFinite(NumericalError):
    default_hint = "The defining function is not finite near the point; move away from singular sets."


class DegenerateGradient(NumericalError):
    default_hint = "The gradient of rho vanishes here; choose another defining function."


class NoBoundaryFound(NumericalError):
    default_hint = "No sign change of rho was found; the bounding box may miss the domain."
