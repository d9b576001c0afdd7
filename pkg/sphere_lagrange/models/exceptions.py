"""
Custom exceptions for the sphere_lagrange package.
"""

import json
from typing import Any


class UsageError(ValueError):
    """Base class for errors caused by invalid input; the CLI maps these to exit status 2."""


class MixedFieldError(UsageError):
    """Raised when two quadratic-field elements do not live in a common tower."""

    def __init__(self, left: tuple[int, ...], right: tuple[int, ...]) -> None:
        super().__init__(f"Mixed-field operands: Q{_field_name(left)} and Q{_field_name(right)}")


class QuadDivisionByZeroError(ZeroDivisionError):
    """Raised when dividing by the zero element of a quadratic field."""

    def __init__(self) -> None:
        super().__init__("Division by zero in quadratic field")


class NotRealFieldError(ArithmeticError):
    """Raised when an order comparison is requested in an imaginary field."""

    def __init__(self, d: int) -> None:
        super().__init__(f"Sign is undefined in imaginary field Q(sqrt({d}))")


class UnsupportedRadicandError(UsageError):
    """Raised when a square root falls outside the real tower Q(sqrt2)(sqrt3)."""

    def __init__(self, radicand: Any) -> None:
        super().__init__(f"sqrt({radicand}) does not lie in Q(sqrt2, sqrt3)")


class NotInSqrt2RationalsError(UsageError):
    """Raised when a value is not of the form sqrt2 * (rational)."""

    def __init__(self) -> None:
        super().__init__("not an element of √2ℚ")


class FractionNotReducedError(UsageError):
    """Raised when alpha/beta generate a proper ideal of O_K."""

    def __init__(self) -> None:
        super().__init__("fraction not reduced")


class ZeroDenominatorError(UsageError):
    """Raised when a boundary fraction has zero denominator."""

    def __init__(self) -> None:
        super().__init__("Denominator must be nonzero")


class InvalidElementError(UsageError):
    """Raised when canonical data of a boundary element violates its invariants."""

    def __init__(self, detail: str) -> None:
        super().__init__(f"Invalid boundary element: {detail}")


class ElementParseError(UsageError):
    """Raised when text cannot be parsed as an element of the requested field."""

    def __init__(self, text: str, field: str) -> None:
        super().__init__(f"Cannot parse {text!r} as an element of {field}")


class UnknownCaseError(UsageError):
    """Raised when an unknown space case tag is encountered."""

    def __init__(self, tag: str) -> None:
        super().__init__(f"Unknown space case: {tag}")


class UnknownFieldError(UsageError):
    """Raised when an unknown boundary field tag is encountered."""

    def __init__(self, tag: str) -> None:
        super().__init__(f"Unknown boundary field: {tag}")


class FieldCaseMismatchError(UsageError):
    """Raised when an element's field does not match the boundary field of a case."""

    def __init__(self, field: str, case: str) -> None:
        super().__init__(f"Element of {field} cannot be used with case {case}")


class CaseMismatchError(UsageError):
    """Raised when two sphere points belong to different cases."""

    def __init__(self, left: str, right: str) -> None:
        super().__init__(f"Sphere points belong to different cases: {left} and {right}")


class SamePointError(UsageError):
    """Raised when an operation needs two distinct points."""

    def __init__(self) -> None:
        super().__init__("Operation requires two distinct points")


class InvalidSpherePointError(UsageError):
    """Raised when integer data does not describe a rational point of the case's sphere."""

    def __init__(self, detail: str) -> None:
        super().__init__(f"Invalid sphere point: {detail}")


class BaseReflectionError(UsageError):
    """Raised when reflecting the base point n itself."""

    def __init__(self) -> None:
        super().__init__("reflection undefined at base point")


class InfinityPointError(UsageError):
    """Raised when unmapping the base point n without allowing infinity."""

    def __init__(self) -> None:
        super().__init__("base point maps to infinity")


class InfiniteElementError(UsageError):
    """Raised when the infinity element is passed where a finite one is required."""

    def __init__(self) -> None:
        super().__init__("Operation requires a finite boundary element")


class RenderingUnsupportedError(UsageError):
    """Raised when circle rendering is requested for a 2-sphere case."""

    def __init__(self) -> None:
        super().__init__("rendering only defined for 1-sphere cases")


class UnknownFormatError(UsageError):
    """Raised when an export format is not supported."""

    def __init__(self, fmt: str, supported: tuple[str, ...]) -> None:
        super().__init__(f"Unknown format {fmt!r}; expected one of {', '.join(supported)}")


class SpectrumUnavailableError(UsageError):
    """Raised when a generated spectrum family is requested for a case that only has cited constants."""

    def __init__(self, case: str) -> None:
        super().__init__(f"only cited constants available for {case}")


class TargetInFieldError(UsageError):
    """Raised when an approximation target already lies in the boundary field."""

    def __init__(self, target: str, field: str) -> None:
        super().__init__(f"Target {target} lies in {field}")


class TargetParseError(UsageError):
    """Raised when a target number description cannot be parsed."""

    def __init__(self, text: str) -> None:
        super().__init__(f"Cannot parse target number: {text!r}")


class ComplexTargetError(UsageError):
    """Raised when a non-real target is approximated in a real boundary field."""

    def __init__(self, target: str, field: str) -> None:
        super().__init__(f"Target {target} is not real; {field} approximates real numbers only")


class EmptyTailError(UsageError):
    """Raised when no approximation record falls into the estimation tail."""

    def __init__(self, bound: int) -> None:
        super().__init__(f"No approximation records with height in ({bound // 2}, {bound}]")


class ConfigError(UsageError):
    """Raised when a configuration file or option is malformed."""

    def __init__(self, detail: str) -> None:
        super().__init__(f"Invalid configuration: {detail}")


class InvariantViolationError(RuntimeError):
    """Raised when an exact check fails; carries a certificate describing the failure."""

    def __init__(self, message: str, certificate: dict[str, str] | None = None) -> None:
        super().__init__(message)
        self.certificate = certificate or {}

    def dump(self) -> str:
        """Return the certificate as deterministic JSON."""
        return json.dumps({"error": str(self), "certificate": self.certificate}, indent=2, sort_keys=True)


class OverlapDetectedError(InvariantViolationError):
    """Raised when two horoballs overlap, which the tangent-or-disjoint theorem forbids."""

    def __init__(self, certificate: dict[str, str]) -> None:
        super().__init__("Horoballs overlap", certificate)


def _field_name(field: tuple[int, ...]) -> str:
    return "".join(f"(sqrt{d})" for d in field) if field else ""
