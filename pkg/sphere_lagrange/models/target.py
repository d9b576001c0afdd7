"""
Approximation targets: real or complex numbers with quadratic-surd parts.

A target is described exactly, so membership in a boundary field is decided exactly, and
it is evaluated as mpmath intervals of any requested precision.
"""

import re
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any

import sympy
from mpmath import iv
from sympy import factorint

from sphere_lagrange.models.boundary_field import BoundaryField
from sphere_lagrange.models.exceptions import TargetParseError


@dataclass(frozen=True)
class RealSurd:
    """rational + coeff*sqrt(radicand) with squarefree radicand >= 2, or a plain rational (radicand 1)."""

    rational: Fraction = Fraction(0)
    coeff: Fraction = Fraction(0)
    radicand: int = 1

    @classmethod
    def make(cls, rational: Fraction | int = 0, coeff: Fraction | int = 0, radicand: int = 1) -> "RealSurd":
        """
        Normalize a surd by pulling squares out of the radicand.

        Raises:
            TargetParseError: for a negative radicand
        """
        if radicand < 0:
            raise TargetParseError(f"sqrt({radicand})")
        rational, coeff = Fraction(rational), Fraction(coeff)
        if radicand == 0 or coeff == 0:
            return cls(rational, Fraction(0), 1)
        square, free = 1, 1
        for prime, power in factorint(radicand).items():
            square *= prime ** (power // 2)
            if power % 2:
                free *= prime
        if free == 1:
            return cls(rational + coeff * square, Fraction(0), 1)
        return cls(rational, coeff * square, free)

    @property
    def is_rational(self) -> bool:
        return self.coeff == 0

    @property
    def is_zero(self) -> bool:
        return self.is_rational and self.rational == 0

    def enclosure(self) -> Any:
        """Interval at the current interval precision."""
        value = iv.mpf(self.rational.numerator) / self.rational.denominator
        if self.coeff:
            value += iv.mpf(self.coeff.numerator) / self.coeff.denominator * iv.sqrt(self.radicand)
        return value

    def scaled(self, factor: Fraction | int) -> "RealSurd":
        return RealSurd(self.rational * factor, self.coeff * factor, self.radicand)

    def to_sympy(self) -> sympy.Expr:
        rational = sympy.Rational(self.rational.numerator, self.rational.denominator)
        coeff = sympy.Rational(self.coeff.numerator, self.coeff.denominator)
        return rational + coeff * sympy.sqrt(self.radicand)

    def __float__(self) -> float:
        return float(self.rational) + float(self.coeff) * self.radicand**0.5

    def __str__(self) -> str:
        if self.is_rational:
            return str(self.rational)
        surd = f"{abs(self.coeff)}*sqrt({self.radicand})" if abs(self.coeff) != 1 else f"sqrt({self.radicand})"
        if self.rational == 0:
            return f"-{surd}" if self.coeff < 0 else surd
        return f"{self.rational}{'-' if self.coeff < 0 else '+'}{surd}"


_NAMED: dict[str, tuple[RealSurd, RealSurd]] = {
    "golden": (RealSurd.make(Fraction(1, 2), Fraction(1, 2), 5), RealSurd()),
    "phi": (RealSurd.make(Fraction(1, 2), Fraction(1, 2), 5), RealSurd()),
    "silver": (RealSurd.make(1, 1, 2), RealSurd()),
    "sqrt2": (RealSurd.make(0, 1, 2), RealSurd()),
    "sqrt3": (RealSurd.make(0, 1, 3), RealSurd()),
}

_SURD_TERM = re.compile(r"^([+-]?)(\d+(?:/\d+)?)?\*?sqrt\(?(\d+)\)?(?:/(\d+))?$")
_RATIONAL_TERM = re.compile(r"^[+-]?\d+(?:/\d+)?$")
_GROUPED = re.compile(r"^\((.+)\)/(\d+)$")


def parse_surd(text: str) -> RealSurd:
    """
    Parse ``a+b*sqrt(d)``, ``(a+b*sqrt(d))/c``, ``sqrt(d)/c`` and plain rationals.

    Raises:
        TargetParseError: if the text is not a real quadratic surd
    """
    compact = text.replace(" ", "")
    if compact in _NAMED:
        return _NAMED[compact][0]
    grouped = _GROUPED.match(compact)
    if grouped:
        return parse_surd(grouped[1]).scaled(Fraction(1, int(grouped[2])))
    rational, coeff, radicand = Fraction(0), Fraction(0), 1
    terms = re.findall(r"[+-]?[^+-]+", compact)
    if not terms:
        raise TargetParseError(text)
    for term in terms:
        surd = _SURD_TERM.match(term)
        if surd:
            sign = -1 if surd[1] == "-" else 1
            value = Fraction(surd[2] or 1) / int(surd[4] or 1)
            term_radicand = int(surd[3])
            if coeff and term_radicand != radicand:
                raise TargetParseError(text)
            coeff += sign * value
            radicand = term_radicand
        elif _RATIONAL_TERM.match(term):
            rational += Fraction(term)
        else:
            raise TargetParseError(text)
    return RealSurd.make(rational, coeff, radicand)


@dataclass(frozen=True)
class TargetNumber:
    """A target xi = real + i*imag with quadratic-surd parts."""

    real: RealSurd
    imag: RealSurd = field(default_factory=RealSurd)
    name: str = ""

    @classmethod
    def parse(cls, text: str) -> "TargetNumber":
        """
        Parse a named constant (golden, silver, sqrt2, sqrt3), a real surd, or ``real,imag``.

        Raises:
            TargetParseError: on malformed text
        """
        compact = text.replace(" ", "")
        if compact in _NAMED:
            real, imag = _NAMED[compact]
            return cls(real, imag, compact)
        parts = compact.split(",")
        if len(parts) > 2 or not all(parts):
            raise TargetParseError(text)
        imag = parse_surd(parts[1]) if len(parts) == 2 else RealSurd()
        return cls(parse_surd(parts[0]), imag, compact)

    @property
    def is_real(self) -> bool:
        return self.imag.is_zero

    def in_field(self, boundary_field: BoundaryField) -> bool:
        """Exact membership in a boundary field."""
        if boundary_field is BoundaryField.RATIONAL:
            return self.is_real and self.real.is_rational
        if boundary_field is BoundaryField.SQRT2_RATIONAL:
            return self.is_real and self.real.rational == 0 and self.real.radicand in (1, 2)
        if not self.real.is_rational:
            return False
        if boundary_field.d == -1:
            return self.imag.is_rational
        # imaginary part must be a rational multiple of sqrt(|d|)
        return self.imag.rational == 0 and self.imag.radicand in (1, -boundary_field.d)

    def enclosure(self) -> tuple[Any, Any]:
        """(real, imag) intervals at the current interval precision."""
        return self.real.enclosure(), self.imag.enclosure()

    def components(self, boundary_field: BoundaryField) -> tuple[Any, ...]:
        """Interval coordinates matching KElement.components of the field."""
        real, imag = self.enclosure()
        if boundary_field is BoundaryField.RATIONAL:
            return (real,)
        if boundary_field is BoundaryField.SQRT2_RATIONAL:
            return (real / iv.sqrt(2),)
        d = boundary_field.d
        omega = boundary_field.omega
        a, b = Fraction(omega.a), Fraction(omega.b)
        v = imag / (iv.mpf(b.numerator) / b.denominator * iv.sqrt(-d))
        u = real - v * (iv.mpf(a.numerator) / a.denominator)
        return (u, v)

    def approx(self) -> complex:
        return complex(float(self.real), float(self.imag))

    def to_sympy(self) -> sympy.Expr:
        return self.real.to_sympy() + sympy.I * self.imag.to_sympy()

    def to_dict(self) -> dict[str, Any]:
        return {"name": self.name, "real": str(self.real), "imag": str(self.imag)}

    def __str__(self) -> str:
        if self.is_real:
            return str(self.real)
        return f"{self.real}+i*({self.imag})"
