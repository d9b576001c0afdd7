"""
Boundary fields K and arithmetic in their rings of integers.

Imaginary fields use the integral basis {1, w}: w = i for Q(sqrt-1), w = sqrt-2 for
Q(sqrt-2) and w = (-1 + sqrt-3)/2 for Q(sqrt-3). An element x + y*w of O_K is an
integer pair (x, y); w satisfies w^2 = trace*w - norm.
"""

from enum import Enum
from fractions import Fraction
from math import floor, sqrt

from sphere_lagrange.models.exceptions import InvalidElementError, QuadDivisionByZeroError, UnknownFieldError
from sphere_lagrange.models.quad_ext import QuadExt

OKInteger = tuple[int, int]


class BoundaryField(Enum):
    """The five boundary fields of the six space cases."""

    RATIONAL = "Q"
    SQRT2_RATIONAL = "sqrt2Q"
    GAUSSIAN = "Q(sqrt-1)"
    SQRT_MINUS_2 = "Q(sqrt-2)"
    EISENSTEIN = "Q(sqrt-3)"

    def __str__(self) -> str:
        return self.value

    @classmethod
    def from_tag(cls, tag: str) -> "BoundaryField":
        """
        Look up a field by its value or one of its aliases.

        Raises:
            UnknownFieldError: if the tag is not recognized
        """
        key = tag.strip().lower().replace(" ", "")
        for field in cls:
            if key == field.value.lower() or key in _ALIASES[field]:
                return field
        raise UnknownFieldError(tag)

    @property
    def is_imaginary(self) -> bool:
        return self in _OMEGA

    @property
    def d(self) -> int:
        """Radicand of the field: 1 for Q, 2 for sqrt2*Q (its ambient field), negative for imaginary."""
        return {BoundaryField.RATIONAL: 1, BoundaryField.SQRT2_RATIONAL: 2}.get(self) or _OMEGA[self][0]

    @property
    def omega(self) -> QuadExt:
        """The basis generator w as an exact element of Q(sqrt d)."""
        d, a, b = self._omega_data
        return QuadExt(d, a, b)

    @property
    def trace(self) -> int:
        """Trace of w, so that w^2 = trace*w - norm."""
        _, a, _ = self._omega_data
        return int(2 * a)

    @property
    def omega_norm(self) -> int:
        d, a, b = self._omega_data
        return int(a * a - d * b * b)

    @property
    def unit_count(self) -> int:
        return {BoundaryField.GAUSSIAN: 4, BoundaryField.EISENSTEIN: 6}.get(self, 2)

    @property
    def _omega_data(self) -> tuple[int, Fraction, Fraction]:
        if self not in _OMEGA:
            raise InvalidElementError(f"{self} has no imaginary basis generator")
        return _OMEGA[self]

    # ------------------------------------------------------------------
    # Coordinates
    # ------------------------------------------------------------------

    def to_quad(self, u: Fraction | int, v: Fraction | int) -> QuadExt:
        """Convert omega-coordinates u + v*w to a QuadExt in Q(sqrt d)."""
        d, a, b = self._omega_data
        return QuadExt(d, u + v * a, v * b)

    def from_quad(self, z: QuadExt | Fraction | int) -> tuple[Fraction, Fraction]:
        """
        Convert a QuadExt of Q(sqrt d) to omega-coordinates (u, v).

        Raises:
            InvalidElementError: if z lies in a different field
        """
        d, a, b = self._omega_data
        if not isinstance(z, QuadExt):
            return Fraction(z), Fraction(0)
        if z.field != (d,):
            raise InvalidElementError(f"{z} is not an element of {self}")
        v = Fraction(z.b) / b
        return Fraction(z.a) - v * a, v

    def norm_form(self, x: Fraction | int, y: Fraction | int) -> Fraction | int:
        """Norm of x + y*w: x^2 + trace*x*y + norm*y^2."""
        return x * x + self.trace * x * y + self.omega_norm * y * y

    def to_complex(self, u: float, v: float) -> complex:
        d, a, b = self._omega_data
        return complex(u + v * float(a), v * float(b) * sqrt(-d))

    def complex_to_omega(self, z: complex) -> tuple[float, float]:
        d, a, b = self._omega_data
        v = z.imag / (float(b) * sqrt(-d))
        return z.real - v * float(a), v

    # ------------------------------------------------------------------
    # Ring of integers
    # ------------------------------------------------------------------

    def ok_mul(self, x: OKInteger, y: OKInteger) -> OKInteger:
        """Product in O_K."""
        x1, y1 = x
        x2, y2 = y
        return (x1 * x2 - self.omega_norm * y1 * y2, x1 * y2 + x2 * y1 + self.trace * y1 * y2)

    def ok_conj(self, x: OKInteger) -> OKInteger:
        """Complex conjugate; conj(w) = trace - w."""
        return (x[0] + self.trace * x[1], -x[1])

    def ok_norm(self, x: OKInteger) -> int:
        return int(self.norm_form(x[0], x[1]))

    def ok_divmod(self, x: OKInteger, y: OKInteger) -> tuple[OKInteger, OKInteger]:
        """
        Euclidean division in O_K with remainder of smaller norm.

        Rounding each omega-coordinate works for all three norm-Euclidean rings used here.
        """
        n = self.ok_norm(y)
        if n == 0:
            raise QuadDivisionByZeroError
        num = self.ok_mul(x, self.ok_conj(y))
        quotient = (_round_half_up(Fraction(num[0], n)), _round_half_up(Fraction(num[1], n)))
        product = self.ok_mul(quotient, y)
        return quotient, (x[0] - product[0], x[1] - product[1])

    def ok_gcd(self, x: OKInteger, y: OKInteger) -> OKInteger:
        """A greatest common divisor, defined up to units."""
        while y != (0, 0):
            _, r = self.ok_divmod(x, y)
            x, y = y, r
        return x

    def ok_exact_div(self, x: OKInteger, y: OKInteger) -> OKInteger:
        """Divide when y divides x exactly."""
        quotient, remainder = self.ok_divmod(x, y)
        if remainder != (0, 0):
            raise InvalidElementError(f"{y} does not divide {x}")
        return quotient


def _round_half_up(x: Fraction) -> int:
    return floor(x + Fraction(1, 2))


_OMEGA: dict[BoundaryField, tuple[int, Fraction, Fraction]] = {
    BoundaryField.GAUSSIAN: (-1, Fraction(0), Fraction(1)),
    BoundaryField.SQRT_MINUS_2: (-2, Fraction(0), Fraction(1)),
    BoundaryField.EISENSTEIN: (-3, Fraction(-1, 2), Fraction(1, 2)),
}

_ALIASES: dict[BoundaryField, set[str]] = {
    BoundaryField.RATIONAL: {"rational", "rationals"},
    BoundaryField.SQRT2_RATIONAL: {"sqrt2*q", "sqrt2q", "root2q"},
    BoundaryField.GAUSSIAN: {"q(i)", "gaussian"},
    BoundaryField.SQRT_MINUS_2: {"q(sqrt(-2))"},
    BoundaryField.EISENSTEIN: {"q(sqrt(-3))", "eisenstein", "q(w)"},
}
