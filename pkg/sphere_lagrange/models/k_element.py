"""
Canonical rational points of the boundary fields.

Each concrete element stores the reduced data that determines its height:
coprime (p, q) for Q, a parity-tagged (p, q) for sqrt2*Q and the reduced triple
(a, b, c) with r = (a + b*w)/c and c = |beta|^2 for the imaginary fields.
"""

import random
import re
from abc import ABC, abstractmethod
from collections.abc import Callable, Iterator
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from math import ceil, floor, gcd, isqrt, lcm, sqrt
from typing import Any

from sphere_lagrange.models.boundary_field import BoundaryField, OKInteger
from sphere_lagrange.models.exceptions import (
    ElementParseError,
    FractionNotReducedError,
    InfiniteElementError,
    InvalidElementError,
    NotInSqrt2RationalsError,
    ZeroDenominatorError,
)
from sphere_lagrange.models.quad_ext import QuadExt


class Sqrt2Class(Enum):
    """Parity class of an element of sqrt2*Q."""

    Q_ODD = "q-odd"  # r = sqrt2*p/q, q odd
    P_ODD = "p-odd"  # r = p/(sqrt2*q), p odd

    def __str__(self) -> str:
        return self.value


class KElement(ABC):
    """Abstract base class for canonical boundary points."""

    @property
    @abstractmethod
    def field(self) -> BoundaryField:
        """The boundary field this element belongs to."""

    @property
    def is_infinite(self) -> bool:
        return False

    @abstractmethod
    def height(self) -> int:
        """The height H_K of the element."""

    @abstractmethod
    def components(self) -> tuple[Fraction, ...]:
        """
        Rational coordinates of the element.

        (t,) for Q, (s,) with r = sqrt2*s for sqrt2*Q, (u, v) with r = u + v*w for imaginary fields.
        """

    @abstractmethod
    def value(self) -> Fraction | QuadExt:
        """The exact value in Q, Q(sqrt2) or Q(sqrt d)."""

    @abstractmethod
    def __str__(self) -> str:
        """Canonical text form."""

    def to_dict(self) -> dict[str, Any]:
        """
        Convert the element to a dictionary for serialization.

        Returns:
            Dictionary with the field tag and canonical text
        """
        return {"field": self.field.value, "text": str(self)}

    @classmethod
    def from_dict(cls, data: dict[str, Any]) -> "KElement":
        """
        Create an element from its dictionary representation.

        Args:
            data: Dictionary produced by to_dict

        Returns:
            The parsed element
        """
        return parse_element(data["text"], BoundaryField.from_tag(data["field"]))


@dataclass(frozen=True)
class RationalElement(KElement):
    """A reduced fraction p/q with q >= 1."""

    p: int
    q: int

    def __post_init__(self) -> None:
        if self.q < 1 or gcd(self.p, self.q) != 1:
            raise InvalidElementError(f"{self.p}/{self.q} is not reduced with positive denominator")

    @classmethod
    def from_fraction(cls, value: Fraction | int) -> "RationalElement":
        value = Fraction(value)
        return cls(value.numerator, value.denominator)

    @property
    def field(self) -> BoundaryField:
        return BoundaryField.RATIONAL

    def height(self) -> int:
        return self.q * self.q

    def components(self) -> tuple[Fraction, ...]:
        return (Fraction(self.p, self.q),)

    def value(self) -> Fraction:
        return Fraction(self.p, self.q)

    def __str__(self) -> str:
        return f"{self.p}/{self.q}"


@dataclass(frozen=True)
class Sqrt2RationalElement(KElement):
    """An element of sqrt2*Q in the unique parity-tagged form with q >= 1."""

    p: int
    q: int
    parity: Sqrt2Class

    def __post_init__(self) -> None:
        if self.q < 1 or gcd(self.p, self.q) != 1:
            raise InvalidElementError(f"({self.p}, {self.q}) is not coprime with positive q")
        if self.parity is Sqrt2Class.Q_ODD and self.q % 2 == 0:
            raise InvalidElementError("class q-odd requires odd q")
        if self.parity is Sqrt2Class.P_ODD and self.p % 2 == 0:
            raise InvalidElementError("class p-odd requires odd p")
        x_sq, y_sq, cross = self.gcd_triple()
        if gcd(gcd(x_sq, y_sq), cross) != 1:
            raise InvalidElementError("gcd(x^2, y^2, sqrt2*x*y) must be 1")

    @classmethod
    def from_scale(cls, s: Fraction | int) -> "Sqrt2RationalElement":
        """Canonical element for r = sqrt2*s."""
        s = Fraction(s)
        if s.denominator % 2:
            return cls(s.numerator, s.denominator, Sqrt2Class.Q_ODD)
        return cls(s.numerator, s.denominator // 2, Sqrt2Class.P_ODD)

    @property
    def field(self) -> BoundaryField:
        return BoundaryField.SQRT2_RATIONAL

    def gcd_triple(self) -> tuple[int, int, int]:
        """(x^2, y^2, sqrt2*x*y) for r = x/y."""
        p, q = self.p, self.q
        if self.parity is Sqrt2Class.Q_ODD:
            return 2 * p * p, q * q, 2 * p * q
        return p * p, 2 * q * q, 2 * p * q

    def height(self) -> int:
        return self.gcd_triple()[1]

    def components(self) -> tuple[Fraction, ...]:
        if self.parity is Sqrt2Class.Q_ODD:
            return (Fraction(self.p, self.q),)
        return (Fraction(self.p, 2 * self.q),)

    def value(self) -> QuadExt:
        return QuadExt(2, 0, self.components()[0])

    def __str__(self) -> str:
        if self.parity is Sqrt2Class.P_ODD:
            return f"{self.p}/(sqrt2*{self.q})"
        sign = "-" if self.p < 0 else ""
        return f"{sign}sqrt2*{abs(self.p)}/{self.q}"


@dataclass(frozen=True)
class ImagQuadElement(KElement):
    """r = (a + b*w)/c in an imaginary field, with c = H_K(r)."""

    imag_field: BoundaryField
    a: int
    b: int
    c: int

    def __post_init__(self) -> None:
        if not self.imag_field.is_imaginary:
            raise InvalidElementError(f"{self.imag_field} is not imaginary quadratic")
        if self.c < 1:
            raise InvalidElementError("c must be positive")
        numerator_norm = self.imag_field.ok_norm((self.a, self.b))
        if numerator_norm % self.c:
            raise InvalidElementError(f"c={self.c} does not divide |a+bw|^2={numerator_norm}")
        if gcd(numerator_norm // self.c, self.c, self.a, self.b) != 1:
            raise FractionNotReducedError

    @classmethod
    def from_components(cls, field: BoundaryField, u: Fraction | int, v: Fraction | int) -> "ImagQuadElement":
        """
        Canonical element for r = u + v*w with arbitrary rational u, v.

        The fraction is brought to lowest terms with the Euclidean gcd of O_K.
        """
        u, v = Fraction(u), Fraction(v)
        denominator = lcm(u.denominator, v.denominator)
        alpha = (int(u * denominator), int(v * denominator))
        return reduce_fraction(field, alpha, (denominator, 0))

    @property
    def field(self) -> BoundaryField:
        return self.imag_field

    def alpha_norm(self) -> int:
        """|alpha|^2 = |a + b*w|^2 / c."""
        return self.imag_field.ok_norm((self.a, self.b)) // self.c

    def height(self) -> int:
        return self.c

    def components(self) -> tuple[Fraction, ...]:
        return (Fraction(self.a, self.c), Fraction(self.b, self.c))

    def value(self) -> QuadExt:
        u, v = self.components()
        return self.imag_field.to_quad(u, v)

    def __str__(self) -> str:
        return f"({self.a}{self.b:+d}*w)/{self.c}"


@dataclass(frozen=True)
class InfinityElement(KElement):
    """The point at infinity of a boundary field, mapped to the base point n."""

    boundary_field: BoundaryField

    @property
    def field(self) -> BoundaryField:
        return self.boundary_field

    @property
    def is_infinite(self) -> bool:
        return True

    def height(self) -> int:
        raise InfiniteElementError

    def components(self) -> tuple[Fraction, ...]:
        raise InfiniteElementError

    def value(self) -> Fraction:
        raise InfiniteElementError

    def __str__(self) -> str:
        return "inf"


# ----------------------------------------------------------------------
# Canonicalization
# ----------------------------------------------------------------------


def canonicalize_sqrt2_rational(r: QuadExt | Fraction | int) -> Sqrt2RationalElement:
    """
    Canonical parity-tagged form of r = sqrt2*(p/q1).

    Args:
        r: Element of Q(sqrt2) with zero rational part

    Returns:
        The unique Sqrt2RationalElement with positive q

    Raises:
        NotInSqrt2RationalsError: if r has a nonzero rational part
    """
    if isinstance(r, QuadExt):
        if r.field != (2,) or r.a != 0:
            raise NotInSqrt2RationalsError
        return Sqrt2RationalElement.from_scale(Fraction(r.b))
    if r != 0:
        raise NotInSqrt2RationalsError
    return Sqrt2RationalElement.from_scale(0)


def reduce_imag_quadratic(field: BoundaryField, alpha: QuadExt | int, beta: QuadExt | int) -> ImagQuadElement:
    """
    Compute the triple (a, b, c) of alpha/beta: a + b*w = alpha*conj(beta), c = |beta|^2.

    Args:
        field: Imaginary boundary field
        alpha: Algebraic integer
        beta: Nonzero algebraic integer with (alpha, beta) = O_K

    Returns:
        The canonical element

    Raises:
        ZeroDenominatorError: if beta = 0
        FractionNotReducedError: if alpha and beta share a non-unit factor
    """
    return reduce_coprime(field, _to_ok(field, alpha), _to_ok(field, beta))


def reduce_coprime(field: BoundaryField, alpha: OKInteger, beta: OKInteger) -> ImagQuadElement:
    """Triple for a coprime pair of O_K integers in omega-coordinates."""
    if beta == (0, 0):
        raise ZeroDenominatorError
    a, b = field.ok_mul(alpha, field.ok_conj(beta))
    c = field.ok_norm(beta)
    if gcd(field.ok_norm(alpha), c, a, b) != 1:
        raise FractionNotReducedError
    return ImagQuadElement(field, a, b, c)


def reduce_fraction(field: BoundaryField, alpha: OKInteger, beta: OKInteger) -> ImagQuadElement:
    """Bring alpha/beta to lowest terms before computing its triple."""
    if beta == (0, 0):
        raise ZeroDenominatorError
    g = field.ok_gcd(alpha, beta)
    return reduce_coprime(field, field.ok_exact_div(alpha, g), field.ok_exact_div(beta, g))


def _to_ok(field: BoundaryField, x: QuadExt | int) -> OKInteger:
    u, v = field.from_quad(x)
    if u.denominator != 1 or v.denominator != 1:
        raise InvalidElementError(f"{x} is not an algebraic integer of {field}")
    return int(u), int(v)


def element_from_value(field: BoundaryField, value: Fraction | QuadExt | int) -> KElement:
    """Canonical element of ``field`` with the given exact value."""
    if field is BoundaryField.RATIONAL:
        if isinstance(value, QuadExt):
            rational = value.rational()
            if rational is None:
                raise InvalidElementError(f"{value} is not rational")
            value = rational
        return RationalElement.from_fraction(value)
    if field is BoundaryField.SQRT2_RATIONAL:
        return canonicalize_sqrt2_rational(value)
    u, v = field.from_quad(value)
    return ImagQuadElement.from_components(field, u, v)


def element_from_components(field: BoundaryField, components: tuple[Fraction, ...]) -> KElement:
    """Inverse of KElement.components."""
    if field is BoundaryField.RATIONAL:
        return RationalElement.from_fraction(components[0])
    if field is BoundaryField.SQRT2_RATIONAL:
        return Sqrt2RationalElement.from_scale(components[0])
    return ImagQuadElement.from_components(field, components[0], components[1])


def distance_sq(z: KElement, w: KElement) -> Fraction:
    """Exact |z - w|^2 for two finite elements of the same field."""
    if z.field is not w.field:
        raise InvalidElementError(f"cannot compare {z.field} with {w.field}")
    deltas = [x - y for x, y in zip(z.components(), w.components(), strict=True)]
    if z.field is BoundaryField.RATIONAL:
        return deltas[0] ** 2
    if z.field is BoundaryField.SQRT2_RATIONAL:
        return 2 * deltas[0] ** 2
    return Fraction(z.field.norm_form(deltas[0], deltas[1]))


# ----------------------------------------------------------------------
# Text forms
# ----------------------------------------------------------------------

_RATIONAL_RE = re.compile(r"^([+-]?\d+)(?:/(\d+))?$")
_SQRT2_TIMES_RE = re.compile(r"^([+-]?)sqrt2(?:\*(\d+))?(?:/(\d+))?$")
_SQRT2_OVER_RE = re.compile(r"^([+-]?\d+)/(?:\(sqrt2(?:\*(\d+))?\)|sqrt2)$")
_IMAG_FRACTION_RE = re.compile(r"^\((.+)\)/(\d+)$|^([^()]+)/(\d+)$")
_IMAG_TERM_RE = re.compile(r"[+-]?[^+-]+")


def parse_element(text: str, field: BoundaryField) -> KElement:
    """
    Parse canonical (and a few convenient) text forms.

    Accepted forms: ``inf``; ``p/q`` for Q; ``sqrt2*p/q``, ``p/(sqrt2*q)``, ``sqrt2``, ``p/sqrt2`` for
    sqrt2*Q; ``(a+b*w)/c``, ``a+b*w``, ``w`` for the imaginary fields (``i`` is accepted for w).

    Raises:
        ElementParseError: if the text does not describe an element of the field
    """
    compact = text.replace(" ", "")
    if compact in ("inf", "∞"):
        return InfinityElement(field)
    try:
        if field is BoundaryField.RATIONAL:
            return _parse_rational(compact)
        if field is BoundaryField.SQRT2_RATIONAL:
            return _parse_sqrt2(compact)
        return _parse_imaginary(compact, field)
    except (ValueError, ZeroDivisionError) as exc:
        raise ElementParseError(text, str(field)) from exc


def _parse_rational(text: str) -> RationalElement:
    match = _RATIONAL_RE.match(text)
    if not match:
        raise ValueError(text)
    return RationalElement.from_fraction(Fraction(int(match[1]), int(match[2] or 1)))


def _parse_sqrt2(text: str) -> Sqrt2RationalElement:
    if text in ("0", "+0", "-0"):
        return Sqrt2RationalElement.from_scale(0)
    match = _SQRT2_TIMES_RE.match(text)
    if match:
        sign = -1 if match[1] == "-" else 1
        return Sqrt2RationalElement.from_scale(Fraction(sign * int(match[2] or 1), int(match[3] or 1)))
    match = _SQRT2_OVER_RE.match(text)
    if match:
        return Sqrt2RationalElement.from_scale(Fraction(int(match[1]), 2 * int(match[2] or 1)))
    raise ValueError(text)


def _parse_imaginary(text: str, field: BoundaryField) -> ImagQuadElement:
    match = _IMAG_FRACTION_RE.match(text)
    if match:
        numerator = match[1] or match[3]
        denominator = int(match[2] or match[4])
    else:
        numerator, denominator = text, 1
    x, y = 0, 0
    for term in _IMAG_TERM_RE.findall(numerator):
        if term[-1] in "wi":
            coefficient = term[:-1].rstrip("*")
            y += int(coefficient + "1") if coefficient in ("", "+", "-") else int(coefficient)
        else:
            x += int(term)
    return ImagQuadElement.from_components(field, Fraction(x, denominator), Fraction(y, denominator))


# ----------------------------------------------------------------------
# Sampling and enumeration
# ----------------------------------------------------------------------


def random_element(field: BoundaryField, rng: random.Random, max_height: int) -> KElement:
    """
    Draw a finite element with height at most ``max_height``.

    Args:
        field: Boundary field
        rng: Seeded random generator
        max_height: Height bound (at least 1)

    Returns:
        A canonical element
    """
    if field is BoundaryField.RATIONAL:
        q = rng.randint(1, isqrt(max_height))
        return RationalElement.from_fraction(Fraction(rng.randint(-3 * q, 3 * q), q))
    if field is BoundaryField.SQRT2_RATIONAL:
        if max_height >= 2 and rng.random() < 0.5:
            q = rng.randint(1, isqrt(max_height // 2))
            p = 2 * rng.randint(-2 * q, 2 * q) + 1
            return Sqrt2RationalElement.from_scale(Fraction(p, 2 * q))
        q = 2 * rng.randint(0, (isqrt(max_height) - 1) // 2) + 1
        return Sqrt2RationalElement.from_scale(Fraction(rng.randint(-3 * q, 3 * q), q))
    limit = isqrt(max_height)
    while True:
        beta = (rng.randint(-limit, limit), rng.randint(-limit, limit))
        if beta != (0, 0) and field.ok_norm(beta) <= max_height:
            break
    spread = 2 * limit + 2
    alpha = (rng.randint(-spread, spread), rng.randint(-spread, spread))
    return reduce_fraction(field, alpha, beta)


def elements_near(
    field: BoundaryField, max_height: int, center: complex, radius: Callable[[int], float | None]
) -> Iterator[KElement]:
    """
    Yield finite elements of height <= max_height near ``center``.

    Args:
        field: Boundary field
        max_height: Height bound
        center: Center of the search window (real part only for real fields)
        radius: Window radius for a given height, or None to skip that height

    The window is padded, so callers apply their own exact filter. Elements may be
    yielded more than once for imaginary fields.
    """
    if field is BoundaryField.RATIONAL:
        for q in range(1, isqrt(max_height) + 1):
            reach = radius(q * q)
            if reach is None:
                continue
            for p in range(floor((center.real - reach) * q) - 1, ceil((center.real + reach) * q) + 2):
                if gcd(p, q) == 1:
                    yield RationalElement(p, q)
    elif field is BoundaryField.SQRT2_RATIONAL:
        for q in range(1, isqrt(max_height) + 1, 2):
            reach = radius(q * q)
            if reach is None:
                continue
            low, high = (center.real - reach) * q / sqrt(2), (center.real + reach) * q / sqrt(2)
            for p in range(floor(low) - 1, ceil(high) + 2):
                if gcd(p, q) == 1:
                    yield Sqrt2RationalElement(p, q, Sqrt2Class.Q_ODD)
        for q in range(1, isqrt(max_height // 2) + 1):
            reach = radius(2 * q * q)
            if reach is None:
                continue
            low, high = (center.real - reach) * q * sqrt(2), (center.real + reach) * q * sqrt(2)
            for p in range(floor(low) - 1, ceil(high) + 2):
                if p % 2 and gcd(p, q) == 1:
                    yield Sqrt2RationalElement(p, q, Sqrt2Class.P_ODD)
    else:
        yield from _imaginary_near(field, max_height, center, radius)


def _imaginary_near(
    field: BoundaryField, max_height: int, center: complex, radius: Callable[[int], float | None]
) -> Iterator[KElement]:
    limit = 2 * isqrt(max_height) + 2
    omega = field.to_complex(0.0, 1.0)
    for x in range(-limit, limit + 1):
        for y in range(-limit, limit + 1):
            beta = (x, y)
            norm = field.ok_norm(beta)
            if norm == 0 or norm > max_height:
                continue
            window = radius(norm)
            if window is None:
                continue
            target = center * field.to_complex(x, y)
            reach = window * sqrt(norm) + 1
            v_low, v_high = (target.imag - reach) / omega.imag, (target.imag + reach) / omega.imag
            for v in range(floor(v_low), ceil(v_high) + 1):
                u_mid = target.real - v * omega.real
                for u in range(floor(u_mid - reach), ceil(u_mid + reach) + 1):
                    yield reduce_fraction(field, (u, v), beta)
