"""
Exact arithmetic in quadratic fields and towers of them.

An element a + b*sqrt(d) stores its coefficients in the base field, which is either
the rationals or another QuadExt field. The real tower Q(sqrt2)(sqrt3) holds every
radius, center and dilation factor of the six sphere cases; the imaginary fields
Q(sqrt-1), Q(sqrt-2) and Q(sqrt-3) host the complex boundary fields.
"""

from __future__ import annotations

from fractions import Fraction
from functools import total_ordering
from math import isqrt
from typing import Any, Union

import mpmath
from sympy import factorint

from sphere_lagrange.models.exceptions import (
    MixedFieldError,
    NotRealFieldError,
    QuadDivisionByZeroError,
    UnsupportedRadicandError,
)

Field = tuple[int, ...]
Scalar = Union[Fraction, "QuadExt"]
ScalarLike = Union[int, Fraction, "QuadExt"]

# Q(sqrt2)(sqrt3): the smallest tower containing all real case constants
REAL_TOWER: Field = (2, 3)


def field_of(x: ScalarLike) -> Field:
    """Return the tower of square roots a value lives in; () for rationals."""
    if isinstance(x, QuadExt):
        return x.field
    return ()


def _embeds(small: Field, large: Field) -> bool:
    """True when the radicands of ``small`` occur in ``large`` in the same order."""
    remaining = iter(large)
    return all(d in remaining for d in small)


def join_fields(left: Field, right: Field) -> Field:
    """
    Return the smallest tower containing both fields.

    Towers nest when one is a sub-tower of the other; two real towers that do not nest
    meet inside Q(sqrt2)(sqrt3).

    Raises:
        MixedFieldError: if the fields have no common tower
    """
    if _embeds(left, right):
        return right
    if _embeds(right, left):
        return left
    merged = tuple(d for d in REAL_TOWER if d in left or d in right)
    if set(merged) == set(left) | set(right):
        return merged
    raise MixedFieldError(left, right)


def lift(x: ScalarLike, field: Field) -> Scalar:
    """
    Embed a value into a field that contains it.

    Args:
        x: Rational or quadratic value
        field: Target tower

    Returns:
        The same number, represented in ``field``

    Raises:
        MixedFieldError: if ``field`` does not contain the field of ``x``
    """
    own = field_of(x)
    if own == field:
        return Fraction(x) if isinstance(x, int) else x
    if not _embeds(own, field):
        raise MixedFieldError(own, field)
    base = field[:-1]
    if isinstance(x, QuadExt) and x.d == field[-1]:
        return QuadExt(field[-1], lift(x.a, base), lift(x.b, base))
    return QuadExt(field[-1], lift(x, base), lift(0, base))


def demote(x: ScalarLike) -> Scalar:
    """Return the representation of ``x`` in the smallest tower prefix containing it."""
    if isinstance(x, QuadExt):
        if x.b == 0:
            return demote(x.a)
        return x
    return Fraction(x)


def sign(x: ScalarLike) -> int:
    """Exact sign of a real rational or real quadratic value."""
    if isinstance(x, QuadExt):
        return x.sign()
    return (x > 0) - (x < 0)


def evaluate(x: ScalarLike, ctx: Any = mpmath.mp) -> Any:
    """
    Evaluate a value in an mpmath context.

    Args:
        x: Rational or quadratic value
        ctx: ``mpmath.mp`` for floating point or ``mpmath.iv`` for outward-rounded intervals

    Returns:
        An mpmath number of the context's type
    """
    if isinstance(x, QuadExt):
        return evaluate(x.a, ctx) + evaluate(x.b, ctx) * ctx.sqrt(x.d)
    value = Fraction(x)
    return ctx.mpf(value.numerator) / value.denominator


def _check_squarefree(d: int) -> None:
    if d in (0, 1):
        raise ValueError(f"Quadratic extension requires a squarefree d other than 0 and 1, got {d}")
    for k in range(2, isqrt(abs(d)) + 1):
        if d % (k * k) == 0:
            raise ValueError(f"d must be squarefree, got {d}")


@total_ordering
class QuadExt:
    """Immutable element a + b*sqrt(d) with coefficients in a base field."""

    __slots__ = ("_a", "_b", "_base", "_d")

    def __init__(self, d: int, a: ScalarLike = 0, b: ScalarLike = 0) -> None:
        """
        Initialize a quadratic element.

        Args:
            d: Squarefree radicand of the top extension
            a: Rational part (in the base field)
            b: Coefficient of sqrt(d) (in the base field)
        """
        _check_squarefree(d)
        base = join_fields(field_of(a), field_of(b))
        if d in base:
            raise ValueError(f"sqrt({d}) is already part of the base field")
        self._d = d
        self._base = base
        self._a = lift(a, base)
        self._b = lift(b, base)

    # ------------------------------------------------------------------
    # Accessors
    # ------------------------------------------------------------------

    @property
    def d(self) -> int:
        return self._d

    @property
    def a(self) -> Scalar:
        return self._a

    @property
    def b(self) -> Scalar:
        return self._b

    @property
    def base(self) -> Field:
        return self._base

    @property
    def field(self) -> Field:
        return (*self._base, self._d)

    @property
    def is_real(self) -> bool:
        return all(d > 0 for d in self.field)

    def __setattr__(self, name: str, value: object) -> None:
        if hasattr(self, name):
            raise AttributeError("QuadExt is immutable")
        object.__setattr__(self, name, value)

    def __reduce__(self) -> tuple[Any, ...]:
        return (QuadExt, (self._d, self._a, self._b))

    # ------------------------------------------------------------------
    # Field structure
    # ------------------------------------------------------------------

    def conj(self) -> QuadExt:
        """Conjugate over the base field: b maps to -b."""
        return QuadExt(self._d, self._a, -self._b)

    def norm(self) -> Scalar:
        """Relative norm a^2 - d*b^2, an element of the base field."""
        return self._a * self._a - self._d * (self._b * self._b)

    def abs_sq(self) -> Scalar:
        """
        Squared absolute value.

        For imaginary d this is the norm a^2 - d*b^2; for real elements it is the square.
        """
        if self._d < 0:
            return self.norm()
        return demote(self * self)

    def inverse(self) -> QuadExt:
        """Multiplicative inverse (a - b*sqrt(d)) / norm."""
        if self.is_zero():
            raise QuadDivisionByZeroError
        n = self.norm()
        return QuadExt(self._d, self._a / n, -self._b / n)

    def is_zero(self) -> bool:
        return self._a == 0 and self._b == 0

    def sign(self) -> int:
        """
        Exact sign of a real element.

        Raises:
            NotRealFieldError: if any radicand in the tower is negative
        """
        if not self.is_real:
            raise NotRealFieldError(next(d for d in self.field if d < 0))
        sa, sb = sign(self._a), sign(self._b)
        if sb == 0 or sa == sb:
            return sa
        if sa == 0:
            return sb
        # opposite signs: the larger of a^2 and d*b^2 wins
        return sa if sign(self._a * self._a - self._d * (self._b * self._b)) > 0 else sb

    def rational(self) -> Fraction | None:
        """Return the value as a Fraction when it is rational, otherwise None."""
        value = demote(self)
        return value if isinstance(value, Fraction) else None

    # ------------------------------------------------------------------
    # Arithmetic
    # ------------------------------------------------------------------

    def _pair(self, other: object) -> tuple[QuadExt, QuadExt] | None:
        if not isinstance(other, int | Fraction | QuadExt):
            return None
        target = join_fields(self.field, field_of(other))
        left, right = lift(self, target), lift(other, target)
        assert isinstance(left, QuadExt) and isinstance(right, QuadExt)  # noqa: S101
        return left, right

    def __add__(self, other: object) -> QuadExt:
        pair = self._pair(other)
        if pair is None:
            return NotImplemented
        x, y = pair
        return QuadExt(x.d, x.a + y.a, x.b + y.b)

    __radd__ = __add__

    def __neg__(self) -> QuadExt:
        return QuadExt(self._d, -self._a, -self._b)

    def __pos__(self) -> QuadExt:
        return self

    def __sub__(self, other: object) -> QuadExt:
        pair = self._pair(other)
        if pair is None:
            return NotImplemented
        x, y = pair
        return QuadExt(x.d, x.a - y.a, x.b - y.b)

    def __rsub__(self, other: object) -> QuadExt:
        pair = self._pair(other)
        if pair is None:
            return NotImplemented
        x, y = pair
        return QuadExt(x.d, y.a - x.a, y.b - x.b)

    def __mul__(self, other: object) -> QuadExt:
        pair = self._pair(other)
        if pair is None:
            return NotImplemented
        x, y = pair
        return QuadExt(x.d, x.a * y.a + x.d * (x.b * y.b), x.a * y.b + x.b * y.a)

    __rmul__ = __mul__

    def __truediv__(self, other: object) -> QuadExt:
        pair = self._pair(other)
        if pair is None:
            return NotImplemented
        x, y = pair
        return x * y.inverse()

    def __rtruediv__(self, other: object) -> QuadExt:
        pair = self._pair(other)
        if pair is None:
            return NotImplemented
        x, y = pair
        return y * x.inverse()

    def __pow__(self, exponent: int) -> QuadExt:
        if exponent < 0:
            return self.inverse() ** (-exponent)
        result = lift(1, self.field)
        assert isinstance(result, QuadExt)  # noqa: S101
        base = self
        while exponent:
            if exponent & 1:
                result = result * base
            base = base * base
            exponent >>= 1
        return result

    # ------------------------------------------------------------------
    # Comparison and hashing
    # ------------------------------------------------------------------

    def __eq__(self, other: object) -> bool:
        """
        Exact equality in the common tower of both operands.

        Raises:
            MixedFieldError: if the operands have no common tower, as for arithmetic
        """
        if not isinstance(other, int | Fraction | QuadExt):
            return NotImplemented
        pair = self._pair(other)
        assert pair is not None  # noqa: S101
        x, y = pair
        return bool(x.a == y.a and x.b == y.b)

    def __lt__(self, other: object) -> bool:
        if not isinstance(other, int | Fraction | QuadExt):
            return NotImplemented
        return (self - other).sign() < 0

    def __hash__(self) -> int:
        value = demote(self)
        if isinstance(value, Fraction):
            return hash(value)
        return hash((value.d, value.a, value.b))

    def __bool__(self) -> bool:
        return not self.is_zero()

    # ------------------------------------------------------------------
    # Evaluation and display
    # ------------------------------------------------------------------

    def to_mpmath(self, ctx: Any = mpmath.mp) -> Any:
        """Evaluate in an mpmath context (``mp`` or ``iv``)."""
        return evaluate(self, ctx)

    def decimal(self, digits: int = 30) -> str:
        """Decimal string with ``digits`` significant digits."""
        with mpmath.workdps(digits + 10):
            return mpmath.nstr(self.to_mpmath(), digits)

    def __float__(self) -> float:
        return float(self.to_mpmath())

    def __str__(self) -> str:
        a, b = _format_part(self._a), _format_part(self._b)
        return f"{a}{'' if b.startswith('-') else '+'}{b}*sqrt({self._d})"

    def __repr__(self) -> str:
        return f"QuadExt({self._d}, {self._a!r}, {self._b!r})"


def _format_part(x: Scalar) -> str:
    if isinstance(x, QuadExt):
        return f"({x})"
    return str(x)


SQRT2 = QuadExt(2, 0, 1)
SQRT3 = QuadExt(3, QuadExt(2), QuadExt(2, 1))
SQRT6 = SQRT2 * SQRT3

_TOWER_ROOTS: dict[int, Scalar] = {1: Fraction(1), 2: SQRT2, 3: SQRT3, 6: SQRT6}


def sqrt_rational(r: int | Fraction) -> Scalar:
    """
    Exact square root of a non-negative rational inside Q(sqrt2)(sqrt3).

    Args:
        r: Non-negative rational

    Returns:
        A Fraction when r is a rational square, otherwise a real tower element

    Raises:
        UnsupportedRadicandError: if the squarefree part of r is not 1, 2, 3 or 6
    """
    value = Fraction(r)
    if value < 0:
        raise UnsupportedRadicandError(value)
    if value == 0:
        return Fraction(0)
    product = value.numerator * value.denominator
    square, free = 1, 1
    for prime, power in factorint(product).items():
        square *= prime ** (power // 2)
        if power % 2:
            free *= prime
    root = _TOWER_ROOTS.get(free)
    if root is None:
        raise UnsupportedRadicandError(value)
    scale = Fraction(square, value.denominator)
    return scale * root
