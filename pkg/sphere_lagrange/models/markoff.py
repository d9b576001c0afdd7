"""
Markoff-type equations a*x^2 + b*y1^2 + c*y2^2 = k*x*y1*y2 and their solution triples.
"""

from collections.abc import Callable
from dataclasses import dataclass
from functools import cached_property
from typing import Any

from sympy import Poly, symbols

from sphere_lagrange.models.exceptions import InvalidElementError

_X, _Y1, _Y2 = symbols("x y1 y2")
_VARIABLES = (_X, _Y1, _Y2)


@dataclass(frozen=True)
class MarkoffEquation:
    """Diagonal cubic equation a*x^2 + b*y1^2 + c*y2^2 = k*x*y1*y2 with a root triple."""

    a: int
    b: int
    c: int
    k: int
    root: tuple[int, int, int]
    name: str = ""

    def __post_init__(self) -> None:
        if not self.holds(*self.root):
            raise InvalidElementError(f"root {self.root} does not solve {self}")

    @property
    def polynomial(self) -> Poly:
        x, y1, y2 = _VARIABLES
        return Poly(self.a * x**2 + self.b * y1**2 + self.c * y2**2 - self.k * x * y1 * y2, *_VARIABLES)

    def holds(self, x: int, y1: int, y2: int) -> bool:
        return bool(self.a * x * x + self.b * y1 * y1 + self.c * y2 * y2 == self.k * x * y1 * y2)

    @cached_property
    def flips(self) -> tuple[Callable[[tuple[int, int, int]], tuple[int, int, int]], ...]:
        """
        Vieta involutions, one per coordinate.

        Fixing two coordinates leaves a quadratic in the third whose two roots sum to
        -(linear coefficient)/(leading coefficient); the flip swaps a root for the other.
        """
        moves = []
        for slot, variable in enumerate(_VARIABLES):
            quadratic = Poly(self.polynomial.as_expr(), variable)
            leading = quadratic.coeff_monomial(variable**2)
            linear = quadratic.coeff_monomial(variable)
            # root sum as a polynomial in the two fixed coordinates
            others = [v for v in _VARIABLES if v is not variable]
            root_sum = Poly(-linear / leading, *others)
            moves.append(_make_flip(slot, root_sum))
        return tuple(moves)

    def neighbours(self, triple: tuple[int, int, int]) -> list[tuple[int, int, int]]:
        return [flip(triple) for flip in self.flips]

    def __str__(self) -> str:
        return f"{self.a}x^2 + {self.b}y1^2 + {self.c}y2^2 = {self.k}x*y1*y2"


def _make_flip(slot: int, root_sum: Poly) -> Callable[[tuple[int, int, int]], tuple[int, int, int]]:
    terms = [(int(coeff), monom) for monom, coeff in root_sum.terms()]

    def flip(triple: tuple[int, int, int]) -> tuple[int, int, int]:
        fixed = [value for i, value in enumerate(triple) if i != slot]
        total = 0
        for coeff, (e1, e2) in terms:
            total += coeff * fixed[0] ** e1 * fixed[1] ** e2
        result = list(triple)
        result[slot] = total - triple[slot]
        return (result[0], result[1], result[2])

    return flip


# 2x^2 + y1^2 + y2^2 = 4 x y1 y2, generating the discrete spectra below 2
SQRT2_MARKOFF = MarkoffEquation(2, 1, 1, 4, (1, 1, 1), "sqrt2-markoff")
# x^2 + y^2 + z^2 = 3xyz
CLASSICAL_MARKOFF = MarkoffEquation(1, 1, 1, 3, (1, 1, 1), "classical")

EQUATIONS = {equation.name: equation for equation in (SQRT2_MARKOFF, CLASSICAL_MARKOFF)}


@dataclass(frozen=True, order=True)
class MarkoffTriple:
    """Positive solution (x, y1, y2) with y1 <= y2."""

    x: int
    y1: int
    y2: int
    equation_name: str = SQRT2_MARKOFF.name

    def __post_init__(self) -> None:
        if min(self.x, self.y1, self.y2) < 1:
            raise InvalidElementError(f"{self.as_tuple()} is not positive")
        if not EQUATIONS[self.equation_name].holds(self.x, self.y1, self.y2):
            raise InvalidElementError(f"{self.as_tuple()} does not solve {EQUATIONS[self.equation_name]}")

    def as_tuple(self) -> tuple[int, int, int]:
        return (self.x, self.y1, self.y2)

    def to_dict(self) -> dict[str, Any]:
        return {"x": self.x, "y1": self.y1, "y2": self.y2}

    def __str__(self) -> str:
        return f"({self.x}, {self.y1}, {self.y2})"
