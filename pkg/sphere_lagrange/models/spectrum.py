"""
Exact values of the discrete parts of the Lagrange spectra.
"""

from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from typing import Any

import sympy

from sphere_lagrange.models.space_spec import SpaceCase


class Provenance(Enum):
    """Where a spectrum value comes from."""

    GENERATED = "generated"  # a Markoff-type family of the case
    DERIVED = "derived"  # a family of another space, rescaled by the dilation factor
    CITED = "cited"  # a constant quoted from the literature

    def __str__(self) -> str:
        return self.value


@dataclass(frozen=True)
class SpectrumValue:
    """A spectrum value held as an exact sympy expression."""

    case: SpaceCase
    value: sympy.Expr
    generator: str
    provenance: Provenance
    label: str = ""

    @property
    def square(self) -> sympy.Expr:
        return sympy.expand(self.value**2)

    def square_fraction(self) -> Fraction | None:
        """The square as a Fraction when it is rational."""
        square = self.square
        if square.is_Rational:
            return Fraction(int(square.p), int(square.q))
        return None

    def sort_key(self) -> Fraction:
        """Exact square when rational, otherwise its 60-digit decimal."""
        exact = self.square_fraction()
        if exact is not None:
            return exact
        return Fraction(str(sympy.N(self.square, 60)))

    def decimal(self, digits: int = 30) -> str:
        return str(sympy.N(self.value, digits))

    def to_dict(self, digits: int = 30) -> dict[str, Any]:
        return {
            "case": self.case.value,
            "value": sympy.sstr(self.value),
            "value_sq": sympy.sstr(self.square),
            "decimal": self.decimal(digits),
            "generator": self.generator,
            "provenance": self.provenance.value,
            "label": self.label,
        }

    def csv_row(self, digits: int = 30) -> list[str]:
        """Row for the columns value_sq, value, generator, case, provenance."""
        return [sympy.sstr(self.square), self.decimal(digits), self.generator, self.case.value, self.provenance.value]

    def __str__(self) -> str:
        return f"{sympy.sstr(self.value)} ~ {self.decimal(12)} [{self.generator}]"


# S2_II's limit point as printed in the literature, with ambiguous digit grouping
S2_II_LIMIT_TEXT = "(4(82 662 667 + 115 77720 sqrt47)/405 186 721)^(1/2)"
S2_II_LIMIT_COEFFICIENT = 11577720

# The first generators of the S1_I family as printed in the literature; the equation has no
# solution with x = 11, so generated lists never contain it
CITED_X_LIST = "1, 5, 11, 29, ..."
CITED_Y_LIST = "1, 3, 11, 17, ..."


def cited_constants(case: SpaceCase) -> list[SpectrumValue]:
    """Quoted minimum and smallest accumulation point of a case's spectrum."""
    sqrt = sympy.sqrt
    rational = sympy.Rational
    cited = Provenance.CITED
    derived = Provenance.DERIVED
    table: dict[SpaceCase, list[SpectrumValue]] = {
        SpaceCase.S1_I: [
            SpectrumValue(case, sqrt(2), "minimum", cited, "minimum"),
            SpectrumValue(case, sympy.Integer(2), "accumulation", cited, "smallest accumulation point"),
        ],
        SpaceCase.S1_II: [
            SpectrumValue(case, sympy.Integer(1), "minimum", derived, "minimum"),
            SpectrumValue(case, sqrt(2), "accumulation", derived, "smallest accumulation point"),
        ],
        SpaceCase.S1_III: [
            SpectrumValue(case, sqrt(5) / sqrt(2), "minimum", derived, "minimum"),
            SpectrumValue(case, 3 / sqrt(2), "accumulation", derived, "smallest accumulation point"),
        ],
        SpaceCase.S2_I: [
            SpectrumValue(case, sqrt(rational(3, 2)), "minimum", cited, "minimum"),
            SpectrumValue(case, sqrt(2), "accumulation", cited, "smallest limit point"),
        ],
        SpaceCase.S2_II: [
            SpectrumValue(case, sympy.Integer(1), "minimum", cited, "minimum"),
            SpectrumValue(
                case,
                sqrt(4 * (82662667 + S2_II_LIMIT_COEFFICIENT * sqrt(47)) / sympy.Integer(405186721)),
                "accumulation",
                cited,
                f"smallest limit point, printed as {S2_II_LIMIT_TEXT}",
            ),
        ],
        SpaceCase.S2_III: [
            SpectrumValue(case, rational(13, 4) ** rational(1, 4), "minimum", cited, "minimum"),
            SpectrumValue(
                case, sqrt((14 + 8 * sqrt(3)) / sympy.Integer(13)), "accumulation", cited, "smallest limit point"
            ),
        ],
    }
    return table[case]
