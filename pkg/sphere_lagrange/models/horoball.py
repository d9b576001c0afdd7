"""
Horoballs inside the spheres, the integer tangency forms and tangency graphs.
"""

from dataclasses import dataclass, field
from enum import Enum
from typing import Any, ClassVar

import mpmath

from sphere_lagrange.models.exceptions import CaseMismatchError, SamePointError
from sphere_lagrange.models.quad_ext import Scalar, evaluate
from sphere_lagrange.models.space_spec import SpaceCase, SpherePoint


def decimal_str(x: Scalar, digits: int = 30) -> str:
    """Decimal expansion of an exact value, for display only."""
    with mpmath.workdps(digits + 10):
        return str(mpmath.nstr(evaluate(x), digits))


@dataclass(frozen=True)
class Horoball:
    """A ball inside the sphere, internally tangent to it at a rational point."""

    base: SpherePoint
    radius: Scalar
    center: tuple[Scalar, ...]

    def to_dict(self, digits: int = 30) -> dict[str, Any]:
        """
        Convert to a dictionary with exact and decimal forms.

        Args:
            digits: Significant digits of the decimal forms

        Returns:
            Dictionary with base point, radius and center
        """
        return {
            "base": self.base.to_dict(),
            "radius": {"exact": str(self.radius), "decimal": decimal_str(self.radius, digits)},
            "center": [{"exact": str(x), "decimal": decimal_str(x, digits)} for x in self.center],
        }


@dataclass(frozen=True)
class BoundaryHoroball:
    """
    Ford ball in the upper half-space, tangent to the boundary at a finite point z.

    The center is (Re z, r) for real fields and (Re z, Im z, r) for imaginary ones.
    """

    base: str
    radius: Scalar
    center: tuple[Scalar, ...]

    def to_dict(self, digits: int = 30) -> dict[str, Any]:
        return {
            "base": self.base,
            "radius": {"exact": str(self.radius), "decimal": decimal_str(self.radius, digits)},
            "center": [{"exact": str(x), "decimal": decimal_str(x, digits)} for x in self.center],
        }


@dataclass(frozen=True)
class TangencyForm:
    """
    Integer bilinear form deciding tangency of two horoballs of a case.

    For the cases I and II the value is p.p' - weight*q*q' and is bounded above by the
    constant; for the cases III it is the off-diagonal sum sum_{i != j} p_i p'_j, which
    equals q*q' - p.p' on the hyperplane, and is bounded below.
    """

    case: SpaceCase
    weight: int
    constant: int
    upper: bool
    text: str

    _FORMS: ClassVar[dict[SpaceCase, tuple[int, int, bool, str]]] = {
        SpaceCase.S1_I: (1, -1, True, "aa'+bb'-cc' <= -1"),
        SpaceCase.S1_II: (2, -2, True, "aa'+bb'-2cc' <= -2"),
        SpaceCase.S1_III: (1, 1, False, "sum_{i!=j} p_i p'_j >= 1"),
        SpaceCase.S2_I: (1, -1, True, "aa'+bb'+cc'-dd' <= -1"),
        SpaceCase.S2_II: (2, -1, True, "aa'+bb'+cc'-2dd' <= -1"),
        SpaceCase.S2_III: (1, 1, False, "sum_{i!=j} p_i p'_j >= 1"),
    }

    @classmethod
    def for_case(cls, case: SpaceCase) -> "TangencyForm":
        weight, constant, upper, text = cls._FORMS[case]
        return cls(case, weight, constant, upper, text)

    def value(self, p: tuple[int, ...], q: int, p2: tuple[int, ...], q2: int) -> int:
        dot = sum(a * b for a, b in zip(p, p2, strict=True))
        if self.upper:
            return dot - self.weight * q * q2
        return q * q2 - dot

    def margin(self, value: int) -> int:
        """Distance of a form value from the extremal constant; never negative for valid pairs."""
        return self.constant - value if self.upper else value - self.constant


class Verdict(Enum):
    TANGENT = "tangent"
    DISJOINT = "disjoint"

    def __str__(self) -> str:
        return self.value


@dataclass(frozen=True)
class TangencyVerdict:
    """Certified relation of two horoballs."""

    first: SpherePoint
    second: SpherePoint
    verdict: Verdict
    form_value: int
    certificate: dict[str, str] = field(default_factory=dict)

    def to_dict(self) -> dict[str, Any]:
        return {
            "first": str(self.first),
            "second": str(self.second),
            "verdict": self.verdict.value,
            "form_value": self.form_value,
            "certificate": dict(sorted(self.certificate.items())),
        }


def check_pair(first: SpherePoint, second: SpherePoint) -> None:
    """
    Raises:
        CaseMismatchError: if the points belong to different cases
        SamePointError: if the points coincide
    """
    if first.case is not second.case:
        raise CaseMismatchError(str(first.case), str(second.case))
    if first == second:
        raise SamePointError


@dataclass
class TangencyGraph:
    """Sphere points of bounded height and their tangent pairs, in canonical order."""

    case: SpaceCase
    bound: int
    nodes: list[SpherePoint] = field(default_factory=list)
    edges: list[tuple[int, int]] = field(default_factory=list)

    def to_dict(self) -> dict[str, Any]:
        """
        Convert the graph to its JSON export form.

        Returns:
            Dictionary with case, bound, nodes and edges
        """
        return {
            "case": self.case.value,
            "bound": self.bound,
            "nodes": [{"p": list(node.p), "q": node.q, "height": node.q} for node in self.nodes],
            "edges": [[i, j] for i, j in self.edges],
        }

    @classmethod
    def from_dict(cls, data: dict[str, Any]) -> "TangencyGraph":
        """
        Create a graph from its JSON export form.

        Args:
            data: Dictionary produced by to_dict

        Returns:
            The graph with validated sphere points
        """
        case = SpaceCase.from_tag(data["case"])
        nodes = [SpherePoint(case, tuple(node["p"]), node["q"]) for node in data["nodes"]]
        edges = [(int(i), int(j)) for i, j in data["edges"]]
        return cls(case, int(data["bound"]), nodes, edges)

    def degree(self, index: int) -> int:
        return sum(1 for edge in self.edges if index in edge)

    def neighbours(self, node: SpherePoint) -> list[SpherePoint]:
        index = self.nodes.index(node)
        result = [self.nodes[j] for i, j in self.edges if i == index]
        result += [self.nodes[i] for i, j in self.edges if j == index]
        return sorted(result, key=SpherePoint.sort_key)

    def __str__(self) -> str:
        return f"TangencyGraph({self.case}, bound={self.bound}, {len(self.nodes)} nodes, {len(self.edges)} edges)"
