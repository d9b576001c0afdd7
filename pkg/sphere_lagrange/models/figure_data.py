"""
Reference correspondences z -> Phi(z) drawn in the horosphere figures of the six cases.
"""

from dataclasses import dataclass

from sphere_lagrange.models.k_element import KElement, parse_element
from sphere_lagrange.models.space_spec import SpaceCase, SpaceSpec, SpherePoint

_SQRT2_LIST = [
    "0",
    "1/sqrt2",
    "sqrt2*2/3",
    "3/(sqrt2*2)",
    "sqrt2",
    "5/(sqrt2*2)",
    "sqrt2*4/3",
    "3/sqrt2",
    "sqrt2*5/3",
    "7/(sqrt2*2)",
    "sqrt2*2",
    "inf",
]

_RAW: dict[SpaceCase, list[tuple[str, str]]] = {
    SpaceCase.S1_I: list(
        zip(
            _SQRT2_LIST,
            [
                "(-1,0)/1",
                "(0,-1)/1",
                "(3,-4)/5",
                "(4,-3)/5",
                "(1,0)/1",
                "(12,5)/13",
                "(15,8)/17",
                "(4,3)/5",
                "(21,20)/29",
                "(20,21)/29",
                "(3,4)/5",
                "(0,1)/1",
            ],
            strict=True,
        )
    ),
    SpaceCase.S1_II: list(
        zip(
            _SQRT2_LIST,
            [
                "(-1,1)/1",
                "(-1,-1)/1",
                "(-1,-7)/5",
                "(1,-7)/5",
                "(1,-1)/1",
                "(17,-7)/13",
                "(23,-7)/17",
                "(7,-1)/5",
                "(41,-1)/29",
                "(41,1)/29",
                "(7,1)/5",
                "(1,1)/1",
            ],
            strict=True,
        )
    ),
    SpaceCase.S1_III: [
        ("-2", "(-2,3,6)/7"),
        ("-1", "(-1,2,2)/3"),
        ("-1/2", "(-2,6,3)/7"),
        ("0", "(0,1,0)/1"),
        ("1/3", "(3,6,-2)/7"),
        ("1/2", "(2,2,-1)/3"),
        ("2/3", "(6,3,-2)/7"),
        ("1", "(1,0,0)/1"),
        ("2", "(2,-1,2)/3"),
        ("inf", "(0,0,1)/1"),
    ],
    SpaceCase.S2_I: [
        ("1", "(1,0,0)/1"),
        ("1+w", "(0,1,0)/1"),
        ("inf", "(0,0,1)/1"),
        ("w", "(-1,0,0)/1"),
        ("0", "(0,-1,0)/1"),
        ("(1+w)/2", "(0,0,-1)/1"),  # 1/(1-i)
    ],
    SpaceCase.S2_II: [
        ("1", "(1,1,0)/1"),
        ("(1+w)/3", "(1,-1,0)/1"),  # 1/(1-w)
        ("1+w", "(-1,1,0)/1"),
        ("(1+2w)/3", "(-1,-1,0)/1"),  # (-1+w)/(1+w)
        ("0", "(1,0,1)/1"),
        ("(2+w)/3", "(1,0,-1)/1"),  # w/(1+w)
        ("w", "(-1,0,1)/1"),
        ("(2+2w)/3", "(-1,0,-1)/1"),  # 2/(1-w)
        ("inf", "(0,1,1)/1"),
        ("(2+w)/2", "(0,1,-1)/1"),  # (-1+w)/w
        ("w/2", "(0,-1,1)/1"),  # -1/w
        ("(1+w)/2", "(0,-1,-1)/1"),
    ],
    SpaceCase.S2_III: [
        ("0", "(1,0,0,0)/1"),
        ("1", "(0,1,0,0)/1"),
        ("1+w", "(0,0,1,0)/1"),
        ("inf", "(0,0,0,1)/1"),
        ("2+w", "(-1,1,1,1)/2"),
        ("w", "(1,-1,1,1)/2"),
        ("-w", "(1,1,-1,1)/2"),
        ("(2+w)/3", "(1,1,1,-1)/2"),  # 1/(1-w)
    ],
}


@dataclass(frozen=True)
class FigurePoint:
    """One labelled correspondence of a figure."""

    case: SpaceCase
    element: KElement
    point: SpherePoint

    def to_dict(self) -> dict[str, str]:
        return {"case": self.case.value, "z": str(self.element), "point": str(self.point)}


def figure_points(case: SpaceCase) -> list[FigurePoint]:
    """The figure's correspondences for a case, in caption order."""
    field = SpaceSpec.for_case(case).boundary_field
    return [FigurePoint(case, parse_element(z, field), SpherePoint.parse(case, point)) for z, point in _RAW[case]]


def all_figure_points() -> list[FigurePoint]:
    return [point for case in SpaceCase for point in figure_points(case)]
