"""
Records of rational approximations and finite-height Lagrange estimates.
"""

from dataclasses import dataclass, field
from typing import Any

from sphere_lagrange.utils.interval import Interval, interval_str


@dataclass
class ApproximationRecord:
    """
    Best approximation of a target within one height class.

    ``element`` is the boundary point z; for sphere spaces ``sphere_point`` holds Phi(z)
    and ``height`` is its sphere height, otherwise ``height`` is H_K(z).
    """

    element: str
    height: int
    distance: Interval
    quality: Interval
    precision: int
    sphere_point: str = ""
    tied_with: list[str] = field(default_factory=list)

    @property
    def tie(self) -> bool:
        return bool(self.tied_with)

    @property
    def point(self) -> str:
        return self.sphere_point or self.element

    def to_dict(self, digits: int = 30) -> dict[str, Any]:
        data = {
            "element": self.element,
            "height": self.height,
            "distance": interval_str(self.distance, digits),
            "quality": interval_str(self.quality, digits),
            "precision": self.precision,
            "tie": self.tie,
            "tied_with": list(self.tied_with),
        }
        if self.sphere_point:
            data["sphere_point"] = self.sphere_point
        return data

    def __str__(self) -> str:
        tie = f" tie={','.join(self.tied_with)}" if self.tie else ""
        return f"{self.point} height={self.height} quality={interval_str(self.quality, 12)}{tie}"


@dataclass
class LagrangeEstimate:
    """
    Enclosure of the largest approximation quality over the height tail (bound/2, bound].

    A finite-height proxy for the limsup, not a certified Lagrange number.
    """

    target: str
    space: str
    bound: int
    enclosure: Interval
    tail_records: int
    best: ApproximationRecord

    def to_dict(self, digits: int = 30) -> dict[str, Any]:
        return {
            "target": self.target,
            "space": self.space,
            "bound": self.bound,
            "tail": [self.bound // 2 + 1, self.bound],
            "estimate": interval_str(self.enclosure, digits),
            "tail_records": self.tail_records,
            "best": self.best.to_dict(digits),
        }
