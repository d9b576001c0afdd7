"""
The six sphere cases, their exact constants and rational sphere points.
"""

from collections.abc import Callable, Sequence
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from functools import cache
from math import gcd
from typing import Any, ClassVar

from sphere_lagrange.models.boundary_field import BoundaryField
from sphere_lagrange.models.exceptions import InvalidSpherePointError, UnknownCaseError
from sphere_lagrange.models.quad_ext import Scalar, sqrt_rational

Vector = tuple[Fraction, ...]


class SpaceCase(Enum):
    """The six spaces (sphere, boundary field)."""

    S1_I = "S1_I"
    S1_II = "S1_II"
    S1_III = "S1_III"
    S2_I = "S2_I"
    S2_II = "S2_II"
    S2_III = "S2_III"

    def __str__(self) -> str:
        return self.value

    @property
    def tag(self) -> str:
        """Command-line tag, e.g. ``s1-iii``."""
        return self.value.lower().replace("_", "-")

    @property
    def sphere_dim(self) -> int:
        return 1 if self.value.startswith("S1") else 2

    @classmethod
    def from_tag(cls, tag: str) -> "SpaceCase":
        """
        Look up a case from ``S1_III``, ``s1-iii`` or similar.

        Raises:
            UnknownCaseError: if the tag names no case
        """
        key = tag.strip().upper().replace("-", "_")
        try:
            return cls(key)
        except ValueError:
            raise UnknownCaseError(tag) from None


def _phi_s1_i(c: Sequence[Any]) -> tuple[Any, ...]:
    # t = sqrt2*s, so sqrt2*t = 2s
    return (2 * c[0] - 1, 0)


def _phi_s1_ii(c: Sequence[Any]) -> tuple[Any, ...]:
    return (2 * c[0] - 1, 1 - 2 * c[0])


def _phi_s1_iii(c: Sequence[Any]) -> tuple[Any, ...]:
    return (c[0], 1 - c[0], 0)


def _phi_s2_i(c: Sequence[Any]) -> tuple[Any, ...]:
    u, v = c
    return (u - v, u + v - 1, 0)


def _phi_s2_ii(c: Sequence[Any]) -> tuple[Any, ...]:
    u, v = c
    return (1 - 2 * v, u, 1 - u)


def _phi_s2_iii(c: Sequence[Any]) -> tuple[Any, ...]:
    u, v = c
    return (1 - u, u - v, v, 0)


def _unphi_s1_i(x: Vector) -> Vector:
    return ((x[0] + 1) / 2,)


def _unphi_s1_iii(x: Vector) -> Vector:
    return (x[0],)


def _unphi_s2_i(x: Vector) -> Vector:
    return ((x[0] + x[1] + 1) / 2, (x[1] + 1 - x[0]) / 2)


def _unphi_s2_ii(x: Vector) -> Vector:
    return (x[1], (1 - x[0]) / 2)


def _unphi_s2_iii(x: Vector) -> Vector:
    return (1 - x[0], x[2])


@dataclass(frozen=True)
class SpaceSpec:
    """
    Exact data (S, n, P) of one case.

    Irrational constants R, D and C are stored through their rational squares and
    the rational product R*D; exact values in Q(sqrt2)(sqrt3) are derived on demand.
    """

    case: SpaceCase
    dim: int
    center: Vector
    radius_sq: Fraction
    base_point: tuple[int, ...]
    rd: Fraction
    dilation_sq: Fraction
    boundary_field: BoundaryField
    in_hyperplane: bool
    phi: Callable[[Sequence[Any]], tuple[Any, ...]]
    unphi: Callable[[Vector], Vector]

    _TABLE: ClassVar[dict[SpaceCase, tuple[Any, ...]]] = {
        # dim, center, R^2, n, RD, C^2, field, W, phi, phi^-1
        SpaceCase.S1_I: (2, (0, 0), 1, (0, 1), 1, 2, BoundaryField.SQRT2_RATIONAL, False, _phi_s1_i, _unphi_s1_i),
        SpaceCase.S1_II: (2, (0, 0), 2, (1, 1), 2, 4, BoundaryField.SQRT2_RATIONAL, False, _phi_s1_ii, _unphi_s1_i),
        SpaceCase.S1_III: (
            3,
            (Fraction(1, 3),) * 3,
            Fraction(2, 3),
            (0, 0, 1),
            1,
            2,
            BoundaryField.RATIONAL,
            True,
            _phi_s1_iii,
            _unphi_s1_iii,
        ),
        SpaceCase.S2_I: (3, (0, 0, 0), 1, (0, 0, 1), 1, 2, BoundaryField.GAUSSIAN, False, _phi_s2_i, _unphi_s2_i),
        SpaceCase.S2_II: (
            3,
            (0, 0, 0),
            2,
            (0, 1, 1),
            1,
            2,
            BoundaryField.SQRT_MINUS_2,
            False,
            _phi_s2_ii,
            _unphi_s2_ii,
        ),
        SpaceCase.S2_III: (
            4,
            (Fraction(1, 4),) * 4,
            Fraction(3, 4),
            (0, 0, 0, 1),
            1,
            2,
            BoundaryField.EISENSTEIN,
            True,
            _phi_s2_iii,
            _unphi_s2_iii,
        ),
    }

    @classmethod
    @cache
    def for_case(cls, case: SpaceCase) -> "SpaceSpec":
        """Build (once) the exact specification of a case."""
        dim, center, radius_sq, base, rd, dilation_sq, field, in_w, phi, unphi = cls._TABLE[case]
        spec = cls(
            case=case,
            dim=dim,
            center=tuple(Fraction(x) for x in center),
            radius_sq=Fraction(radius_sq),
            base_point=base,
            rd=Fraction(rd),
            dilation_sq=Fraction(dilation_sq),
            boundary_field=field,
            in_hyperplane=in_w,
            phi=phi,
            unphi=unphi,
        )
        errors = spec.validate()
        if errors:
            raise ValueError("; ".join(errors))
        return spec

    # ------------------------------------------------------------------
    # Derived constants
    # ------------------------------------------------------------------

    @property
    def radius(self) -> Scalar:
        return sqrt_rational(self.radius_sq)

    @property
    def dilation(self) -> Scalar:
        return sqrt_rational(self.dilation_sq)

    @property
    def plane_distance(self) -> Scalar:
        """D = RD / R."""
        return self.rd / self.radius

    @property
    def plane_distance_sq(self) -> Fraction:
        return self.rd * self.rd / self.radius_sq

    @property
    def normal(self) -> Vector:
        """Direction n - c, normal to the plane P."""
        return tuple(n - c for n, c in zip(self.base_point, self.center, strict=True))

    @property
    def plane_foot(self) -> Vector:
        """Foot of the perpendicular from n onto P: n - (D/R)(n - c)."""
        ratio = self.rd / self.radius_sq
        return tuple(n - ratio * v for n, v in zip(self.base_point, self.normal, strict=True))

    def validate(self) -> list[str]:
        """
        Check the defining relations of the case.

        Returns:
            List of error messages (empty if valid)
        """
        errors = []
        if len(self.center) != self.dim or len(self.base_point) != self.dim:
            errors.append("dimension mismatch")
        if sum((n - c) ** 2 for n, c in zip(self.base_point, self.center, strict=True)) != self.radius_sq:
            errors.append("base point is not on the sphere")
        if self.in_hyperplane and (sum(self.center) != 1 or sum(self.base_point) != 1):
            errors.append("center and base point must satisfy the coordinate-sum constraint")
        if not self.on_plane(self.phi(self.unphi(self.plane_foot))):
            errors.append("plane foot does not satisfy the plane equation")
        return errors

    def on_plane(self, x: Sequence[Fraction]) -> bool:
        """Whether x lies in P (and in W where present)."""
        offset = sum((a - f) * v for a, f, v in zip(x, self.plane_foot, self.normal, strict=True))
        return offset == 0 and (not self.in_hyperplane or sum(x) == 1)

    def on_sphere(self, x: Sequence[Fraction]) -> bool:
        inside = sum((a - c) ** 2 for a, c in zip(x, self.center, strict=True)) == self.radius_sq
        return inside and (not self.in_hyperplane or sum(x) == 1)


@dataclass(frozen=True)
class SpherePoint:
    """A rational point (p_1, ..., p_l)/q of a case's sphere with primitive numerator and q >= 1."""

    case: SpaceCase
    p: tuple[int, ...]
    q: int

    def __post_init__(self) -> None:
        spec = SpaceSpec.for_case(self.case)
        if len(self.p) != spec.dim:
            raise InvalidSpherePointError(f"expected {spec.dim} coordinates, got {len(self.p)}")
        if self.q < 1:
            raise InvalidSpherePointError("q must be positive")
        g = 0
        for x in self.p:
            g = gcd(g, x)
        if g != 1:
            raise InvalidSpherePointError(f"numerator {self.p} is not primitive")
        if not spec.on_sphere(self.coordinates()):
            raise InvalidSpherePointError(f"{self} is not on the sphere of {self.case}")

    @classmethod
    def from_coordinates(cls, case: SpaceCase, coords: Sequence[Fraction]) -> "SpherePoint":
        """Primitive representation of a rational point."""
        q = 1
        for x in coords:
            q = q * Fraction(x).denominator // gcd(q, Fraction(x).denominator)
        return cls(case, tuple(int(Fraction(x) * q) for x in coords), q)

    @classmethod
    def parse(cls, case: SpaceCase, text: str) -> "SpherePoint":
        """
        Parse ``(p1,...,pl)/q`` (``/q`` optional).

        Raises:
            InvalidSpherePointError: on malformed text
        """
        body = text.replace(" ", "")
        if body.endswith(")"):
            numerator, denominator = body, "1"
        else:
            numerator, _, denominator = body.rpartition("/")
        if not (numerator.startswith("(") and numerator.endswith(")")):
            raise InvalidSpherePointError(f"cannot parse {text!r}")
        try:
            parts = tuple(Fraction(x) for x in numerator[1:-1].split(","))
            q = Fraction(int(denominator))
        except (ValueError, ZeroDivisionError):
            raise InvalidSpherePointError(f"cannot parse {text!r}") from None
        return cls.from_coordinates(case, tuple(x / q for x in parts))

    def coordinates(self) -> Vector:
        return tuple(Fraction(x, self.q) for x in self.p)

    def height(self) -> int:
        return self.q

    @property
    def node_id(self) -> str:
        return "p" + "_".join(str(x) for x in (*self.p, self.q))

    def to_dict(self) -> dict[str, Any]:
        """
        Convert to the JSON export form.

        Returns:
            Dictionary with case, p, q and height
        """
        return {"case": self.case.value, "p": list(self.p), "q": self.q, "height": self.q}

    @classmethod
    def from_dict(cls, data: dict[str, Any]) -> "SpherePoint":
        return cls(SpaceCase.from_tag(data["case"]), tuple(data["p"]), data["q"])

    def sort_key(self) -> tuple[int, tuple[int, ...]]:
        return (self.q, self.p)

    def __str__(self) -> str:
        return f"({','.join(str(x) for x in self.p)})/{self.q}"
