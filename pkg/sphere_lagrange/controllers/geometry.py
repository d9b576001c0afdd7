"""
The correspondence Phi = Psi o phi between a boundary field and a sphere.

phi is the affine identification of the boundary field with the plane P and Psi the
reflection through the sphere centered at the base point n with radius^2 = 2RD. On
points of the boundary field everything stays rational, so all maps here are exact.
"""

import random
from collections.abc import Sequence
from fractions import Fraction
from math import gcd
from typing import Any

from sphere_lagrange.models.boundary_field import BoundaryField
from sphere_lagrange.models.exceptions import (
    BaseReflectionError,
    FieldCaseMismatchError,
    InfinityPointError,
    InvariantViolationError,
    SamePointError,
)
from sphere_lagrange.models.k_element import (
    ImagQuadElement,
    InfinityElement,
    KElement,
    RationalElement,
    Sqrt2RationalElement,
    distance_sq,
    element_from_components,
    random_element,
)
from sphere_lagrange.models.reports import PhiReport, SampleSummary
from sphere_lagrange.models.space_spec import SpaceCase, SpaceSpec, SpherePoint, Vector
from sphere_lagrange.utils.logger import get_logger

logger = get_logger(__name__)


def space_spec(case: SpaceCase) -> SpaceSpec:
    """Exact data (S, n, P) of a case."""
    return SpaceSpec.for_case(case)


def _spec_for(z: KElement, case: SpaceCase) -> SpaceSpec:
    spec = SpaceSpec.for_case(case)
    if z.field is not spec.boundary_field:
        raise FieldCaseMismatchError(str(z.field), str(case))
    return spec


def _norm_sq(x: Sequence[Any]) -> Any:
    return sum((a * a for a in x), Fraction(0))


def _minus(x: Sequence[Any], y: Sequence[Any]) -> tuple[Any, ...]:
    return tuple(a - b for a, b in zip(x, y, strict=True))


# ----------------------------------------------------------------------
# Psi and phi
# ----------------------------------------------------------------------


def reflect_in_sphere(x: Sequence[Any], spec: SpaceSpec) -> tuple[Any, ...]:
    """
    Reflect x through the sphere centered at n: Psi(x) = n + 2RD(x - n)/|x - n|^2.

    Works on Fractions as well as on exact quadratic values.

    Raises:
        BaseReflectionError: if x = n
    """
    delta = _minus(x, spec.base_point)
    dist_sq = _norm_sq(delta)
    if dist_sq == 0:
        raise BaseReflectionError
    scale = 2 * spec.rd / dist_sq
    return tuple(n + scale * d for n, d in zip(spec.base_point, delta, strict=True))


def phi_plane(z: KElement, case: SpaceCase) -> Vector:
    """
    Affine image of z in the plane P.

    Raises:
        FieldCaseMismatchError: if z does not belong to the case's boundary field
        InvariantViolationError: if the image misses P
    """
    spec = _spec_for(z, case)
    point = tuple(Fraction(x) for x in spec.phi(z.components()))
    if not spec.on_plane(point):
        raise InvariantViolationError("phi image is not on the plane", {"case": str(case), "z": str(z)})
    return point


def plane_unmap(x: Sequence[Fraction], case: SpaceCase) -> KElement:
    """Inverse of phi_plane for rational points of P."""
    spec = SpaceSpec.for_case(case)
    return element_from_components(spec.boundary_field, spec.unphi(tuple(x)))


def base_foot(case: SpaceCase) -> KElement:
    """The boundary point z0 with phi(z0) the foot of the perpendicular from n."""
    return plane_unmap(SpaceSpec.for_case(case).plane_foot, case)


# ----------------------------------------------------------------------
# Phi and its inverse
# ----------------------------------------------------------------------


def closed_form(z: KElement, case: SpaceCase) -> tuple[tuple[int, ...], int]:
    """
    Integer numerator and denominator of Phi(z) from the case's closed formula.

    The formulas are written in the reduced data of z: (x^2, y^2, sqrt2*x*y) for
    r = x/y in sqrt2*Q, (p, q) for Q and (a, b, c, |alpha|^2) for the imaginary fields.
    """
    _spec_for(z, case)
    if isinstance(z, Sqrt2RationalElement):
        x2, y2, m = z.gcd_triple()
        if case is SpaceCase.S1_I:
            return (m - y2, x2 - m), x2 - m + y2
        return (x2 - y2, x2 - 2 * m + y2), x2 - m + y2
    if isinstance(z, RationalElement):
        p, q = z.p, z.q
        return (p * q, q * q - p * q, p * p - p * q), p * p + q * q - p * q
    if isinstance(z, ImagQuadElement):
        a, b, c, big_a = z.a, z.b, z.c, z.alpha_norm()
        if case is SpaceCase.S2_I:
            return (a - b, a + b - c, big_a - a - b), big_a + c - a - b
        if case is SpaceCase.S2_II:
            return (c - 2 * b, big_a - 2 * b, big_a + c - 2 * (a + b)), big_a + c - (a + 2 * b)
        return (c - a, a - b, b, big_a - a), big_a + c - a
    raise InfinityPointError


def map_to_sphere(z: KElement, case: SpaceCase) -> SpherePoint:
    """
    Phi(z) as a primitive rational sphere point; infinity maps to n.

    The generic composite is cross-checked against the closed formula, including the
    primitivity of its integer data.

    Raises:
        FieldCaseMismatchError: if z does not belong to the case's boundary field
        InvariantViolationError: if the two computations disagree
    """
    spec = _spec_for(z, case)
    if z.is_infinite:
        return SpherePoint(case, spec.base_point, 1)
    return _mapped(z, case, spec)[1]


def _mapped(z: KElement, case: SpaceCase, spec: SpaceSpec) -> tuple[Vector, SpherePoint]:
    """phi(z) and Phi(z) for a finite z, with the closed form cross-check."""
    x = phi_plane(z, case)
    point = SpherePoint.from_coordinates(case, reflect_in_sphere(x, spec))
    numerator, q = closed_form(z, case)
    divisor = gcd(*numerator, q)
    if divisor != 1 or (numerator, q) != (point.p, point.q):
        raise InvariantViolationError(
            "closed form disagrees with Psi o phi",
            {
                "case": str(case),
                "z": str(z),
                "generic": str(point),
                "closed_form": f"{numerator}/{q}",
                "gcd": str(divisor),
            },
        )
    return x, point


def unmap(point: SpherePoint, allow_infinity: bool = False) -> KElement:
    """
    Phi^-1 of a sphere point.

    Args:
        point: Rational point of the case's sphere
        allow_infinity: Return the infinity element for n instead of raising

    Raises:
        InfinityPointError: if point = n and allow_infinity is False
    """
    spec = SpaceSpec.for_case(point.case)
    if point.p == spec.base_point and point.q == 1:
        if allow_infinity:
            return InfinityElement(spec.boundary_field)
        raise InfinityPointError
    x = reflect_in_sphere(point.coordinates(), spec)
    if not spec.on_plane(x):
        raise InvariantViolationError("reflected point is not on the plane", {"point": str(point)})
    return element_from_components(spec.boundary_field, spec.unphi(x))


def inverse_height(point: SpherePoint) -> int:
    """
    Boundary height H_K(Phi^-1(P)) read off the integer data of P.

    Vanishes exactly at the base point n.
    """
    p, q = point.p, point.q
    match point.case:
        case SpaceCase.S1_I:
            return q - p[1]
        case SpaceCase.S1_II:
            # p1 and p2 have equal parity on p1^2 + p2^2 = 2q^2
            return q - (p[0] + p[1]) // 2
        case SpaceCase.S1_III:
            return p[0] + p[1]
        case SpaceCase.S2_I:
            return q - p[2]
        case SpaceCase.S2_II:
            return 2 * q - p[1] - p[2]
        case SpaceCase.S2_III:
            return p[0] + p[1] + p[2]
    raise AssertionError(point.case)  # pragma: no cover


def chordal_distance_sq(x: Sequence[Any], y: Sequence[Any], spec: SpaceSpec) -> Any:
    """
    |Psi(x) - Psi(y)|^2 via (2RD)^2 |x - y|^2 / (|x - n|^2 |y - n|^2).

    Raises:
        BaseReflectionError: if x or y equals n
    """
    dx = _norm_sq(_minus(x, spec.base_point))
    dy = _norm_sq(_minus(y, spec.base_point))
    if dx == 0 or dy == 0:
        raise BaseReflectionError
    return (2 * spec.rd) ** 2 * _norm_sq(_minus(x, y)) / (dx * dy)


# ----------------------------------------------------------------------
# Stretching conditions
# ----------------------------------------------------------------------


def verify_phi_conditions(case: SpaceCase, z1: KElement, z2: KElement) -> PhiReport:
    """
    Check both stretching conditions exactly for a pair.

    (i) |phi(z1) - phi(z2)|^2 = C^2 |z1 - z2|^2
    (ii) H_S(Phi(z)) / H_K(z) = |phi(z) - n|^2 / (2RD) for z = z1, z2

    Raises:
        SamePointError: if z1 = z2
    """
    spec = _spec_for(z1, case)
    _spec_for(z2, case)
    if z1 == z2:
        raise SamePointError
    return _phi_report(case, spec, (z1, *_mapped(z1, case, spec)), (z2, *_mapped(z2, case, spec)))


Mapped = tuple[KElement, Vector, SpherePoint]


def _phi_report(case: SpaceCase, spec: SpaceSpec, first: Mapped, second: Mapped) -> PhiReport:
    (z1, x1, _), (z2, x2, _) = first, second
    plane_sq = _norm_sq(_minus(x1, x2))
    scaled_sq = spec.dilation_sq * distance_sq(z1, z2)
    witnesses = {"plane_distance_sq": str(plane_sq), "scaled_boundary_distance_sq": str(scaled_sq)}
    phi_ii = True
    for label, (z, x, point) in (("z1", first), ("z2", second)):
        ratio = Fraction(point.q, z.height())
        expected = _norm_sq(_minus(x, spec.base_point)) / (2 * spec.rd)
        witnesses[f"{label}_height_ratio"] = str(ratio)
        witnesses[f"{label}_expected_ratio"] = str(expected)
        phi_ii = phi_ii and ratio == expected
    return PhiReport(str(case), str(z1), str(z2), plane_sq == scaled_sq, phi_ii, witnesses)


def case_rng(seed: int, case: SpaceCase, purpose: str) -> random.Random:
    return random.Random(f"{seed}:{case.value}:{purpose}")  # noqa: S311


def verify_phi_sampled(case: SpaceCase, samples: int, seed: int, max_height: int = 1000) -> SampleSummary:
    """
    Run the stretching checks, the round trip and the inverse height on seeded random pairs.

    Args:
        case: Space case
        samples: Number of pairs
        seed: Base seed; each case derives its own stream
        max_height: Height bound of the sampled boundary points

    Returns:
        Summary listing every failing pair
    """
    spec = SpaceSpec.for_case(case)
    rng = case_rng(seed, case, "phi")
    summary = SampleSummary(str(case), "phi", samples, seed)
    done = 0
    while done < samples:
        z1 = random_element(spec.boundary_field, rng, max_height)
        z2 = random_element(spec.boundary_field, rng, max_height)
        if z1 == z2:
            continue
        done += 1
        first = (z1, *_mapped(z1, case, spec))
        report = _phi_report(case, spec, first, (z2, *_mapped(z2, case, spec)))
        if not report.holds:
            summary.failures.append(report.to_dict())
        point = first[2]
        if unmap(point) != z1 or inverse_height(point) != z1.height():
            summary.failures.append({"z": str(z1), "point": str(point), "inverse_height": inverse_height(point)})
    if summary.failures:
        logger.warning("%s: %d stretching-condition failures", case, len(summary.failures))
    else:
        logger.info("%s: %d pairs verified", case, samples)
    return summary


def field_of_case(case: SpaceCase) -> BoundaryField:
    return SpaceSpec.for_case(case).boundary_field
