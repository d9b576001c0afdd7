"""
Ford horoballs on the boundary fields and their images inside the spheres.

A horoball at a sphere point of height h has radius R/(1 + (2R/C)h). Two of them are
compared exactly in Q(sqrt2)(sqrt3): the gap |center - center'|^2 - (rho + rho')^2 equals
a positive factor times the rational bracket R^2 - C^2/(2hh') - (z - c).(z' - c), and the
bracket times hh' is, up to sign, the distance of the case's integer form from its
extremal constant.
"""

from collections.abc import Iterator
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from functools import cache
from math import floor, lcm, sqrt
from typing import Any

from sphere_lagrange.controllers.geometry import map_to_sphere, phi_plane
from sphere_lagrange.models.boundary_field import BoundaryField
from sphere_lagrange.models.exceptions import InfiniteElementError, InvariantViolationError, OverlapDetectedError
from sphere_lagrange.models.horoball import (
    BoundaryHoroball,
    Horoball,
    TangencyForm,
    TangencyGraph,
    TangencyVerdict,
    Verdict,
    check_pair,
)
from sphere_lagrange.models.k_element import KElement, distance_sq, elements_near
from sphere_lagrange.models.quad_ext import Scalar, sign, sqrt_rational
from sphere_lagrange.models.space_spec import SpaceCase, SpaceSpec, SpherePoint
from sphere_lagrange.utils.logger import get_logger

logger = get_logger(__name__)


# ----------------------------------------------------------------------
# Boundary Ford balls
# ----------------------------------------------------------------------


def ford_radius_boundary(z: KElement) -> Fraction:
    """
    Radius 1/(2 H_K(z)) of the Ford ball at a boundary point.

    Raises:
        InfiniteElementError: for the infinity element
    """
    return Fraction(1, 2 * z.height())


def ford_gap(z: KElement, w: KElement) -> Fraction:
    """(distance of centers)^2 - (sum of radii)^2 = |z - w|^2 - 1/(H H') for two boundary Ford balls."""
    return distance_sq(z, w) - Fraction(1, z.height() * w.height())


def cross_norm(z: KElement, w: KElement) -> Fraction:
    """|z - w|^2 H H', the integer |alpha beta' - alpha' beta|^2 of the pair."""
    return distance_sq(z, w) * z.height() * w.height()


def boundary_horoball(z: KElement) -> BoundaryHoroball:
    """
    Ford ball at a finite boundary point: radius 1/(2 H_K(z)), center above z.

    Raises:
        InfiniteElementError: for the infinity element
    """
    if z.is_infinite:
        raise InfiniteElementError
    radius = ford_radius_boundary(z)
    if not z.field.is_imaginary:
        return BoundaryHoroball(str(z), radius, (z.value(), radius))
    u, v = z.components()
    omega = z.field.omega
    real = u + v * omega.a
    imag = v * omega.b * sqrt_rational(-z.field.d)
    return BoundaryHoroball(str(z), radius, (real, imag, radius))


# ----------------------------------------------------------------------
# Horoballs in the spheres
# ----------------------------------------------------------------------


def lemma_horo_radius(r: Scalar | int, p: tuple[Fraction, ...], spec: SpaceSpec) -> Scalar:
    """
    Radius of the image in S of a ball of radius r tangent to P at p: 2rRD/(|p - n|^2 + 2rD).

    Args:
        r: Positive radius of the ball on the plane side
        p: Point of P
        spec: Case data
    """
    dist_sq = sum(((a - n) ** 2 for a, n in zip(p, spec.base_point, strict=True)), Fraction(0))
    return 2 * r * spec.rd / (dist_sq + 2 * r * spec.plane_distance)


def radius_ratio(spec: SpaceSpec, height: int) -> Scalar:
    """u = rho/R = 1/(1 + (2R/C) h)."""
    return 1 / (1 + 2 * spec.radius / spec.dilation * height)


def horoball_at(point: SpherePoint) -> Horoball:
    """Horoball based at a sphere point, including the base point n (height 1)."""
    spec = SpaceSpec.for_case(point.case)
    u = radius_ratio(spec, point.q)
    center = tuple(c + (1 - u) * (z - c) for c, z in zip(spec.center, point.coordinates(), strict=True))
    return Horoball(point, spec.radius * u, center)


def horoball_on_sphere(z: KElement, case: SpaceCase) -> Horoball:
    """
    Image horoball of the Ford ball at z.

    The radius is cross-checked against the composition of Phi with the plane radius C/(2H_K(z)).

    Raises:
        InvariantViolationError: if the two radius computations differ
    """
    ball = horoball_at(map_to_sphere(z, case))
    if not z.is_infinite:
        spec = SpaceSpec.for_case(case)
        composed = lemma_horo_radius(spec.dilation / (2 * z.height()), phi_plane(z, case), spec)
        if composed != ball.radius:
            raise InvariantViolationError(
                "horoball radius disagrees with composed radius",
                {"z": str(z), "case": str(case), "radius": str(ball.radius), "composed": str(composed)},
            )
    return ball


# ----------------------------------------------------------------------
# Tangency
# ----------------------------------------------------------------------


def tangency_form(first: SpherePoint, second: SpherePoint) -> int:
    """
    Value of the case's integer tangency form.

    Raises:
        CaseMismatchError: if the points belong to different cases
        SamePointError: if the points coincide
    """
    check_pair(first, second)
    return TangencyForm.for_case(first.case).value(first.p, first.q, second.p, second.q)


def tangency_bracket(first: SpherePoint, second: SpherePoint) -> Fraction:
    """Rational bracket R^2 - C^2/(2hh') - (z - c).(z' - c), with the sign of the gap."""
    spec = SpaceSpec.for_case(first.case)
    offsets = zip(first.coordinates(), second.coordinates(), spec.center, strict=True)
    dot = sum(((a - c) * (b - c) for a, b, c in offsets), Fraction(0))
    return spec.radius_sq - spec.dilation_sq / (2 * first.q * second.q) - dot


def exact_gap(first: Horoball, second: Horoball) -> Scalar:
    """|center - center'|^2 - (rho + rho')^2 in Q(sqrt2)(sqrt3)."""
    center_sq = sum(((a - b) ** 2 for a, b in zip(first.center, second.center, strict=True)), Fraction(0))
    return center_sq - (first.radius + second.radius) ** 2


def gap_factor(spec: SpaceSpec, height: int, other_height: int) -> Scalar:
    """Positive factor 8R^2hh'/C^2 uu' with exact gap = factor * bracket for heights h, h'."""
    scale = 8 * spec.radius_sq * height * other_height / spec.dilation_sq
    return scale * radius_ratio(spec, height) * radius_ratio(spec, other_height)


def verify_tangent_or_disjoint(first: SpherePoint, second: SpherePoint, exact: bool = True) -> TangencyVerdict:
    """
    Certify that two horoballs are tangent or disjoint.

    The integer form, the rational bracket and (with ``exact``) the squared distance gap
    in Q(sqrt2)(sqrt3) must give the same verdict.

    Args:
        first: Base of the first horoball
        second: Base of the second horoball
        exact: Also evaluate the gap of the actual balls

    Raises:
        OverlapDetectedError: if the balls overlap
        InvariantViolationError: if the methods disagree
    """
    value = tangency_form(first, second)
    form = TangencyForm.for_case(first.case)
    margin = form.margin(value)
    bracket = tangency_bracket(first, second)
    certificate = {
        "case": str(first.case),
        "first": str(first),
        "second": str(second),
        "form": form.text,
        "form_value": str(value),
        "bracket": str(bracket),
    }
    signs = {sign(margin), sign(bracket)}
    factored = True
    if exact:
        gap = exact_gap(horoball_at(first), horoball_at(second))
        certificate["gap"] = str(gap)
        signs.add(sign(gap))
        factored = gap == gap_factor(SpaceSpec.for_case(first.case), first.q, second.q) * bracket
    if -1 in signs:
        raise OverlapDetectedError(certificate)
    if len(signs) != 1 or bracket * first.q * second.q != margin or not factored:
        raise InvariantViolationError("tangency methods disagree", certificate)
    verdict = Verdict.TANGENT if margin == 0 else Verdict.DISJOINT
    return TangencyVerdict(first, second, verdict, value, certificate)


# ----------------------------------------------------------------------
# Enumeration and graphs
# ----------------------------------------------------------------------


def enumerate_sphere_points(case: SpaceCase, bound: int) -> list[SpherePoint]:
    """
    All rational points of the case's sphere with height <= bound, sorted by (q, p).

    Boundary points are swept by height: H_S(Phi(z)) = H_K(z)(D^2 + C^2|z - z0|^2)/(2RD)
    bounds both H_K(z) and the distance of z from the foot z0; n is added as the image of infinity.
    """
    spec = SpaceSpec.for_case(case)
    field = spec.boundary_field
    budget = 2 * spec.rd * bound
    max_height = floor(budget / spec.plane_distance_sq)
    foot = spec.unphi(spec.plane_foot)
    if field.is_imaginary:
        center = field.to_complex(float(foot[0]), float(foot[1]))
    elif field is BoundaryField.SQRT2_RATIONAL:
        center = complex(float(foot[0]) * sqrt(2), 0.0)
    else:
        center = complex(float(foot[0]), 0.0)

    def window(height: int) -> float | None:
        slack = (budget / height - spec.plane_distance_sq) / spec.dilation_sq
        return None if slack < 0 else sqrt(slack) + 1e-9

    points = {SpherePoint(case, spec.base_point, 1)}
    for z in elements_near(field, max_height, center, window):
        point = map_to_sphere(z, case)
        if point.q <= bound:
            points.add(point)
    result = sorted(points, key=SpherePoint.sort_key)
    logger.debug("%s: %d sphere points of height <= %d", case, len(result), bound)
    return result


POOL_MIN_NODES = 200


@dataclass(frozen=True)
class PairKernel:
    """
    Integer data of a case's bracket.

    With M the common denominator of the center c and A = Mp - (Mc)q for a point p/q,
    scale * bracket * qq' = radius_term * qq' - dilation_term - offset_scale * A.A'.
    """

    form: TangencyForm
    scale: int
    radius_term: int
    dilation_term: int
    offset_scale: int
    center_num: tuple[int, ...]
    center_den: int

    @classmethod
    @cache
    def for_case(cls, case: SpaceCase) -> "PairKernel":
        spec = SpaceSpec.for_case(case)
        half_dilation = spec.dilation_sq / 2
        center_den = lcm(*(c.denominator for c in spec.center))
        scale = lcm(center_den * center_den, spec.radius_sq.denominator, half_dilation.denominator)
        return cls(
            form=TangencyForm.for_case(case),
            scale=scale,
            radius_term=int(spec.radius_sq * scale),
            dilation_term=int(half_dilation * scale),
            offset_scale=scale // (center_den * center_den),
            center_num=tuple(int(c * center_den) for c in spec.center),
            center_den=center_den,
        )

    def offsets(self, p: tuple[int, ...], q: int) -> tuple[int, ...]:
        return tuple(self.center_den * a - c * q for a, c in zip(p, self.center_num, strict=True))


def _point_text(p: tuple[int, ...], q: int) -> str:
    return f"({','.join(str(x) for x in p)})/{q}"


def _tangent_rows(
    case: SpaceCase, data: list[tuple[tuple[int, ...], int, tuple[int, ...]]], rows: range
) -> list[tuple[int, int]]:
    kernel = PairKernel.for_case(case)
    form = kernel.form
    edges = []
    for i in rows:
        p, q, a = data[i]
        for j in range(i + 1, len(data)):
            p2, q2, a2 = data[j]
            value = form.value(p, q, p2, q2)
            margin = form.margin(value)
            scaled = (
                kernel.radius_term * q * q2
                - kernel.dilation_term
                - kernel.offset_scale * sum(x * y for x, y in zip(a, a2, strict=True))
            )
            if margin < 0 or scaled != kernel.scale * margin:
                certificate = {
                    "case": str(case),
                    "first": _point_text(p, q),
                    "second": _point_text(p2, q2),
                    "form": form.text,
                    "form_value": str(value),
                    "bracket": str(Fraction(scaled, kernel.scale * q * q2)),
                }
                if margin < 0:
                    raise OverlapDetectedError(certificate)
                raise InvariantViolationError("tangency methods disagree", certificate)
            if margin == 0:
                edges.append((i, j))
    return edges


def _row_chunks(size: int, workers: int) -> Iterator[range]:
    step = max(1, size // (4 * workers) if workers > 1 else size)
    for start in range(0, size, step):
        yield range(start, min(size, start + step))


def _sweep(case: SpaceCase, nodes: list[SpherePoint], workers: int) -> list[tuple[int, int]]:
    kernel = PairKernel.for_case(case)
    data = [(node.p, node.q, kernel.offsets(node.p, node.q)) for node in nodes]
    if len(data) < POOL_MIN_NODES:
        workers = 1
    chunks = list(_row_chunks(len(data), workers))
    if workers > 1 and len(chunks) > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            parts = list(pool.map(_tangent_rows, [case] * len(chunks), [data] * len(chunks), chunks))
    else:
        parts = [_tangent_rows(case, data, chunk) for chunk in chunks]
    return sorted(edge for part in parts for edge in part)


def tangency_graph(case: SpaceCase, height_bound: int, workers: int = 1) -> TangencyGraph:
    """
    Tangency graph of the horoballs at all sphere points of height <= height_bound.

    Every pair is swept; the integer form and the scaled bracket must agree on each.

    Args:
        case: Space case
        height_bound: Height bound (at least 1)
        workers: Number of worker processes for the pair sweep

    Returns:
        Graph with nodes sorted by (q, p) and edges sorted lexicographically

    Raises:
        OverlapDetectedError: on any overlapping pair
        InvariantViolationError: if the form and the bracket disagree
    """
    nodes = enumerate_sphere_points(case, height_bound)
    edges = _sweep(case, nodes, workers)
    logger.info("%s bound %d: %d nodes, %d edges", case, height_bound, len(nodes), len(edges))
    return TangencyGraph(case, height_bound, nodes, edges)


def certify_height_classes(case: SpaceCase, nodes: list[SpherePoint]) -> int:
    """
    Tie the bracket to the exact gap for every pair of heights present among nodes.

    For each height pair the factor 8R^2hh'/C^2 uu' is shown positive in Q(sqrt2)(sqrt3) and,
    on one representative pair, the gap of the actual balls equals factor * bracket.

    Returns:
        Number of height classes checked

    Raises:
        InvariantViolationError: if a factor is not positive or a gap differs
    """
    spec = SpaceSpec.for_case(case)
    by_height: dict[int, list[SpherePoint]] = {}
    for node in nodes:
        by_height.setdefault(node.q, []).append(node)
    heights = sorted(by_height)
    checked = 0
    for index, h in enumerate(heights):
        for h2 in heights[index:]:
            if h == h2 and len(by_height[h]) < 2:
                continue
            first = by_height[h][0]
            second = by_height[h2][1] if h == h2 else by_height[h2][0]
            factor = gap_factor(spec, h, h2)
            bracket = tangency_bracket(first, second)
            direct = exact_gap(horoball_at(first), horoball_at(second))
            if sign(factor) != 1 or direct != factor * bracket:
                raise InvariantViolationError(
                    "exact gap disagrees with the bracket",
                    {
                        "case": str(case),
                        "first": str(first),
                        "second": str(second),
                        "bracket": str(bracket),
                        "factor": str(factor),
                        "gap": str(direct),
                    },
                )
            checked += 1
    return checked


def certify_pairs(case: SpaceCase, bound: int, workers: int = 1, exact: bool = False) -> dict[str, Any]:
    """
    Certify every pair of horoballs with base height <= bound.

    Each pair is classified by the integer form, which must match the rational bracket.
    With ``exact`` every height class is also tied to the gap of the balls in
    Q(sqrt2)(sqrt3), so the sign of each pair's gap is the sign of its bracket.

    Raises:
        OverlapDetectedError: on any overlapping pair
        InvariantViolationError: if the methods disagree on any pair
    """
    nodes = enumerate_sphere_points(case, bound)
    classes = certify_height_classes(case, nodes) if exact else 0
    tangent = len(_sweep(case, nodes, workers))
    pairs = len(nodes) * (len(nodes) - 1) // 2
    logger.info("%s bound %d: %d tangent, %d disjoint pairs", case, bound, tangent, pairs - tangent)
    return {
        "case": case.value,
        "bound": bound,
        "nodes": len(nodes),
        "pairs": pairs,
        "tangent": tangent,
        "disjoint": pairs - tangent,
        "overlapping": 0,
        "exact": exact,
        "height_classes": classes,
    }
