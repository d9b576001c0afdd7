"""
Finite-height Diophantine approximation of quadratic targets, on the boundary fields and
on the spheres, plus the exact transfer identity linking the two.

Only the target is inexact: candidate points, heights and plane coordinates stay
rational, and every distance is an mpmath interval enclosure.
"""

from collections.abc import Sequence
from concurrent.futures import ProcessPoolExecutor
from fractions import Fraction
from math import floor, sqrt
from typing import Any

from mpmath import iv

from sphere_lagrange.controllers.geometry import case_rng, map_to_sphere, phi_plane
from sphere_lagrange.models.approximation import ApproximationRecord, LagrangeEstimate
from sphere_lagrange.models.boundary_field import BoundaryField
from sphere_lagrange.models.exceptions import (
    ComplexTargetError,
    EmptyTailError,
    FieldCaseMismatchError,
    InvariantViolationError,
    SamePointError,
    TargetInFieldError,
)
from sphere_lagrange.models.k_element import KElement, distance_sq, elements_near, random_element
from sphere_lagrange.models.reports import SampleSummary, TransferCheck
from sphere_lagrange.models.space_spec import SpaceCase, SpaceSpec
from sphere_lagrange.models.target import TargetNumber
from sphere_lagrange.utils import interval
from sphere_lagrange.utils.interval import Interval
from sphere_lagrange.utils.logger import get_logger

logger = get_logger(__name__)

Space = BoundaryField | SpaceCase

DEFAULT_PRECISION = 128
DEFAULT_MAX_PRECISION = 4096

# (element, label, sphere point text) of one candidate
Candidate = tuple[KElement, str, str]


def field_of_space(space: Space) -> BoundaryField:
    if isinstance(space, SpaceCase):
        return SpaceSpec.for_case(space).boundary_field
    return space


def _check_target(target: TargetNumber, space: Space) -> BoundaryField:
    field = field_of_space(space)
    if not field.is_imaginary and not target.is_real:
        raise ComplexTargetError(str(target), str(field))
    if target.in_field(field):
        raise TargetInFieldError(str(target), str(field))
    return field


# ----------------------------------------------------------------------
# Interval distances
# ----------------------------------------------------------------------


def _as_interval(x: Any) -> Interval:
    if isinstance(x, int | Fraction):
        return interval.rational(x)
    return x


def _norm_sq(values: Sequence[Any]) -> Interval:
    total = iv.mpf(0)
    for value in values:
        total += value * value
    return total


def _boundary_distance(target: TargetNumber, z: KElement) -> Interval:
    """|xi - z| in the boundary field's embedding."""
    real, imag = target.enclosure()
    if not z.field.is_imaginary:
        return abs(real - interval.enclose(z.value()))
    u, v = z.components()
    omega = z.field.omega
    z_real = interval.rational(u + v * Fraction(omega.a))
    z_imag = interval.rational(v * Fraction(omega.b)) * iv.sqrt(-z.field.d)
    return iv.sqrt(_norm_sq((real - z_real, imag - z_imag)))


def target_on_plane(target: TargetNumber, spec: SpaceSpec) -> tuple[Interval, ...]:
    """Interval enclosure of phi(xi) in the plane P."""
    return tuple(_as_interval(x) for x in spec.phi(target.components(spec.boundary_field)))


def _sphere_distance(target: TargetNumber, z: KElement, spec: SpaceSpec) -> Interval:
    """|Phi(xi) - Phi(z)| through the chordal distance identity of the reflection."""
    x = target_on_plane(target, spec)
    y = tuple(interval.rational(c) for c in phi_plane(z, spec.case))
    n = tuple(interval.rational(c) for c in spec.base_point)
    numerator = interval.rational(2 * spec.rd) ** 2 * _norm_sq([a - b for a, b in zip(x, y, strict=True)])
    denominator = _norm_sq([a - b for a, b in zip(x, n, strict=True)]) * _norm_sq(
        [a - b for a, b in zip(y, n, strict=True)]
    )
    return iv.sqrt(numerator / denominator)


def approximation_distance(target: TargetNumber, space: Space, z: KElement) -> Interval:
    """Enclosure of the distance from the target to z (or to Phi(z) for sphere spaces) at the current precision."""
    if isinstance(space, SpaceCase):
        return _sphere_distance(target, z, SpaceSpec.for_case(space))
    return _boundary_distance(target, z)


# ----------------------------------------------------------------------
# Candidates
# ----------------------------------------------------------------------


def boundary_height_bound(space: Space, height_bound: int) -> int:
    """
    K-height bound covering every point of the given space height.

    For a sphere H_S(Phi(z)) = H_K(z) |phi(z) - n|^2 / (2RD) >= H_K(z) D^2 / (2RD).
    """
    if isinstance(space, SpaceCase):
        spec = SpaceSpec.for_case(space)
        return floor(2 * spec.rd * height_bound / spec.plane_distance_sq)
    return height_bound


def candidate_classes(target: TargetNumber, space: Space, height_bound: int) -> dict[int, list[Candidate]]:
    """
    Candidates near the target grouped by height class.

    For each boundary height only the points within 1/sqrt(H) of the target are kept,
    which contains the nearest points of that height on either side. Sphere spaces regroup
    those candidates by the height of their image.
    """
    field = _check_target(target, space)
    k_bound = boundary_height_bound(space, height_bound)
    classes: dict[int, dict[str, Candidate]] = {}
    for z in elements_near(field, k_bound, target.approx(), lambda h: 1 / sqrt(h)):
        if z.height() > k_bound:
            continue
        label = str(z)
        if isinstance(space, SpaceCase):
            point = map_to_sphere(z, space)
            if point.q > height_bound:
                continue
            classes.setdefault(point.q, {})[label] = (z, label, str(point))
        else:
            classes.setdefault(z.height(), {})[label] = (z, label, "")
    logger.debug(
        "%s: %d candidates in %d height classes (K-height <= %d)",
        space,
        sum(len(c) for c in classes.values()),
        len(classes),
        k_bound,
    )
    return {height: sorted(members.values(), key=lambda c: c[1]) for height, members in sorted(classes.items())}


# ----------------------------------------------------------------------
# Best approximations
# ----------------------------------------------------------------------


def _resolve_class(
    target: TargetNumber, space: Space, members: list[Candidate], precision: int, max_precision: int
) -> tuple[int, list[int], int]:
    """
    Index of the nearest member, the indices still tied with it, and the precision used.

    The precision doubles until the nearest member is certainly closer than all the
    others and its distance is certainly positive, or max_precision is reached.
    """
    bits = precision
    while True:
        with interval.precision(bits):
            distances = [approximation_distance(target, space, z) for z, _, _ in members]
        best = min(range(len(members)), key=lambda i: (interval.upper(distances[i]), i))
        tied = [
            i for i in range(len(members)) if i != best and not interval.certainly_less(distances[best], distances[i])
        ]
        separated = interval.lower(distances[best]) > 0
        if (separated and not tied) or bits >= max_precision:
            break
        bits = min(2 * bits, max_precision)
        logger.debug("%s: raising precision to %d bits for %s", space, bits, members[best][1])
    if not separated:
        raise InvariantViolationError(
            "distance to the target not separated from zero",
            {"space": str(space), "target": str(target), "element": members[best][1], "precision": str(bits)},
        )
    return best, tied, bits


def _resolve_chunk(
    target: TargetNumber, space: Space, chunk: list[tuple[int, list[Candidate]]], precision: int, max_precision: int
) -> list[tuple[int, int, list[int], int]]:
    results = []
    for height, members in chunk:
        best, tied, bits = _resolve_class(target, space, members, precision, max_precision)
        results.append((height, best, tied, bits))
    return results


def _chunks(items: list[Any], workers: int) -> list[list[Any]]:
    step = max(1, len(items) // (4 * workers) if workers > 1 else len(items))
    return [items[start : start + step] for start in range(0, len(items), step)]


def best_approximations(
    target: TargetNumber,
    space: Space,
    height_bound: int,
    precision: int = DEFAULT_PRECISION,
    max_precision: int = DEFAULT_MAX_PRECISION,
    workers: int = 1,
) -> list[ApproximationRecord]:
    """
    The nearest candidate of every height class up to the bound.

    Args:
        target: Number to approximate, not in the space's boundary field
        space: Boundary field, or a space case for approximation on its sphere
        height_bound: Largest height (K-height for fields, sphere height for cases)
        precision: Initial interval precision in bits
        max_precision: Precision cap; classes still unresolved there are reported as ties
        workers: Number of worker processes over height classes

    Returns:
        Records in ascending height order

    Raises:
        TargetInFieldError: if the target lies in the boundary field
        ComplexTargetError: if a non-real target meets a real field
    """
    classes = candidate_classes(target, space, height_bound)
    items = list(classes.items())
    chunks = _chunks(items, workers)
    if workers > 1 and len(chunks) > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            count = len(chunks)
            parts = list(
                pool.map(
                    _resolve_chunk,
                    [target] * count,
                    [space] * count,
                    chunks,
                    [precision] * count,
                    [max_precision] * count,
                )
            )
    else:
        parts = [_resolve_chunk(target, space, chunk, precision, max_precision) for chunk in chunks]

    records = []
    for height, best, tied, bits in sorted(result for part in parts for result in part):
        members = classes[height]
        z, label, sphere_point = members[best]
        with interval.precision(bits):
            distance = approximation_distance(target, space, z)
            quality = 1 / (interval.rational(height) * distance)
        tied_labels = [members[i][1] for i in tied]
        records.append(ApproximationRecord(label, height, distance, quality, bits, sphere_point, tied_labels))
    ties = sum(1 for record in records if record.tie)
    if ties:
        logger.warning("%s: %d height classes left tied at %d bits", space, ties, max_precision)
    return records


def improving_records(records: list[ApproximationRecord]) -> list[ApproximationRecord]:
    """Records certainly closer to the target than every record of smaller height."""
    improving: list[ApproximationRecord] = []
    for record in records:
        if not improving or interval.certainly_less(record.distance, improving[-1].distance):
            improving.append(record)
    return improving


# ----------------------------------------------------------------------
# Lagrange estimates
# ----------------------------------------------------------------------


def estimate_lagrange(
    target: TargetNumber,
    space: Space,
    height_bound: int,
    precision: int = DEFAULT_PRECISION,
    max_precision: int = DEFAULT_MAX_PRECISION,
    workers: int = 1,
) -> LagrangeEstimate:
    """
    Enclose the largest quality 1/(H d) over the records with height in (bound/2, bound].

    This is a finite-height proxy for the limsup defining the Lagrange number.

    Raises:
        EmptyTailError: if no record falls in the tail
    """
    records = best_approximations(target, space, height_bound, precision, max_precision, workers)
    tail = [record for record in records if 2 * record.height > height_bound]
    if not tail:
        raise EmptyTailError(height_bound)
    bits = max(record.precision for record in tail)
    with interval.precision(bits):
        enclosure = interval.hull_of_max(record.quality for record in tail)
    best = max(tail, key=lambda record: (interval.lower(record.quality), -record.height))
    logger.info("%s %s bound %d: estimate %s", target, space, height_bound, interval.interval_str(enclosure, 15))
    return LagrangeEstimate(str(target), str(space), height_bound, enclosure, len(tail), best)


def sphere_lagrange_from_boundary(boundary: Interval, case: SpaceCase) -> Interval:
    """Scale a boundary Lagrange value to the sphere: L_sphere = L_boundary / C."""
    return boundary / interval.enclose(SpaceSpec.for_case(case).dilation)


# ----------------------------------------------------------------------
# Transfer identity
# ----------------------------------------------------------------------


def _squared_gap(x: Sequence[Fraction], y: Sequence[Any]) -> Fraction:
    return sum(((a - b) ** 2 for a, b in zip(x, y, strict=True)), Fraction(0))


def transfer_identity_check(case: SpaceCase, z: KElement, w: KElement) -> TransferCheck:
    """
    Verify [H(Phi(z)) |Phi(w) - Phi(z)|]^2 / [H_K(z) |w - z|]^2 = C^2 |phi(z) - n|^2 / |phi(w) - n|^2.

    Both sides are rational and compared exactly.

    Raises:
        SamePointError: if z = w
        FieldCaseMismatchError: if z or w is not in the case's field
        InvariantViolationError: if the two sides differ
    """
    spec = SpaceSpec.for_case(case)
    for element in (z, w):
        if element.field is not spec.boundary_field:
            raise FieldCaseMismatchError(str(element.field), str(case))
    if z == w:
        raise SamePointError
    image_z, image_w = map_to_sphere(z, case), map_to_sphere(w, case)
    chord_sq = _squared_gap(image_z.coordinates(), image_w.coordinates())
    lhs = image_z.q**2 * chord_sq / (z.height() ** 2 * distance_sq(z, w))
    rhs = (
        spec.dilation_sq
        * _squared_gap(phi_plane(z, case), spec.base_point)
        / _squared_gap(phi_plane(w, case), spec.base_point)
    )
    check = TransferCheck(str(case), str(z), str(w), str(lhs), str(rhs))
    if not check.holds:
        certificate = {key: str(value) for key, value in check.to_dict().items()}
        raise InvariantViolationError("transfer identity fails", certificate)
    return check


def transfer_identity_sampled(case: SpaceCase, samples: int, seed: int, max_height: int = 1000) -> SampleSummary:
    """Run the transfer identity on seeded random pairs, collecting failures instead of raising."""
    field = SpaceSpec.for_case(case).boundary_field
    rng = case_rng(seed, case, "transfer")
    summary = SampleSummary(str(case), "transfer", samples, seed)
    done = 0
    while done < samples:
        z, w = random_element(field, rng, max_height), random_element(field, rng, max_height)
        if z == w:
            continue
        done += 1
        try:
            transfer_identity_check(case, z, w)
        except InvariantViolationError as e:
            summary.failures.append(e.certificate)
    if summary.failures:
        logger.warning("%s: %d transfer identity failures", case, len(summary.failures))
    return summary
