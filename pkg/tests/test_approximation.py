"""
Tests for targets, best approximations, Lagrange estimates and the transfer identity.
"""

from math import sqrt

import pytest

from sphere_lagrange.controllers.approximation import (
    best_approximations,
    boundary_height_bound,
    estimate_lagrange,
    improving_records,
    sphere_lagrange_from_boundary,
    transfer_identity_check,
    transfer_identity_sampled,
)
from sphere_lagrange.models.boundary_field import BoundaryField
from sphere_lagrange.models.exceptions import (
    ComplexTargetError,
    EmptyTailError,
    TargetInFieldError,
    TargetParseError,
)
from sphere_lagrange.models.k_element import RationalElement
from sphere_lagrange.models.space_spec import SpaceCase
from sphere_lagrange.models.target import TargetNumber
from sphere_lagrange.utils import interval

ALL_CASES = list(SpaceCase)

# ---------------------------------------------------------------------------
# Targets
# ---------------------------------------------------------------------------


def test_named_and_surd_targets() -> None:
    golden = TargetNumber.parse("golden")
    assert golden.is_real
    assert abs(golden.approx().real - (1 + sqrt(5)) / 2) < 1e-12
    surd = TargetNumber.parse("(1+sqrt5)/2")
    assert abs(surd.approx().real - golden.approx().real) < 1e-12
    assert not TargetNumber.parse("1,1").is_real


def test_target_field_membership() -> None:
    assert TargetNumber.parse("1/2").in_field(BoundaryField.RATIONAL)
    assert TargetNumber.parse("sqrt2").in_field(BoundaryField.SQRT2_RATIONAL)
    assert not TargetNumber.parse("sqrt2").in_field(BoundaryField.RATIONAL)


def test_unparseable_target() -> None:
    with pytest.raises(TargetParseError):
        TargetNumber.parse("pi")


def test_targets_in_the_field_are_rejected() -> None:
    with pytest.raises(TargetInFieldError):
        best_approximations(TargetNumber.parse("1/2"), BoundaryField.RATIONAL, 10)
    with pytest.raises(ComplexTargetError):
        best_approximations(TargetNumber.parse("1,1"), BoundaryField.RATIONAL, 10)


# ---------------------------------------------------------------------------
# Best approximations
# ---------------------------------------------------------------------------


def test_golden_ratio_records_are_fibonacci_quotients(golden: TargetNumber) -> None:
    """The improving rational approximations of the golden ratio are its convergents."""
    records = best_approximations(golden, BoundaryField.RATIONAL, 100)
    assert [record.height for record in records] == [q * q for q in range(1, 11)]
    improving = improving_records(records)
    assert [record.element for record in improving] == ["2/1", "3/2", "5/3", "8/5", "13/8"]
    assert not any(record.tie for record in records)


def test_record_qualities_are_enclosures(golden: TargetNumber) -> None:
    records = best_approximations(golden, BoundaryField.RATIONAL, 25, precision=64)
    for record in records:
        assert interval.lower(record.distance) > 0
        assert interval.width(record.quality) < 1e-10
        assert record.precision >= 64


def test_sphere_height_bound() -> None:
    """Sphere height B covers K-heights up to 2RD B / D^2."""
    assert boundary_height_bound(BoundaryField.RATIONAL, 100) == 100
    assert boundary_height_bound(SpaceCase.S1_III, 300) == 400


def test_sphere_records_carry_their_points(golden: TargetNumber) -> None:
    records = best_approximations(golden, SpaceCase.S1_III, 50)
    assert records
    assert all(record.sphere_point.endswith(f"/{record.height}") for record in records)


def test_estimate_on_the_rationals(golden: TargetNumber) -> None:
    """The tail (5000, 10000] is dominated by 144/89 with quality close to sqrt5."""
    estimate = estimate_lagrange(golden, BoundaryField.RATIONAL, 10_000)
    assert estimate.best.element == "144/89"
    assert abs(float(interval.lower(estimate.enclosure)) - sqrt(5)) < 1e-3
    assert interval.width(estimate.enclosure) < 1e-20


def test_estimate_for_sqrt2() -> None:
    """239/169 lies in the tail of 30000; Pell convergents have quality p/q + sqrt2."""
    # Heights on Q are q^2. The tail of 10^4 is (5000, 10^4], which holds no Pell
    # denominator (70^2 = 4900, 169^2 = 28561), so that bound gives a worse estimate.
    estimate = estimate_lagrange(TargetNumber.parse("sqrt2"), BoundaryField.RATIONAL, 30_000)
    assert estimate.best.element == "239/169"
    assert abs(float(interval.lower(estimate.enclosure)) - 2 * sqrt(2)) < 1e-3


def test_estimate_on_the_sphere_scales_by_dilation(golden: TargetNumber) -> None:
    """Pushing the golden ratio to the circle of S1_III divides its Lagrange value by sqrt2."""
    boundary = estimate_lagrange(golden, BoundaryField.RATIONAL, 10_000)
    sphere = estimate_lagrange(golden, SpaceCase.S1_III, 10_000)
    assert abs(float(interval.lower(sphere.enclosure)) - sqrt(2.5)) < 2e-3
    scaled = sphere_lagrange_from_boundary(boundary.enclosure, SpaceCase.S1_III)
    assert abs(float(interval.lower(scaled)) - float(interval.lower(sphere.enclosure))) < 3e-3
    ratio = float(interval.lower(boundary.enclosure)) / float(interval.lower(sphere.enclosure))
    assert abs(ratio - sqrt(2)) < 3e-3


def test_empty_tail(golden: TargetNumber) -> None:
    """No square lies in (1, 3]."""
    with pytest.raises(EmptyTailError):
        estimate_lagrange(golden, BoundaryField.RATIONAL, 3)


def test_estimate_is_independent_of_workers(golden: TargetNumber) -> None:
    single = estimate_lagrange(golden, BoundaryField.RATIONAL, 400, workers=1)
    pooled = estimate_lagrange(golden, BoundaryField.RATIONAL, 400, workers=2)
    assert single.to_dict() == pooled.to_dict()


# ---------------------------------------------------------------------------
# Transfer identity
# ---------------------------------------------------------------------------


def test_transfer_identity_for_a_pair() -> None:
    check = transfer_identity_check(SpaceCase.S1_III, RationalElement(1, 2), RationalElement(2, 3))
    assert check.holds


@pytest.mark.parametrize("case", ALL_CASES)
def test_transfer_identity_on_random_pairs(case: SpaceCase) -> None:
    summary = transfer_identity_sampled(case, samples=100, seed=7)
    assert summary.ok, summary.failures[:1]
