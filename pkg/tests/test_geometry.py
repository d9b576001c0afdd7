"""
Tests for the stereographic correspondences Phi of the six cases.
"""

import random
from fractions import Fraction
from itertools import combinations
from math import gcd

import pytest

from sphere_lagrange.controllers import geometry
from sphere_lagrange.controllers.geometry import (
    base_foot,
    chordal_distance_sq,
    closed_form,
    field_of_case,
    inverse_height,
    map_to_sphere,
    phi_plane,
    reflect_in_sphere,
    unmap,
    verify_phi_conditions,
    verify_phi_sampled,
)
from sphere_lagrange.models.boundary_field import BoundaryField
from sphere_lagrange.models.exceptions import (
    BaseReflectionError,
    FieldCaseMismatchError,
    InfinityPointError,
    InvalidSpherePointError,
    SamePointError,
    UnknownCaseError,
)
from sphere_lagrange.models.figure_data import FigurePoint, all_figure_points, figure_points
from sphere_lagrange.models.k_element import (
    ImagQuadElement,
    InfinityElement,
    KElement,
    RationalElement,
    parse_element,
    random_element,
)
from sphere_lagrange.models.space_spec import SpaceCase, SpaceSpec, SpherePoint

ALL_CASES = list(SpaceCase)


def test_case_tags() -> None:
    assert SpaceCase.from_tag("s1-iii") is SpaceCase.S1_III
    assert SpaceCase.from_tag("S2_I") is SpaceCase.S2_I
    assert SpaceCase.S1_III.tag == "s1-iii"
    with pytest.raises(UnknownCaseError):
        SpaceCase.from_tag("s3-i")


@pytest.mark.parametrize("case", ALL_CASES)
def test_case_data_is_consistent(case: SpaceCase) -> None:
    """n lies on S and the plane data agree with R, D and C."""
    spec = SpaceSpec.for_case(case)
    assert spec.validate() == []
    assert spec.on_sphere(tuple(Fraction(x) for x in spec.base_point))


def test_half_maps_to_the_listed_point() -> None:
    """Phi(1/2) = (2/3, 2/3, -1/3) on the circle of S1_III."""
    point = map_to_sphere(RationalElement(1, 2), SpaceCase.S1_III)
    assert point == SpherePoint(SpaceCase.S1_III, (2, 2, -1), 3)
    assert str(point) == "(2,2,-1)/3"


@pytest.mark.parametrize(
    ("case", "z", "expected"),
    [
        (SpaceCase.S1_I, "3/sqrt2", "(4,3)/5"),
        (SpaceCase.S2_I, "1+w", "(0,1,0)/1"),
        (SpaceCase.S2_III, "w", "(1,-1,1,1)/2"),
        (SpaceCase.S1_II, "sqrt2*5/3", "(41,-1)/29"),
    ],
)
def test_listed_correspondences(case: SpaceCase, z: str, expected: str) -> None:
    point = map_to_sphere(parse_element(z, field_of_case(case)), case)
    assert str(point) == expected


@pytest.mark.parametrize("entry", all_figure_points(), ids=lambda e: f"{e.case.value}:{e.element}")
def test_figure_points_map_and_unmap(entry: FigurePoint) -> None:
    """Every drawn correspondence is reproduced exactly and inverted exactly."""
    assert map_to_sphere(entry.element, entry.case) == entry.point
    assert unmap(entry.point, allow_infinity=True) == entry.element


def test_figure_point_counts() -> None:
    counts = {case: len(figure_points(case)) for case in SpaceCase}
    assert counts == {
        SpaceCase.S1_I: 12,
        SpaceCase.S1_II: 12,
        SpaceCase.S1_III: 10,
        SpaceCase.S2_I: 6,
        SpaceCase.S2_II: 12,
        SpaceCase.S2_III: 8,
    }


@pytest.mark.parametrize("case", ALL_CASES)
def test_inverse_height_reads_the_boundary_height(case: SpaceCase) -> None:
    spec = SpaceSpec.for_case(case)
    assert inverse_height(SpherePoint(case, spec.base_point, 1)) == 0
    for entry in figure_points(case):
        if not entry.element.is_infinite:
            assert inverse_height(entry.point) == entry.element.height()


@pytest.mark.parametrize("case", ALL_CASES)
def test_base_foot_maps_to_the_antipode(case: SpaceCase) -> None:
    """The foot of n on P is sent to the point of S opposite n."""
    spec = SpaceSpec.for_case(case)
    antipode = tuple(2 * c - n for c, n in zip(spec.center, spec.base_point, strict=True))
    assert map_to_sphere(base_foot(case), case).coordinates() == antipode


@pytest.mark.parametrize("case", ALL_CASES)
def test_chordal_distance_matches_sphere_points(case: SpaceCase) -> None:
    spec = SpaceSpec.for_case(case)
    finite = [entry for entry in figure_points(case) if not entry.element.is_infinite]
    for first, second in combinations(finite[:5], 2):
        x, y = phi_plane(first.element, case), phi_plane(second.element, case)
        gap = [a - b for a, b in zip(first.point.coordinates(), second.point.coordinates(), strict=True)]
        assert chordal_distance_sq(x, y, spec) == sum(g * g for g in gap)


@pytest.mark.parametrize("case", ALL_CASES)
def test_stretching_conditions_on_random_pairs(case: SpaceCase) -> None:
    summary = verify_phi_sampled(case, samples=150, seed=7, max_height=1000)
    assert summary.ok, summary.failures[:1]


def test_stretching_conditions_report_witnesses() -> None:
    case = SpaceCase.S2_II
    field = field_of_case(case)
    report = verify_phi_conditions(case, parse_element("w", field), parse_element("(1+w)/3", field))
    assert report.holds
    assert report.witnesses["plane_distance_sq"] == report.witnesses["scaled_boundary_distance_sq"]


def test_same_point_is_rejected() -> None:
    z = RationalElement(1, 3)
    with pytest.raises(SamePointError):
        verify_phi_conditions(SpaceCase.S1_III, z, z)


def test_field_must_match_case() -> None:
    with pytest.raises(FieldCaseMismatchError):
        map_to_sphere(RationalElement(1, 2), SpaceCase.S1_I)


def test_base_point_and_infinity() -> None:
    case = SpaceCase.S2_I
    n = SpherePoint(case, (0, 0, 1), 1)
    assert map_to_sphere(InfinityElement(BoundaryField.GAUSSIAN), case) == n
    assert unmap(n, allow_infinity=True) == InfinityElement(BoundaryField.GAUSSIAN)
    with pytest.raises(InfinityPointError):
        unmap(n)


def test_sphere_point_validation() -> None:
    assert SpherePoint.parse(SpaceCase.S1_III, "(2, 2, -1)/3") == SpherePoint(SpaceCase.S1_III, (2, 2, -1), 3)
    with pytest.raises(InvalidSpherePointError):
        SpherePoint(SpaceCase.S1_I, (1, 1), 1)
    with pytest.raises(InvalidSpherePointError):
        SpherePoint(SpaceCase.S1_I, (2, 0), 2)
    with pytest.raises(InvalidSpherePointError):
        SpherePoint.parse(SpaceCase.S1_I, "4/5, 3/5")


def test_reflection_fixes_the_mirror_and_is_an_involution() -> None:
    spec = SpaceSpec.for_case(SpaceCase.S1_I)
    assert reflect_in_sphere((1, 0), spec) == (1, 0)
    assert reflect_in_sphere((-1, 0), spec) == (-1, 0)
    for x in [(Fraction(1, 3), Fraction(-2, 5)), (Fraction(7), Fraction(2)), (Fraction(0), Fraction(-4, 9))]:
        assert reflect_in_sphere(reflect_in_sphere(x, spec), spec) == x
    with pytest.raises(BaseReflectionError):
        reflect_in_sphere(spec.base_point, spec)


def test_chordal_distance_of_antipodes() -> None:
    spec = SpaceSpec.for_case(SpaceCase.S1_I)
    assert chordal_distance_sq((-1, 0), (1, 0), spec) == 4
    assert chordal_distance_sq((3, 0), (3, 0), spec) == 0
    with pytest.raises(BaseReflectionError):
        chordal_distance_sq(spec.base_point, (1, 0), spec)


# ---------------------------------------------------------------------------
# Sampled properties
# ---------------------------------------------------------------------------


@pytest.mark.parametrize("case", ALL_CASES)
def test_phi_is_injective_on_samples(case: SpaceCase) -> None:
    rng = random.Random(f"injective:{case.value}")
    field = field_of_case(case)
    preimages: dict[SpherePoint, KElement] = {}
    for _ in range(2000):
        z = random_element(field, rng, 500)
        point = map_to_sphere(z, case)
        assert preimages.setdefault(point, z) == z, point


@pytest.mark.parametrize("case", ALL_CASES)
def test_closed_forms_are_primitive(case: SpaceCase) -> None:
    """The integer data of Phi(z) has no common factor, for every case and sampled z."""
    rng = random.Random(f"primitive:{case.value}")
    field = field_of_case(case)
    for _ in range(500):
        z = random_element(field, rng, 2000)
        numerator, q = closed_form(z, case)
        assert gcd(*numerator, q) == 1, z


def test_gaussian_gcd_chain() -> None:
    """gcd(a-b, a+b-|b|^2, |a|^2-a-b, |a|^2+|b|^2-a-b) = gcd(|a|^2, |b|^2, a-b, a+b) = 1."""
    rng = random.Random(4)
    for _ in range(500):
        z = random_element(BoundaryField.GAUSSIAN, rng, 2000)
        assert isinstance(z, ImagQuadElement)
        a, b, c, big_a = z.a, z.b, z.c, z.alpha_norm()
        chain = gcd(a - b, a + b - c, big_a - a - b, big_a + c - a - b)
        assert chain == gcd(big_a, c, a - b, a + b) == 1


@pytest.mark.slow
@pytest.mark.parametrize("case", ALL_CASES)
def test_stretching_conditions_on_ten_thousand_pairs(case: SpaceCase) -> None:
    summary = verify_phi_sampled(case, samples=10_000, seed=1)
    assert summary.ok, summary.failures[:1]


def test_sampler_maps_each_element_once(monkeypatch: pytest.MonkeyPatch) -> None:
    calls = []
    original = geometry.closed_form

    def counting(z: KElement, case: SpaceCase) -> tuple[tuple[int, ...], int]:
        calls.append(z)
        return original(z, case)

    monkeypatch.setattr(geometry, "closed_form", counting)
    assert verify_phi_sampled(SpaceCase.S2_II, samples=25, seed=9).ok
    assert len(calls) == 50
