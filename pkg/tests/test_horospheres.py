"""
Tests for horoballs on the spheres, their tangency certification and tangency graphs.
"""

import os
from collections.abc import Callable
from fractions import Fraction
from itertools import combinations

import pytest

from sphere_lagrange.controllers.geometry import map_to_sphere, phi_plane
from sphere_lagrange.controllers.horospheres import (
    PairKernel,
    _tangent_rows,
    certify_pairs,
    enumerate_sphere_points,
    exact_gap,
    ford_radius_boundary,
    gap_factor,
    horoball_at,
    horoball_on_sphere,
    lemma_horo_radius,
    tangency_bracket,
    tangency_form,
    tangency_graph,
    verify_tangent_or_disjoint,
)
from sphere_lagrange.models.exceptions import CaseMismatchError, OverlapDetectedError, SamePointError
from sphere_lagrange.models.figure_data import figure_points
from sphere_lagrange.models.horoball import TangencyGraph, Verdict
from sphere_lagrange.models.quad_ext import SQRT2, SQRT3, SQRT6, Scalar, sign
from sphere_lagrange.models.space_spec import SpaceCase, SpaceSpec, SpherePoint

ALL_CASES = list(SpaceCase)


def test_horoball_at_base_point_of_unit_circle() -> None:
    """On the unit circle with C = sqrt2 the ball at a height-1 point has radius 1/(1 + sqrt2)."""
    ball = horoball_at(SpherePoint(SpaceCase.S1_I, (0, 1), 1))
    assert ball.radius == SQRT2 - 1
    assert ball.center == (0, 2 - SQRT2)


@pytest.mark.parametrize("case", ALL_CASES)
def test_horoball_on_sphere_matches_composed_radius(case: SpaceCase) -> None:
    for entry in figure_points(case):
        ball = horoball_on_sphere(entry.element, case)
        assert ball.base == map_to_sphere(entry.element, case)
        assert ball.radius > 0


@pytest.mark.parametrize("case", ALL_CASES)
def test_figure_horoballs_are_tangent_or_disjoint(case: SpaceCase) -> None:
    points = [entry.point for entry in figure_points(case)]
    for first, second in combinations(points, 2):
        verdict = verify_tangent_or_disjoint(first, second, exact=True)
        gap = exact_gap(horoball_at(first), horoball_at(second))
        assert (gap == 0) == (verdict.verdict is Verdict.TANGENT)
        assert tangency_bracket(first, second) >= 0


def test_tangent_and_disjoint_pairs_on_the_unit_circle() -> None:
    east, north, west = (SpherePoint(SpaceCase.S1_I, p, 1) for p in ((1, 0), (0, 1), (-1, 0)))
    assert verify_tangent_or_disjoint(east, north).verdict is Verdict.TANGENT
    assert verify_tangent_or_disjoint(east, west).verdict is Verdict.DISJOINT
    assert tangency_form(east, north) == -1


def test_tangency_form_needs_two_points_of_one_case() -> None:
    east = SpherePoint(SpaceCase.S1_I, (1, 0), 1)
    with pytest.raises(SamePointError):
        tangency_form(east, east)
    with pytest.raises(CaseMismatchError):
        tangency_form(east, SpherePoint(SpaceCase.S1_II, (1, 1), 1))


# ---------------------------------------------------------------------------
# Graphs
# ---------------------------------------------------------------------------


@pytest.mark.parametrize(
    ("case", "bound", "nodes", "edges"),
    [
        (SpaceCase.S1_I, 1, 4, 4),
        (SpaceCase.S2_I, 1, 6, 12),
        (SpaceCase.S2_III, 2, 8, 18),
    ],
)
def test_small_tangency_graphs(case: SpaceCase, bound: int, nodes: int, edges: int) -> None:
    graph = tangency_graph(case, bound)
    assert len(graph.nodes) == nodes
    assert len(graph.edges) == edges


def test_unit_circle_graph_is_a_four_cycle() -> None:
    graph = tangency_graph(SpaceCase.S1_I, 1)
    assert all(graph.degree(i) == 2 for i in range(len(graph.nodes)))
    north = SpherePoint(SpaceCase.S1_I, (0, 1), 1)
    assert graph.neighbours(north) == [SpherePoint(SpaceCase.S1_I, (-1, 0), 1), SpherePoint(SpaceCase.S1_I, (1, 0), 1)]


def test_graph_nodes_are_sorted_and_bounded() -> None:
    graph = tangency_graph(SpaceCase.S1_III, 13)
    keys = [node.sort_key() for node in graph.nodes]
    assert keys == sorted(keys)
    assert all(node.q <= 13 for node in graph.nodes)
    assert graph.edges == sorted(graph.edges)


def test_graph_contains_every_figure_point() -> None:
    for case in (SpaceCase.S1_I, SpaceCase.S1_III, SpaceCase.S2_II):
        points = [entry.point for entry in figure_points(case)]
        nodes = set(enumerate_sphere_points(case, max(point.q for point in points)))
        assert set(points) <= nodes


def test_graph_dict_form() -> None:
    graph = tangency_graph(SpaceCase.S2_I, 2)
    restored = TangencyGraph.from_dict(graph.to_dict())
    assert restored.nodes == graph.nodes
    assert restored.edges == graph.edges


def test_graph_is_independent_of_worker_count() -> None:
    single = tangency_graph(SpaceCase.S1_II, 30, workers=1)
    pooled = tangency_graph(SpaceCase.S1_II, 30, workers=2)
    assert single.to_dict() == pooled.to_dict()


# ---------------------------------------------------------------------------
# Certification sweeps
# ---------------------------------------------------------------------------


CERTIFY_BOUNDS = [
    (SpaceCase.S1_I, 25),
    (SpaceCase.S1_II, 25),
    (SpaceCase.S1_III, 25),
    (SpaceCase.S2_I, 5),
    (SpaceCase.S2_II, 5),
    (SpaceCase.S2_III, 5),
]


@pytest.mark.parametrize(("case", "bound"), CERTIFY_BOUNDS)
def test_exact_certification_agrees_with_graph(case: SpaceCase, bound: int) -> None:
    """Every pair is tangent or disjoint and the exact gap agrees with the integer form."""
    result = certify_pairs(case, bound, exact=True)
    nodes = result["nodes"]
    assert result["pairs"] == nodes * (nodes - 1) // 2
    assert result["tangent"] == len(tangency_graph(case, bound).edges)
    assert result["height_classes"] > 0


@pytest.mark.slow
@pytest.mark.parametrize("case", [SpaceCase.S2_I, SpaceCase.S2_II, SpaceCase.S2_III])
def test_two_sphere_certification_at_height_25(case: SpaceCase) -> None:
    result = certify_pairs(case, 25, workers=os.cpu_count() or 1, exact=True)
    nodes = result["nodes"]
    assert nodes > 800
    assert result["pairs"] == nodes * (nodes - 1) // 2
    assert result["tangent"] + result["disjoint"] == result["pairs"]


@pytest.mark.parametrize("case", ALL_CASES)
def test_gap_is_a_positive_multiple_of_the_bracket(case: SpaceCase) -> None:
    """The gap of the balls equals 8R^2hh'/C^2 uu' times the rational bracket."""
    spec = SpaceSpec.for_case(case)
    nodes = enumerate_sphere_points(case, 4)
    for first, second in combinations(nodes[:12], 2):
        factor = gap_factor(spec, first.q, second.q)
        assert sign(factor) == 1
        gap = exact_gap(horoball_at(first), horoball_at(second))
        assert gap == factor * tangency_bracket(first, second)


def test_sweep_reports_overlaps_with_a_certificate() -> None:
    """A repeated point overlaps its own horoball."""
    kernel = PairKernel.for_case(SpaceCase.S1_I)
    point = SpherePoint(SpaceCase.S1_I, (3, 4), 5)
    row = (point.p, point.q, kernel.offsets(point.p, point.q))
    with pytest.raises(OverlapDetectedError) as excinfo:
        _tangent_rows(SpaceCase.S1_I, [row, row], range(2))
    assert excinfo.value.certificate["first"] == "(3,4)/5"
    assert excinfo.value.certificate["form_value"] == "0"


# ---------------------------------------------------------------------------
# Radius formulas
# ---------------------------------------------------------------------------

CAPTION_RADII: dict[SpaceCase, Callable[[int], Scalar]] = {
    SpaceCase.S1_I: lambda h: 1 / (1 + SQRT2 * h),
    SpaceCase.S1_II: lambda h: SQRT2 / (1 + SQRT2 * h),
    SpaceCase.S1_III: lambda h: SQRT2 / (SQRT3 + 2 * h),
    SpaceCase.S2_I: lambda h: 1 / (1 + SQRT2 * h),
    SpaceCase.S2_II: lambda h: SQRT2 / (1 + 2 * h),
    SpaceCase.S2_III: lambda h: SQRT3 / (2 + SQRT6 * h),
}


@pytest.mark.parametrize("case", ALL_CASES)
def test_radius_depends_only_on_height(case: SpaceCase) -> None:
    """Each horoball has the listed radius in its height and touches the sphere from inside."""
    spec = SpaceSpec.for_case(case)
    for point in enumerate_sphere_points(case, 12 if case.sphere_dim == 1 else 6):
        ball = horoball_at(point)
        assert ball.radius == CAPTION_RADII[case](point.q), point
        offset_sq = sum(((x - c) ** 2 for x, c in zip(ball.center, spec.center, strict=True)), Fraction(0))
        assert offset_sq == (spec.radius - ball.radius) ** 2, point
