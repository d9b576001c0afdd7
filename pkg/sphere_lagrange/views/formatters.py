"""
Text and JSON presentation of command results.

Every formatter returns a complete string ending in a newline; decimals are always
printed next to the exact value they approximate.
"""

import io
import json
from typing import Any

import sympy

from sphere_lagrange.models.approximation import ApproximationRecord, LagrangeEstimate
from sphere_lagrange.models.figure_data import FigurePoint
from sphere_lagrange.models.horoball import BoundaryHoroball, Horoball, TangencyVerdict, decimal_str
from sphere_lagrange.models.k_element import KElement
from sphere_lagrange.models.markoff import MarkoffTriple
from sphere_lagrange.models.reports import SampleSummary
from sphere_lagrange.models.space_spec import SpherePoint
from sphere_lagrange.models.spectrum import SpectrumValue
from sphere_lagrange.utils.interval import interval_str


def render_json(data: Any) -> str:
    """Deterministic JSON document."""
    return json.dumps(data, indent=2, sort_keys=True, ensure_ascii=False) + "\n"


def format_mapping(point: SpherePoint) -> str:
    return f"{point} height={point.q}\n"


def format_element(z: KElement) -> str:
    if z.is_infinite:
        return f"{z}\n"
    return f"{z} height={z.height()}\n"


def format_heights(point: SpherePoint, boundary_height: int) -> str:
    return f"sphere_height={point.q} boundary_height={boundary_height}\n"


def format_summaries(summaries: list[SampleSummary]) -> str:
    return "".join(f"{summary}\n" for summary in summaries)


def _exact_and_decimal(x: Any, digits: int) -> str:
    return f"{x} ~ {decimal_str(x, digits)}"


def format_horoball(ball: Horoball | BoundaryHoroball, digits: int = 30) -> str:
    lines = [f"base: {ball.base}", f"radius: {_exact_and_decimal(ball.radius, digits)}"]
    lines += [f"center[{i}]: {_exact_and_decimal(x, digits)}" for i, x in enumerate(ball.center)]
    return "\n".join(lines) + "\n"


def format_verdict(verdict: TangencyVerdict) -> str:
    return f"{verdict.first} {verdict.second} {verdict.verdict} form={verdict.form_value}\n"


def format_triples(triples: list[MarkoffTriple]) -> str:
    return "".join(f"{triple}\n" for triple in triples)


def format_values(values: list[int]) -> str:
    return " ".join(str(v) for v in values) + "\n"


def format_spectrum(values: list[SpectrumValue], digits: int = 30) -> str:
    lines = [f"{sympy.sstr(v.value)} ~ {v.decimal(digits)} [{v.generator}, {v.provenance}]" for v in values]
    return "".join(line + "\n" for line in lines)


def format_estimate(estimate: LagrangeEstimate, digits: int = 30) -> str:
    lines = [
        f"target: {estimate.target}",
        f"space: {estimate.space}",
        f"tail: ({estimate.bound // 2}, {estimate.bound}] with {estimate.tail_records} records",
        f"estimate: {interval_str(estimate.enclosure, digits)}",
        f"attained at: {estimate.best}",
    ]
    return "\n".join(lines) + "\n"


def format_records(records: list[ApproximationRecord]) -> str:
    return "".join(f"{record}\n" for record in records)


def format_figure_points(points: list[FigurePoint]) -> str:
    buffer = io.StringIO()
    for point in points:
        buffer.write(f"{point.case.value} {point.element} -> {point.point}\n")
    return buffer.getvalue()

