"""
Export of tangency graphs as DOT, JSON and SVG horocycle pictures.
"""

import json
from dataclasses import dataclass
from math import sqrt

from reportlab.graphics import renderSVG
from reportlab.graphics.shapes import Circle, Drawing, String
from reportlab.lib import colors

from sphere_lagrange.controllers.horospheres import horoball_at
from sphere_lagrange.models.exceptions import RenderingUnsupportedError, UnknownFormatError
from sphere_lagrange.models.horoball import TangencyGraph
from sphere_lagrange.models.space_spec import SpaceSpec
from sphere_lagrange.utils.logger import get_logger

logger = get_logger(__name__)

FORMATS = ("dot", "json", "svg")


@dataclass(frozen=True)
class PlaneCircle:
    """A circle in the drawing plane, in units of the sphere radius."""

    x: float
    y: float
    radius: float
    label: str = ""


def graph_to_dot(graph: TangencyGraph) -> str:
    """Undirected DOT graph with node ids pX_..._q and "(p)/q" labels."""
    lines = [f'graph "{graph.case.value}" {{']
    for node in graph.nodes:
        lines.append(f'  "{node.node_id}" [label="{node}"];')
    for i, j in graph.edges:
        lines.append(f'  "{graph.nodes[i].node_id}" -- "{graph.nodes[j].node_id}";')
    lines.append("}")
    return "\n".join(lines) + "\n"


def graph_to_json(graph: TangencyGraph) -> str:
    return json.dumps(graph.to_dict(), indent=2, sort_keys=True) + "\n"


# ----------------------------------------------------------------------
# Horocycle pictures
# ----------------------------------------------------------------------


def _plane_coordinates(vector: tuple[float, ...], center: tuple[float, ...]) -> tuple[float, float]:
    offset = [v - c for v, c in zip(vector, center, strict=True)]
    if len(offset) == 2:
        return offset[0], offset[1]
    # orthonormal basis of the plane x + y + z = 1
    return (offset[0] - offset[1]) / sqrt(2), (offset[0] + offset[1] - 2 * offset[2]) / sqrt(6)


def horocycle_circles(graph: TangencyGraph) -> tuple[PlaneCircle, list[PlaneCircle]]:
    """
    The sphere outline and the horocycles of a 1-sphere graph, scaled to a unit outline.

    Raises:
        RenderingUnsupportedError: for 2-sphere cases
    """
    if graph.case.sphere_dim != 1:
        raise RenderingUnsupportedError
    spec = SpaceSpec.for_case(graph.case)
    radius = float(spec.radius)
    center = tuple(float(c) for c in spec.center)
    outline = PlaneCircle(0.0, 0.0, 1.0)
    circles = []
    for node in graph.nodes:
        ball = horoball_at(node)
        x, y = _plane_coordinates(tuple(float(c) for c in ball.center), center)
        circles.append(PlaneCircle(x / radius, y / radius, float(ball.radius) / radius, str(node)))
    return outline, circles


def horocycle_drawing(graph: TangencyGraph, size: float = 400.0, labels: bool = True) -> Drawing:
    """ReportLab drawing of the horocycles, shared by the SVG and PDF outputs."""
    outline, circles = horocycle_circles(graph)
    scale = 0.42 * size
    middle = size / 2
    drawing = Drawing(size, size)
    drawing.add(
        Circle(middle, middle, outline.radius * scale, fillColor=None, strokeColor=colors.black, strokeWidth=1)
    )
    for circle in circles:
        drawing.add(
            Circle(
                middle + circle.x * scale,
                middle + circle.y * scale,
                circle.radius * scale,
                fillColor=None,
                strokeColor=colors.darkblue,
                strokeWidth=0.6,
            )
        )
        if labels and circle.radius * scale > 8:
            drawing.add(
                String(
                    middle + circle.x * scale,
                    middle + circle.y * scale,
                    circle.label,
                    fontName="Helvetica",
                    fontSize=6,
                    textAnchor="middle",
                )
            )
    return drawing


def graph_to_svg(graph: TangencyGraph) -> str:
    """SVG picture of the horocycles of a 1-sphere graph."""
    return renderSVG.drawToString(horocycle_drawing(graph))


def export_graph(graph: TangencyGraph, fmt: str) -> bytes:
    """
    Serialize a tangency graph.

    Args:
        graph: Graph to export
        fmt: One of "dot", "json" or "svg"

    Returns:
        The encoded document

    Raises:
        UnknownFormatError: for unsupported formats
        RenderingUnsupportedError: for SVG output of a 2-sphere case
    """
    if fmt == "dot":
        text = graph_to_dot(graph)
    elif fmt == "json":
        text = graph_to_json(graph)
    elif fmt == "svg":
        text = graph_to_svg(graph)
    else:
        raise UnknownFormatError(fmt, FORMATS)
    logger.debug("exported %s as %s (%d characters)", graph, fmt, len(text))
    return text.encode("utf-8")
