"""
PDF generation of the horocycle figures of the 1-sphere cases.
"""

from typing import BinaryIO, ClassVar

from reportlab.graphics import renderPDF
from reportlab.lib.pagesizes import A3, A4, LETTER
from reportlab.lib.units import mm
from reportlab.pdfgen import canvas

from sphere_lagrange.models.horoball import TangencyGraph
from sphere_lagrange.utils.graph_exporter import horocycle_drawing
from sphere_lagrange.utils.logger import get_logger

logger = get_logger(__name__)


class FigurePDFGenerator:
    """Renders the horocycles of one or more tangency graphs, one page per graph."""

    PAPER_SIZES: ClassVar[dict[str, tuple[float, float]]] = {
        "A4": A4,
        "A3": A3,
        "Letter": LETTER,
    }

    TITLE_FONT: ClassVar[str] = "Helvetica-Bold"
    TITLE_SIZE: ClassVar[float] = 12.0

    def __init__(self, graphs: list[TangencyGraph], paper_size: str = "A4", margin: float = 15.0):
        """
        Initialize the PDF generator.

        Args:
            graphs: 1-sphere tangency graphs to draw
            paper_size: Key of PAPER_SIZES
            margin: Page margin in mm
        """
        self.graphs = graphs
        self.paper_size = paper_size
        self.margin = margin

    # ------------------------------------------------------------------
    # Public API
    # ------------------------------------------------------------------

    def generate_pdf(self, output_path: str | BinaryIO) -> bool:
        """
        Generate the PDF file.

        Args:
            output_path: Path or binary stream receiving the PDF

        Returns:
            True if PDF was generated successfully, False otherwise
        """
        try:
            page_size = self.PAPER_SIZES.get(self.paper_size, A4)
            page_width, page_height = page_size
            # invariant output: no timestamps or random ids in the file
            c = canvas.Canvas(output_path, pagesize=page_size, invariant=1)

            margin = self.margin * mm
            available = min(page_width, page_height) - 2 * margin - self.TITLE_SIZE * 2
            for graph in self.graphs:
                self._draw_title(c, graph, margin, page_height)
                drawing = horocycle_drawing(graph, size=available)
                x = (page_width - available) / 2
                y = (page_height - available) / 2 - self.TITLE_SIZE
                renderPDF.draw(drawing, c, x, y)
                c.showPage()
            c.save()

        except Exception as e:  # pylint: disable=broad-exception-caught
            logger.error("Error generating PDF: %s", e, exc_info=True)
            return False
        logger.info("wrote %d figure page(s) to %s", len(self.graphs), output_path)
        return True

    # ------------------------------------------------------------------
    # Private helpers
    # ------------------------------------------------------------------

    def _draw_title(self, canvas_obj: canvas.Canvas, graph: TangencyGraph, margin: float, page_height: float) -> None:
        title = f"{graph.case}: horocycles of height <= {graph.bound}, {len(graph.edges)} tangencies"
        canvas_obj.setFont(self.TITLE_FONT, self.TITLE_SIZE)
        canvas_obj.drawString(margin, page_height - margin - self.TITLE_SIZE, title)
