"""Unit-square views of integer functions: ASCII, plain PBM, and SVG."""

from __future__ import annotations

from dataclasses import dataclass
from xml.etree import ElementTree

from .core import IntegerFunction, PreconditionError


@dataclass(frozen=True)
class Viewport:
    """Inclusive cell bounds; cells outside are clipped, not errors."""

    i_min: int
    i_max: int
    j_min: int
    j_max: int
    cell_px: int = 16

    def __post_init__(self):
        if self.i_min > self.i_max or self.j_min > self.j_max:
            raise PreconditionError("viewport bounds must satisfy min <= max")
        if self.cell_px < 1:
            raise PreconditionError("cell_px must be a positive integer")

    @classmethod
    def around(cls, f: IntegerFunction, cell_px: int = 16) -> "Viewport":
        return cls(
            i_min=min(e.i for e in f.elements),
            i_max=max(e.i for e in f.elements),
            j_min=min(e.j for e in f.elements),
            j_max=max(e.j for e in f.elements),
            cell_px=cell_px,
        )

    @property
    def columns(self) -> int:
        return self.i_max - self.i_min + 1

    @property
    def rows(self) -> int:
        return self.j_max - self.j_min + 1


def occupancy(f: IntegerFunction, viewport: Viewport) -> list[list[bool]]:
    """Cell occupancy grid, rows top (j_max) to bottom (j_min).

    Duplicate cells of a composite path count once.
    """
    cells = set(f.elements)
    return [
        [(i, j) in cells for i in range(viewport.i_min, viewport.i_max + 1)]
        for j in range(viewport.j_max, viewport.j_min - 1, -1)
    ]


def render_ascii(f: IntegerFunction, viewport: Viewport) -> str:
    """'#' for occupied cells, '.' otherwise, one text row per cell row."""
    grid = occupancy(f, viewport)
    return "".join("".join("#" if cell else "." for cell in row) + "\n" for row in grid)


def render_pbm(f: IntegerFunction, viewport: Viewport) -> bytes:
    """Plain PBM (P1): magic, dimensions, then one row of 0/1 digits per line."""
    grid = occupancy(f, viewport)
    lines = [f"P1", f"{viewport.columns} {viewport.rows}"]
    lines.extend("".join("1" if cell else "0" for cell in row) for row in grid)
    return ("\n".join(lines) + "\n").encode("ascii")


def render_svg(f: IntegerFunction, viewport: Viewport,
               scale_label: str | None = None) -> str:
    """One square per occupied cell, j growing upward, optional scale label."""
    px = viewport.cell_px
    width = viewport.columns * px
    height = viewport.rows * px
    svg = ElementTree.Element("svg", {
        "xmlns": "http://www.w3.org/2000/svg",
        "width": str(width),
        "height": str(height),
        "viewBox": f"0 0 {width} {height}",
    })
    cells = sorted(set(f.elements))
    for i, j in cells:
        if viewport.i_min <= i <= viewport.i_max and viewport.j_min <= j <= viewport.j_max:
            ElementTree.SubElement(svg, "rect", {
                "x": str((i - viewport.i_min) * px),
                "y": str((viewport.j_max - j) * px),
                "width": str(px),
                "height": str(px),
                "fill": "black",
            })
    if scale_label is not None:
        label = ElementTree.SubElement(svg, "text", {
            "x": "2",
            "y": str(max(12, px - 2)),
            "font-size": str(max(10, px - 4)),
            "fill": "red",
        })
        label.text = scale_label
    body = ElementTree.tostring(svg, encoding="unicode")
    return '<?xml version="1.0" encoding="UTF-8"?>\n' + body + "\n"
