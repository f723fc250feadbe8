"""SVG rendering of nested depth contours."""

from __future__ import annotations

from typing import Iterable, Sequence
from xml.sax.saxutils import escape

from dyndepth.geometry import Contour

SIZE = 600
MARGIN = 20


def _frame(xy: Sequence[tuple]):
    if not xy:
        return lambda x, y: (0.0, 0.0)
    xs = [x for x, _ in xy]
    ys = [y for _, y in xy]
    x0, y0 = min(xs), min(ys)
    span = max(max(xs) - x0, max(ys) - y0) or 1
    scale = (SIZE - 2 * MARGIN) / span

    def to_px(x, y):
        # exact until here; SVG space has y pointing down
        return (
            round(float(MARGIN + (x - x0) * scale), 3),
            round(float(SIZE - MARGIN - (y - y0) * scale), 3),
        )

    return to_px


def render(points: Sequence[tuple], contours: Iterable[tuple[str, Contour]]) -> str:
    """SVG text: each ``(label, contour)`` as a closed polyline, points as dots."""
    to_px = _frame(points)
    out = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{SIZE}" height="{SIZE}" '
        f'viewBox="0 0 {SIZE} {SIZE}">',
        '<g fill="none" stroke="#1f4e79" stroke-width="1">',
    ]
    for label, c in contours:
        if not c.vertices:
            continue
        pts = [to_px(x, y) for x, y in c.vertices]
        if c.kind == "polygon":
            pts.append(pts[0])
        coords = " ".join(f"{px},{py}" for px, py in pts)
        out.append(f'<polyline data-label="{escape(label)}" points="{coords}"/>')
    out.append("</g>")
    out.append('<g fill="#c0392b">')
    for x, y in points:
        px, py = to_px(x, y)
        out.append(f'<circle cx="{px}" cy="{py}" r="2"/>')
    out.append("</g>")
    out.append("</svg>")
    return "\n".join(out) + "\n"
