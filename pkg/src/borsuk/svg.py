"""Static SVG figures of a body, its diameter segments and a partition.

Bodies live in a y-up frame; we emit coordinates with y negated, so a
counterclockwise arc in the body frame is drawn with sweep-flag 1.
"""
from __future__ import annotations

import math
import xml.etree.ElementTree as ET

from .bodies import ConvexBody
from .diameter import AntipodalFamily, PointArcFamily, diameter_pairs
from .geometry import Arc, Chord
from .partition import Partition

OUTLINE = "#000000"
DIAMETER = "#d62728"
CONSTRUCTION = "#7f7f7f"
PIECE_FILLS = ("#8dd3c7", "#ffffb3", "#bebada")
MARGIN = 0.05
FAMILY_FAN = 9


def _fmt(x: float) -> str:
    s = f"{x:.10g}"
    return "0" if s == "-0" else s


def _xy(p) -> str:
    return f"{_fmt(p[0])},{_fmt(-p[1])}"


def body_path(body: ConvexBody) -> str:
    pieces = body.pieces
    out = [f"M {_xy(pieces[0].a)}"]
    for piece in pieces:
        if isinstance(piece, Arc):
            # quarter turns at most, so the large-arc flag is always 0
            k = max(1, math.ceil(piece.sweep / (math.pi / 2) - 1e-12))
            r = _fmt(piece.radius)
            for j in range(1, k + 1):
                end = piece.point_at_angle(piece.start + piece.sweep * j / k)
                out.append(f"A {r} {r} 0 0 1 {_xy(end)}")
        else:
            out.append(f"L {_xy(piece.b)}")
    out.append("Z")
    return " ".join(out)


def diameter_chords(body: ConvexBody, eps_rel: float = 1e-9) -> list[Chord]:
    """Finite diameter chords, plus a fan of representatives for each arc family."""
    chords = []
    for rel in diameter_pairs(body, eps_rel):
        if isinstance(rel, Chord):
            chords.append(rel)
        elif isinstance(rel, PointArcFamily):
            arc = rel.arc
            for i in range(FAMILY_FAN):
                chords.append(Chord(rel.point, arc.point_at_angle(arc.start + arc.sweep * i / (FAMILY_FAN - 1))))
        elif isinstance(rel, AntipodalFamily):
            f = rel.first
            for i in range(FAMILY_FAN):
                ang = f.start + f.sweep * i / (FAMILY_FAN - 1)
                chords.append(Chord(f.point_at_angle(ang), rel.second.point_at_angle(ang + math.pi)))
    return chords


def _view_box(body: ConvexBody) -> tuple[float, float, float, float]:
    xs, ys = [], []
    for u in ((1, 0), (-1, 0), (0, 1), (0, -1)):
        p = body.support_point(u)
        xs.append(p.x)
        ys.append(p.y)
    x0, x1, y0, y1 = min(xs), max(xs), min(ys), max(ys)
    mx, my = MARGIN * (x1 - x0), MARGIN * (y1 - y0)
    return x0 - mx, -(y1 + my), (x1 - x0) + 2 * mx, (y1 - y0) + 2 * my


def _line(parent, a, b, **attrs):
    ET.SubElement(
        parent, "line",
        x1=_fmt(a[0]), y1=_fmt(-a[1]), x2=_fmt(b[0]), y2=_fmt(-b[1]),
        **attrs,
    )


def render(body: ConvexBody, partition: Partition | None = None, eps_rel: float = 1e-9, size: int = 480) -> str:
    """SVG 1.1 document: pieces, construction lines, diameter segments, outline."""
    vb = _view_box(body)
    stroke = _fmt(body.scale / 400)
    svg = ET.Element(
        "svg",
        xmlns="http://www.w3.org/2000/svg",
        version="1.1",
        width=str(size),
        height=str(max(1, round(size * vb[3] / vb[2]))),
        viewBox=" ".join(_fmt(v) for v in vb),
    )
    if partition is not None:
        g = ET.SubElement(svg, "g", id="pieces", stroke="none")
        for i, piece in enumerate(partition.pieces):
            ET.SubElement(g, "path", d=body_path(piece), fill=PIECE_FILLS[i % len(PIECE_FILLS)])
        g = ET.SubElement(svg, "g", id="construction", stroke=CONSTRUCTION, fill="none")
        g.set("stroke-width", stroke)
        g.set("stroke-dasharray", f"{_fmt(body.scale / 80)} {_fmt(body.scale / 160)}")
        if partition.chord is not None:
            _line(g, partition.chord.a, partition.chord.b)
        if partition.hexagon is not None:
            hexagon = partition.hexagon
            ET.SubElement(g, "polygon", points=" ".join(_xy(v) for v in hexagon.vertices))
            for m in (0, 2, 4):
                _line(g, hexagon.center, hexagon.side_midpoint(m))
    g = ET.SubElement(svg, "g", id="diameters", stroke=DIAMETER)
    g.set("stroke-width", stroke)
    for c in diameter_chords(body, eps_rel):
        _line(g, c.a, c.b)
    outline = ET.SubElement(svg, "path", id="body", d=body_path(body), fill="none", stroke=OUTLINE)
    outline.set("stroke-width", _fmt(body.scale / 250))
    ET.indent(svg)
    return '<?xml version="1.0" encoding="UTF-8"?>\n' + ET.tostring(svg, encoding="unicode") + "\n"
