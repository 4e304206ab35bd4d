"""Convex bodies: polygons, discs and circular-arc-gons.

All three share one boundary model: a counterclockwise cycle of
:class:`~borsuk.geometry.Segment` / :class:`~borsuk.geometry.Arc` pieces,
parametrized by normalized arc length ``t`` in [0, 1) anchored at the first
stored vertex (polygons, arc-gons) or at angle 0 (discs).
"""
from __future__ import annotations

import bisect
import math
from dataclasses import dataclass
from functools import cached_property
from typing import NamedTuple, Union

import numpy as np

from .errors import DegenerateInput, EmptyResult, InvalidBody, NotOnBoundary, SchemaError
from .geometry import TAU, Arc, Point, Segment, as_point, ccw_offset, orient, polar

EPS_ON = 1e-9
EPS_SYM = 1e-9
# relative snapping tolerance used when clipping
EPS_CLIP = 1e-12


class SegTo(NamedTuple):
    to: Point


class ArcTo(NamedTuple):
    center: Point
    radius: float
    to: Point


class _Boundary:
    """Shared boundary machinery; subclasses provide ``pieces``."""

    pieces: tuple

    @cached_property
    def offsets(self) -> tuple[float, ...]:
        acc = [0.0]
        for p in self.pieces:
            acc.append(acc[-1] + p.length)
        return tuple(acc)

    @property
    def perimeter(self) -> float:
        return self.offsets[-1]

    @cached_property
    def junctions(self) -> tuple[Point, ...]:
        """Start points of the boundary pieces (the polygon vertices)."""
        return tuple(p.a for p in self.pieces)

    def junction_param(self, k: int) -> float:
        return self.offsets[k] / self.perimeter

    @cached_property
    def scale(self) -> float:
        """Bounding-box diagonal; the length unit for relative tolerances."""
        w = self.support((1.0, 0.0)) + self.support((-1.0, 0.0))
        h = self.support((0.0, 1.0)) + self.support((0.0, -1.0))
        return math.hypot(w, h)

    @property
    def has_arcs(self) -> bool:
        return any(isinstance(p, Arc) for p in self.pieces)

    # -- boundary parametrization -------------------------------------------------
    def point_at(self, t: float) -> Point:
        s = (t % 1.0) * self.perimeter
        k = min(bisect.bisect_right(self.offsets, s) - 1, len(self.pieces) - 1)
        return self.pieces[k].point_at(s - self.offsets[k])

    def points_at(self, ts) -> np.ndarray:
        return np.array([self.point_at(t) for t in ts], dtype=float).reshape(-1, 2)

    def param_of(self, p) -> float:
        best = (math.inf, 0, 0.0)
        for k, piece in enumerate(self.pieces):
            d, s = piece.project(p)
            if d < best[0]:
                best = (d, k, s)
        d, k, s = best
        if d > EPS_ON * self.scale:
            raise NotOnBoundary(f"{tuple(p)} is {d:.3g} away from the boundary")
        return ((self.offsets[k] + s) / self.perimeter) % 1.0

    def sample_params(self, n: int, rng: np.random.Generator | None = None) -> np.ndarray:
        """Stratified parameters: one per stratum, jittered if ``rng`` is given."""
        jitter = rng.random(n) if rng is not None else np.zeros(n)
        return (np.arange(n) + jitter) / n

    # -- support function ---------------------------------------------------------
    def support(self, u) -> float:
        u = Point(*u)
        h = max(u.dot(p) for p in self.junctions)
        for piece in self.pieces:
            if isinstance(piece, Arc) and piece.contains_angle(u.angle()):
                h = max(h, u.dot(piece.center) + piece.radius * u.norm())
        return h

    def _support_candidates(self, u: Point) -> list[Point]:
        cands = list(self.junctions)
        ang = u.angle()
        for piece in self.pieces:
            if isinstance(piece, Arc) and piece.contains_angle(ang):
                cands.append(piece.point_at_angle(ang))
        return cands

    def support_point(self, u) -> Point:
        """A maximizer of <x, u>; faces resolve to their midpoint."""
        u = Point(*u).unit()
        cands = self._support_candidates(u)
        vals = [u.dot(c) for c in cands]
        h = max(vals)
        tol = 1e-12 * self.scale
        face = [c for c, v in zip(cands, vals) if v >= h - tol]
        along = u.perp()
        lo = min(face, key=along.dot)
        hi = max(face, key=along.dot)
        return (lo + hi) * 0.5

    def width(self, u) -> float:
        u = Point(*u)
        return self.support(u) + self.support(-u)

    # -- measures and predicates --------------------------------------------------
    @cached_property
    def area(self) -> float:
        js = self.junctions
        a = 0.0
        for i in range(len(js)):
            a += js[i].cross(js[(i + 1) % len(js)])
        a *= 0.5
        for piece in self.pieces:
            if isinstance(piece, Arc):
                a += 0.5 * piece.radius**2 * (piece.sweep - math.sin(piece.sweep))
        return a

    def contains(self, p, tol: float = 0.0) -> bool:
        p = Point(*p)
        slack = tol * self.scale
        js = self.junctions
        if len(js) >= 3:
            inside = True
            for i in range(len(js)):
                a, b = js[i], js[(i + 1) % len(js)]
                L = math.dist(a, b)
                if L > 0 and orient(a, b, p) < -slack * L:
                    inside = False
                    break
            if inside:
                return True
        for piece in self.pieces:
            if isinstance(piece, Arc):
                if math.dist(p, piece.center) > piece.radius + slack:
                    continue
                if piece.sweep >= TAU - 1e-12:
                    return True
                a, b = piece.a, piece.b
                if orient(a, b, p) <= slack * math.dist(a, b):
                    return True
        return False

    def outline(self, per_arc: int = 64) -> list[Point]:
        """Polygonal approximation through every junction (arcs subdivided)."""
        pts: list[Point] = []
        for piece in self.pieces:
            if isinstance(piece, Arc):
                k = max(2, int(math.ceil(per_arc * piece.sweep / TAU)))
                pts.extend(piece.point_at_angle(piece.start + piece.sweep * i / k) for i in range(k))
            else:
                pts.append(piece.a)
        return pts

    def vertex_like(self) -> list[Point]:
        """Junction points, the exact extreme-point candidates for samplers."""
        return list(self.junctions)


@dataclass(frozen=True, eq=True)
class ConvexPolygon(_Boundary):
    """Strictly convex polygon, vertices stored counterclockwise.

    Repeated and collinear vertices are dropped on construction; clockwise
    input is reversed, keeping its first vertex first.
    """

    vertices: tuple

    def __post_init__(self):
        verts = [as_point(v) for v in self.vertices]
        verts = _clean_ring(verts)
        if len(verts) < 3:
            raise DegenerateInput("polygon needs at least 3 non-collinear vertices")
        area2 = sum(verts[i].cross(verts[(i + 1) % len(verts)]) for i in range(len(verts)))
        if area2 < 0:
            # reverse but keep the first vertex as the anchor
            verts = verts[:1] + verts[:0:-1]
        n = len(verts)
        turn = 0.0
        for i in range(n):
            a, b, c = verts[i - 1], verts[i], verts[(i + 1) % n]
            if orient(a, b, c) <= 0:
                raise InvalidBody("polygon is not strictly convex")
            turn += ccw_offset((c - b).angle(), (b - a).angle())
        if abs(turn - TAU) > 1e-6:
            raise InvalidBody("polygon boundary winds more than once")
        object.__setattr__(self, "vertices", tuple(verts))

    def __repr__(self):
        return f"ConvexPolygon({len(self.vertices)} vertices)"

    @cached_property
    def pieces(self) -> tuple:
        v = self.vertices
        return tuple(Segment(v[i], v[(i + 1) % len(v)]) for i in range(len(v)))

    @property
    def junctions(self) -> tuple:
        return self.vertices

    @cached_property
    def xy(self) -> np.ndarray:
        return np.array(self.vertices, dtype=float)

    @cached_property
    def offsets(self) -> tuple[float, ...]:
        seg = np.hypot(*np.diff(np.vstack([self.xy, self.xy[:1]]), axis=0).T)
        return tuple(np.concatenate([[0.0], np.cumsum(seg)]).tolist())

    def support(self, u) -> float:
        return float((self.xy @ np.asarray(u, dtype=float)).max())

    def _support_candidates(self, u):
        return list(self.vertices)

    def support_point(self, u) -> Point:
        u = Point(*u).unit()
        vals = self.xy @ np.asarray(u)
        h = vals.max()
        idx = np.nonzero(vals >= h - 1e-12 * self.scale)[0]
        face = [self.vertices[i] for i in idx]
        along = u.perp()
        lo = min(face, key=along.dot)
        hi = max(face, key=along.dot)
        return (lo + hi) * 0.5

    @cached_property
    def area(self) -> float:
        x, y = self.xy[:, 0], self.xy[:, 1]
        return 0.5 * float(np.dot(x, np.roll(y, -1)) - np.dot(np.roll(x, -1), y))

    def transformed(self, scale=1.0, rotation=0.0, shift=(0.0, 0.0)) -> "ConvexPolygon":
        f = _similarity(scale, rotation, shift)
        return ConvexPolygon(tuple(f(v) for v in self.vertices))

    def to_json(self) -> dict:
        return {"type": "polygon", "vertices": [list(v) for v in self.vertices]}


@dataclass(frozen=True, eq=True)
class Disc(_Boundary):
    center: Point
    radius: float

    def __post_init__(self):
        object.__setattr__(self, "center", as_point(self.center))
        r = float(self.radius)
        if not (math.isfinite(r) and r > 0):
            raise InvalidBody("disc radius must be positive")
        object.__setattr__(self, "radius", r)

    @cached_property
    def pieces(self) -> tuple:
        return (Arc(self.center, self.radius, 0.0, TAU),)

    def support(self, u) -> float:
        u = Point(*u)
        return u.dot(self.center) + self.radius * u.norm()

    def support_point(self, u) -> Point:
        return self.center + Point(*u).unit() * self.radius

    def param_of(self, p) -> float:
        v = Point(*p) - self.center
        if abs(v.norm() - self.radius) > EPS_ON * 2 * self.radius:
            raise NotOnBoundary(f"{tuple(p)} is not on the circle")
        return v.angle() / TAU % 1.0

    @cached_property
    def area(self) -> float:
        return math.pi * self.radius**2

    def vertex_like(self) -> list[Point]:
        return []

    def transformed(self, scale=1.0, rotation=0.0, shift=(0.0, 0.0)) -> "Disc":
        return Disc(_similarity(scale, rotation, shift)(self.center), self.radius * scale)

    def to_json(self) -> dict:
        return {"type": "disc", "center": list(self.center), "radius": self.radius}


@dataclass(frozen=True, eq=True)
class ArcGon(_Boundary):
    """Convex body bounded by segments and counterclockwise circular arcs.

    ``elements`` is a cycle of :class:`SegTo` / :class:`ArcTo` steps starting
    at ``start``; the last step must return to ``start``.  Each arc sweeps at
    most pi.
    """

    start: Point
    elements: tuple

    def __post_init__(self):
        object.__setattr__(self, "start", as_point(self.start))
        els = []
        for e in self.elements:
            if isinstance(e, ArcTo):
                r = float(e.radius)
                if not (math.isfinite(r) and r > 0):
                    raise InvalidBody("arc radius must be positive")
                els.append(ArcTo(as_point(e.center), r, as_point(e.to)))
            elif isinstance(e, SegTo):
                els.append(SegTo(as_point(e.to)))
            else:
                raise InvalidBody(f"unknown boundary element {e!r}")
        if not els:
            raise DegenerateInput("arc-gon needs at least one element")
        object.__setattr__(self, "elements", tuple(els))
        self._validate()

    def __repr__(self):
        kinds = "".join("a" if isinstance(e, ArcTo) else "s" for e in self.elements)
        return f"ArcGon({kinds})"

    @cached_property
    def pieces(self) -> tuple:
        out = []
        prev = self.start
        for e in self.elements:
            if isinstance(e, SegTo):
                out.append(Segment(prev, e.to))
            else:
                t0 = (prev - e.center).angle()
                sweep = ccw_offset((e.to - e.center).angle(), t0)
                out.append(Arc(e.center, e.radius, t0, sweep))
            prev = e.to
        return tuple(out)

    @property
    def junctions(self) -> tuple:
        pts = [self.start]
        pts.extend(e.to for e in self.elements[:-1])
        return tuple(pts)

    def _validate(self):
        ext = 0.0
        pts = [self.start] + [e.to for e in self.elements]
        for p in pts:
            ext = max(ext, math.dist(p, self.start))
        for e in self.elements:
            if isinstance(e, ArcTo):
                ext = max(ext, 2 * e.radius)
        tol = EPS_ON * max(ext, 1e-300)
        if math.dist(self.elements[-1].to, self.start) > tol:
            raise InvalidBody("arc-gon boundary does not close")
        prev = self.start
        for e in self.elements:
            if math.dist(prev, e.to) <= tol:
                raise InvalidBody("zero-length boundary element")
            if isinstance(e, ArcTo):
                if abs(math.dist(prev, e.center) - e.radius) > tol or abs(math.dist(e.to, e.center) - e.radius) > tol:
                    raise InvalidBody("arc endpoints are not on its circle")
            prev = e.to
        pieces = self.pieces
        turn = 0.0
        for i, piece in enumerate(pieces):
            if isinstance(piece, Arc):
                if piece.sweep > math.pi + 1e-9:
                    raise InvalidBody("arcs must sweep at most pi")
                turn += piece.sweep
            nxt = pieces[(i + 1) % len(pieces)]
            jump = (nxt.tangent_in() - piece.tangent_out() + math.pi) % TAU - math.pi
            if jump < -1e-7:
                raise InvalidBody("arc-gon boundary is not convex")
            turn += jump
        if abs(turn - TAU) > 1e-6:
            raise InvalidBody("arc-gon boundary must turn exactly once")
        if self.area <= 0:
            raise DegenerateInput("arc-gon has empty interior")

    @classmethod
    def from_pieces(cls, pieces) -> "ArcGon":
        """Build from a closed cycle of pieces; arcs wider than pi are split."""
        if not pieces:
            raise EmptyResult("no boundary pieces")
        els = []
        for piece in pieces:
            if isinstance(piece, Arc):
                m = max(1, math.ceil(piece.sweep / math.pi - 1e-12))
                for i in range(1, m + 1):
                    to = pieces[0].a if (piece is pieces[-1] and i == m) else piece.point_at_angle(piece.start + piece.sweep * i / m)
                    els.append(ArcTo(piece.center, piece.radius, to))
            else:
                els.append(SegTo(pieces[0].a if piece is pieces[-1] else piece.b))
        return cls(pieces[0].a, tuple(els))

    def transformed(self, scale=1.0, rotation=0.0, shift=(0.0, 0.0)) -> "ArcGon":
        f = _similarity(scale, rotation, shift)
        els = tuple(
            ArcTo(f(e.center), e.radius * scale, f(e.to)) if isinstance(e, ArcTo) else SegTo(f(e.to))
            for e in self.elements
        )
        return ArcGon(f(self.start), els)

    def to_json(self) -> dict:
        els = []
        for e in self.elements:
            if isinstance(e, ArcTo):
                els.append({"kind": "arc", "center": list(e.center), "radius": e.radius, "to": list(e.to)})
            else:
                els.append({"kind": "seg", "to": list(e.to)})
        return {"type": "arcgon", "start": list(self.start), "elements": els}


ConvexBody = Union[ConvexPolygon, Disc, ArcGon]


def _similarity(scale, rotation, shift):
    c, s = math.cos(rotation), math.sin(rotation)
    sx, sy = shift

    def f(p):
        return Point(scale * (c * p[0] - s * p[1]) + sx, scale * (s * p[0] + c * p[1]) + sy)

    return f


def _clean_ring(verts: list[Point]) -> list[Point]:
    """Drop repeated and collinear vertices from a closed ring."""
    if not verts:
        return verts
    ext = max(math.dist(v, verts[0]) for v in verts)
    tol = 1e-12 * ext
    out: list[Point] = []
    for v in verts:
        if not out or math.dist(v, out[-1]) > tol:
            out.append(v)
    while len(out) > 1 and math.dist(out[0], out[-1]) <= tol:
        out.pop()
    changed = True
    while changed and len(out) >= 3:
        changed = False
        for i in range(len(out)):
            a, b, c = out[i - 1], out[i], out[(i + 1) % len(out)]
            if abs(orient(a, b, c)) <= 1e-12 * math.dist(a, b) * math.dist(b, c):
                del out[i]
                changed = True
                break
    return out


# -- operations ---------------------------------------------------------------------


def clip_halfplane(body: ConvexBody, point, normal) -> ConvexBody:
    """Closed intersection of ``body`` with {x : <normal, x - point> <= 0}.

    Polygons stay polygons; discs and arc-gons come back as :class:`ArcGon`.
    A half-plane containing the whole body returns ``body`` unchanged.
    """
    n = Point(*normal)
    L = n.norm()
    if L == 0:
        raise DegenerateInput("zero normal")
    n = n / L
    offset = n.dot(point)
    tol = EPS_CLIP * body.scale
    if isinstance(body, ConvexPolygon):
        d = body.xy @ np.asarray(n) - offset
        if d.max() <= tol:
            return body
        if d.min() >= -tol:
            raise EmptyResult("half-plane misses the body")
        out = []
        vs = body.vertices
        for i in range(len(vs)):
            a, b = vs[i], vs[(i + 1) % len(vs)]
            da, db = d[i], d[(i + 1) % len(vs)]
            if da <= tol:
                out.append(a)
            if (da < -tol and db > tol) or (da > tol and db < -tol):
                out.append(a + (b - a) * (da / (da - db)))
        try:
            return ConvexPolygon(tuple(out))
        except InvalidBody as exc:
            raise EmptyResult(f"clip left a degenerate piece: {exc}") from exc
    kept = []
    whole = True
    for piece in body.pieces:
        parts = piece.clip(n, offset, tol)
        if len(parts) != 1 or parts[0] is not piece:
            whole = False
        kept.extend(parts)
    if whole:
        return body
    if not kept:
        raise EmptyResult("half-plane misses the body")
    joined = []
    for i, piece in enumerate(kept):
        joined.append(piece)
        nxt = kept[(i + 1) % len(kept)]
        if math.dist(piece.b, nxt.a) > tol:
            joined.append(Segment(piece.b, nxt.a))
    if len(joined) < 2:
        raise EmptyResult("clip left a degenerate piece")
    try:
        out = ArcGon.from_pieces(joined)
    except InvalidBody as exc:
        raise EmptyResult(f"clip left a degenerate piece: {exc}") from exc
    if out.area <= (tol * body.scale):
        raise EmptyResult("clip left a zero-area piece")
    return out


def _canonical_pieces(body: ConvexBody, tol: float) -> list:
    """Pieces with same-circle arcs and collinear segments merged."""

    def mergeable(p, q):
        if isinstance(p, Segment) and isinstance(q, Segment):
            return abs(orient(p.a, p.b, q.b)) <= tol * (p.length + q.length)
        if isinstance(p, Arc) and isinstance(q, Arc):
            return math.dist(p.center, q.center) <= tol and abs(p.radius - q.radius) <= tol
        return False

    def merge(p, q):
        if isinstance(p, Segment):
            return Segment(p.a, q.b)
        return Arc(p.center, p.radius, p.start, p.sweep + q.sweep)

    out: list = []
    for piece in body.pieces:
        if out and mergeable(out[-1], piece):
            out[-1] = merge(out[-1], piece)
        else:
            out.append(piece)
    while len(out) > 1 and mergeable(out[-1], out[0]):
        out[0] = merge(out.pop(), out[0])
    return out


def _pieces_match(p, q, tol: float) -> bool:
    if type(p) is not type(q):
        return False
    if math.dist(p.a, q.a) > tol or math.dist(p.b, q.b) > tol:
        return False
    if isinstance(p, Arc):
        return math.dist(p.center, q.center) <= tol and abs(p.radius - q.radius) <= tol
    return True


def reflect(body: ConvexBody, p) -> ConvexBody:
    """Point reflection of ``body`` through ``p``."""
    p = Point(*p)
    return body.transformed(1.0, math.pi, (2 * p.x, 2 * p.y))


def symmetry_center(body: ConvexBody) -> Point | None:
    """Center of point symmetry, or None when the body is not centrally symmetric."""
    if isinstance(body, Disc):
        return body.center
    tol = EPS_SYM * body.scale
    if isinstance(body, ConvexPolygon):
        v = body.xy
        n = len(v)
        if n % 2:
            return None
        s = v + np.roll(v, -(n // 2), axis=0)
        center = s[0] / 2
        if np.abs(s - 2 * center).max() > 2 * tol:
            return None
        return Point(*center.tolist())
    u = Point(1.0, 0.0)
    center = (body.support_point(u) + body.support_point(-u)) * 0.5
    canon = _canonical_pieces(body, tol)
    mirrored = _canonical_pieces(reflect(body, center), tol)
    if len(canon) != len(mirrored):
        return None
    for shift in range(len(canon)):
        if all(_pieces_match(mirrored[i], canon[(i + shift) % len(canon)], 4 * tol) for i in range(len(canon))):
            return center
    return None


# -- JSON ---------------------------------------------------------------------------


def _pt(obj, what):
    if not (isinstance(obj, (list, tuple)) and len(obj) == 2 and all(isinstance(c, (int, float)) and not isinstance(c, bool) for c in obj)):
        raise SchemaError(f"{what} must be a pair of numbers, got {obj!r}")
    return (float(obj[0]), float(obj[1]))


def _num(obj, what):
    if not isinstance(obj, (int, float)) or isinstance(obj, bool):
        raise SchemaError(f"{what} must be a number, got {obj!r}")
    return float(obj)


def body_from_json(obj) -> ConvexBody:
    """Parse the JSON body schema.

    Raises :class:`SchemaError` for malformed documents and
    :class:`InvalidBody` when the described body breaks its invariants.
    """
    if not isinstance(obj, dict) or "type" not in obj:
        raise SchemaError("body must be an object with a 'type' field")
    kind = obj["type"]
    if kind == "polygon":
        verts = obj.get("vertices")
        if not isinstance(verts, list):
            raise SchemaError("polygon needs a 'vertices' list")
        return ConvexPolygon(tuple(_pt(v, "vertex") for v in verts))
    if kind == "disc":
        if "center" not in obj or "radius" not in obj:
            raise SchemaError("disc needs 'center' and 'radius'")
        return Disc(_pt(obj["center"], "center"), _num(obj["radius"], "radius"))
    if kind == "arcgon":
        els_in = obj.get("elements")
        if "start" not in obj or not isinstance(els_in, list):
            raise SchemaError("arcgon needs 'start' and an 'elements' list")
        els = []
        for e in els_in:
            if not isinstance(e, dict) or "to" not in e:
                raise SchemaError(f"bad arcgon element {e!r}")
            if e.get("kind") == "seg":
                els.append(SegTo(_pt(e["to"], "to")))
            elif e.get("kind") == "arc":
                if "center" not in e or "radius" not in e:
                    raise SchemaError("arc element needs 'center' and 'radius'")
                els.append(ArcTo(_pt(e["center"], "center"), _num(e["radius"], "radius"), _pt(e["to"], "to")))
            else:
                raise SchemaError(f"unknown element kind {e.get('kind')!r}")
        return ArcGon(_pt(obj["start"], "start"), tuple(els))
    raise SchemaError(f"unknown body type {kind!r}")


def body_to_json(body: ConvexBody) -> dict:
    return body.to_json()


def as_arcgon_json(body: ConvexBody) -> dict:
    """Any body written in the arc-gon schema (pieces of a partition use this)."""
    if isinstance(body, ArcGon):
        return body.to_json()
    if isinstance(body, Disc):
        c, r = body.center, body.radius
        return {
            "type": "arcgon",
            "start": list(polar(0.0, r, c)),
            "elements": [
                {"kind": "arc", "center": list(c), "radius": r, "to": list(polar(math.pi, r, c))},
                {"kind": "arc", "center": list(c), "radius": r, "to": list(polar(0.0, r, c))},
            ],
        }
    vs = body.vertices
    return {
        "type": "arcgon",
        "start": list(vs[0]),
        "elements": [{"kind": "seg", "to": list(vs[(i + 1) % len(vs)])} for i in range(len(vs))],
    }
