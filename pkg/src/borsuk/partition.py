"""Explicit partitions into alpha(C) convex pieces of smaller diameter.

Two pieces: cut along the certified chord.  Three pieces: cover the body by
a regular hexagon of width D(C) and cut the hexagon from its center to the
midpoints of three alternating sides.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .bodies import EPS_ON, ConvexBody, ConvexPolygon, clip_halfplane
from .decision import BorsukCertificate, borsuk_number
from .diameter import diameter
from .errors import ConstructionFailed, EmptyResult, InvalidCut
from .geometry import Chord, Point, orient, polar
from .oracle import OracleConfig, brute_diameter

SQRT3 = math.sqrt(3.0)
EPS_AREA = 1e-6
EPS_OVERLAP = 1e-9


@dataclass(frozen=True)
class RegularHexagon:
    center: Point
    width: float
    theta: float  # normal of side 0, reduced to [0, pi/3)

    @property
    def circumradius(self) -> float:
        return self.width / SQRT3

    def normal(self, m: int) -> Point:
        return polar(self.theta + m * math.pi / 3)

    @property
    def vertices(self) -> list[Point]:
        # vertex m joins side m and side m+1
        return [polar(self.theta + math.pi / 6 + m * math.pi / 3, self.circumradius, self.center) for m in range(6)]

    def side_midpoint(self, m: int) -> Point:
        return self.center + self.normal(m) * (self.width / 2)

    def polygon(self) -> ConvexPolygon:
        return ConvexPolygon(tuple(self.vertices))

    def to_json(self) -> dict:
        return {"center": list(self.center), "width": self.width, "theta": self.theta}


def _strip_offsets(body: ConvexBody, D: float, theta: float) -> list[float]:
    """Offsets c_m of the six lines <n_m, x> = c_m, strips widened to width D."""
    c = [0.0] * 6
    for m in range(3):
        u = polar(theta + m * math.pi / 3)
        hp, hm = body.support(u), body.support(-u)
        pad = (D - (hp + hm)) / 2
        c[m], c[m + 3] = hp + pad, hm + pad
    return c


def _hexagon_vertices(theta: float, c: list[float]) -> list[Point]:
    out = []
    for m in range(6):
        a1, a2 = theta + m * math.pi / 3, theta + (m + 1) * math.pi / 3
        det = math.sin(a2 - a1)
        x = (c[m] * math.sin(a2) - c[(m + 1) % 6] * math.sin(a1)) / det
        y = (c[(m + 1) % 6] * math.cos(a1) - c[m] * math.cos(a2)) / det
        out.append(Point(x, y))
    return out


def _sides(verts: list[Point]) -> list[float]:
    # side m lies between vertex m-1 and vertex m
    return [math.dist(verts[m - 1], verts[m]) for m in range(6)]


def equiangular_hexagon(body: ConvexBody, D: float, theta: float) -> tuple[list[Point], list[float]]:
    verts = _hexagon_vertices(theta, _strip_offsets(body, D, theta))
    return verts, _sides(verts)


def pal_hexagon(body: ConvexBody, D: float | None = None, grid: int = 720, samples: int = 4096) -> RegularHexagon:
    """Regular hexagon of width D(C) containing the body.

    For each angle the three supporting strips are widened symmetrically to
    width D; the resulting equiangular hexagon is regular exactly when two
    adjacent sides agree, and that side difference changes sign between 0
    and pi/3.  A sign scan plus bisection finds the angle; the result is then
    checked for containment and regularity.
    """
    if D is None:
        D = diameter(body)[0]

    def g(theta):
        s = equiangular_hexagon(body, D, theta)[1]
        return s[0] - s[1]

    thetas = np.linspace(0.0, math.pi / 3, grid)
    vals = [g(t) for t in thetas]
    root = None
    for i in range(grid - 1):
        if vals[i] == 0.0:
            root = thetas[i]
            break
        if vals[i] * vals[i + 1] < 0:
            lo, hi, glo = thetas[i], thetas[i + 1], vals[i]
            while hi - lo > 1e-12:
                mid = 0.5 * (lo + hi)
                gm = g(mid)
                if gm == 0.0:
                    lo = hi = mid
                    break
                if (gm < 0) == (glo < 0):
                    lo, glo = mid, gm
                else:
                    hi = mid
            root = 0.5 * (lo + hi)
            break
    if root is None:
        root = float(thetas[int(np.argmin(np.abs(vals)))])

    verts, sides = equiangular_hexagon(body, D, root)
    spread = max(sides) - min(sides)
    center = Point(sum(v.x for v in verts) / 6, sum(v.y for v in verts) / 6)
    hexagon = RegularHexagon(center, D, float(root) % (math.pi / 3))
    if spread > 1e-6 * D:
        raise ConstructionFailed(f"hexagon side spread {spread:.3g} exceeds 1e-6 * D")
    bad = hexagon_containment_violation(hexagon, body, samples)
    if bad > EPS_ON * D:
        raise ConstructionFailed(f"body sticks out of the hexagon by {bad:.3g}")
    return hexagon


def hexagon_containment_violation(hexagon: RegularHexagon, body: ConvexBody, samples: int = 4096) -> float:
    """Largest distance by which a boundary sample leaves the hexagon (<= 0 when inside)."""
    ts = np.concatenate([body.sample_params(samples), [body.junction_param(k) for k in range(len(body.vertex_like()))]])
    xy = body.points_at(ts) - np.asarray(hexagon.center)
    normals = np.array([hexagon.normal(m) for m in range(6)])
    return float((xy @ normals.T).max() - hexagon.width / 2)


def hexagon_cuts(hexagon: RegularHexagon) -> list[list[tuple[Point, Point]]]:
    """Half-planes (point, outward normal) of the three 120-degree wedges.

    Cut rays run from the center to the midpoints of sides 0, 2 and 4.
    """
    O = hexagon.center
    out = []
    for j in range(3):
        d1 = hexagon.normal(2 * j)
        d2 = hexagon.normal(2 * j + 2)
        out.append([(O, Point(d1.y, -d1.x)), (O, Point(-d2.y, d2.x))])
    return out


def hexagon_three_pieces(hexagon: RegularHexagon) -> list[ConvexPolygon]:
    """The three congruent pentagons cut out by the center-to-midpoint segments."""
    hexpoly = hexagon.polygon()
    pieces = []
    for cuts in hexagon_cuts(hexagon):
        piece = hexpoly
        for p, n in cuts:
            piece = clip_halfplane(piece, p, n)
        pieces.append(piece)
    return pieces


@dataclass(frozen=True, eq=False)
class Partition:
    parent: ConvexBody
    pieces: tuple
    piece_diameters: tuple[float, ...]
    construction: str  # "chord_cut" or "pal_hexagon"
    chord: Chord | None = None
    hexagon: RegularHexagon | None = None
    constraints: tuple = field(default=(), repr=False)

    def to_json(self) -> dict:
        from .bodies import as_arcgon_json

        out = {
            "construction": self.construction,
            "pieces": [as_arcgon_json(p) for p in self.pieces],
            "piece_diameters": list(self.piece_diameters),
        }
        if self.chord is not None:
            out["chord"] = self.chord.to_json()
        if self.hexagon is not None:
            out["hexagon"] = self.hexagon.to_json()
        return out


def two_partition(body: ConvexBody, chord: Chord, eps_rel: float = 1e-9) -> Partition:
    body.param_of(chord.a)
    body.param_of(chord.b)
    D = diameter(body)[0]
    normal = (chord.b - chord.a).perp()
    sides = [(chord.a, -normal), (chord.a, normal)]
    pieces = tuple(clip_halfplane(body, p, n) for p, n in sides)
    diams = tuple(diameter(p)[0] for p in pieces)
    for d in diams:
        if d >= D * (1 - eps_rel):
            raise InvalidCut(f"a piece still has diameter {d} (D = {D})")
    return Partition(body, pieces, diams, "chord_cut", chord=chord, constraints=tuple([s] for s in sides))


def three_partition(body: ConvexBody, eps_rel: float = 1e-9) -> Partition:
    D = diameter(body)[0]
    hexagon = pal_hexagon(body, D)
    pieces, cons = [], []
    for cuts in hexagon_cuts(hexagon):
        piece = body
        try:
            for p, n in cuts:
                piece = clip_halfplane(piece, p, n)
        except EmptyResult:
            continue
        pieces.append(piece)
        cons.append(cuts)
    diams = tuple(diameter(p)[0] for p in pieces)
    for d in diams:
        if d >= D * (1 - eps_rel):
            raise InvalidCut(f"a hexagon piece still has diameter {d} (D = {D})")
    return Partition(body, tuple(pieces), diams, "pal_hexagon", hexagon=hexagon, constraints=tuple(cons))


def build_partition(body: ConvexBody, certificate: BorsukCertificate | None = None) -> Partition:
    certificate = certificate or borsuk_number(body)
    if certificate.alpha == 2:
        return two_partition(body, certificate.chord)
    return three_partition(body)


# -- verification -------------------------------------------------------------------


def is_convex(body: ConvexBody, tol: float = 1e-9) -> bool:
    """Every consecutive outline triple turns left (within tol, relative)."""
    pts = body.outline(32)
    s = body.scale
    n = len(pts)
    return n >= 3 and all(orient(pts[i - 1], pts[i], pts[(i + 1) % n]) >= -tol * s * s for i in range(n))


def _clip_convex(subject: list, clipper: list) -> list:
    out = subject
    for i in range(len(clipper)):
        a, b = clipper[i], clipper[(i + 1) % len(clipper)]
        inp, out = out, []
        if not inp:
            break
        for j in range(len(inp)):
            p, q = inp[j], inp[(j + 1) % len(inp)]
            dp, dq = orient(a, b, p), orient(a, b, q)
            if dp >= 0:
                out.append(p)
            if (dp >= 0) != (dq >= 0):
                out.append(p + (q - p) * (dp / (dp - dq)))
    return out


def _poly_area(pts: list) -> float:
    return 0.5 * sum(pts[i].cross(pts[(i + 1) % len(pts)]) for i in range(len(pts))) if len(pts) >= 3 else 0.0


def overlap_area(p: ConvexBody, q: ConvexBody, per_arc: int = 64) -> float:
    """Intersection area of two convex bodies via their inscribed outlines."""
    return max(0.0, _poly_area(_clip_convex(p.outline(per_arc), q.outline(per_arc))))


@dataclass(frozen=True)
class VerificationReport:
    diameter: float
    sampled_diameters: tuple[float, ...]
    exact_diameters: tuple[float, ...]
    max_piece_diameter: float
    margin: float
    convex: tuple[bool, ...]
    contained: tuple[bool, ...]
    area_deficit: float
    max_overlap: float
    passed: bool

    def to_json(self) -> dict:
        return {
            "diameter": self.diameter,
            "sampled_diameters": list(self.sampled_diameters),
            "exact_diameters": list(self.exact_diameters),
            "max_piece_diameter": self.max_piece_diameter,
            "margin": self.margin,
            "relative_margin": self.margin / self.diameter,
            "convex": list(self.convex),
            "contained": list(self.contained),
            "area_deficit": self.area_deficit,
            "max_overlap": self.max_overlap,
            "passed": self.passed,
        }


def _contained(piece: ConvexBody, body: ConvexBody, D: float, directions: int = 256) -> bool:
    for i in range(directions):
        u = polar(2 * math.pi * i / directions)
        if piece.support(u) > body.support(u) + EPS_ON * D:
            return False
    return True


def verify_partition(body: ConvexBody, pieces, samples: int = 10_000, seed: int = 0) -> VerificationReport:
    """Check a partition from scratch: smaller diameters, convexity, tiling.

    ``pieces`` is a :class:`Partition` or any sequence of bodies.
    """
    if samples < 100:
        raise ValueError("samples must be at least 100")
    if isinstance(pieces, Partition):
        pieces = pieces.pieces
    pieces = list(pieces)
    D = diameter(body)[0]
    cfg = OracleConfig(boundary_samples=samples, seed=seed)
    sampled = tuple(brute_diameter(p, cfg)[0] for p in pieces)
    exact = tuple(diameter(p)[0] for p in pieces)
    top = max(max(sampled, default=0.0), max(exact, default=0.0))
    margin = D - top
    convex = tuple(is_convex(p) for p in pieces)
    contained = tuple(_contained(p, body, D) for p in pieces)
    deficit = abs(sum(p.area for p in pieces) - body.area) / body.area
    overlap = 0.0
    for i in range(len(pieces)):
        for j in range(i + 1, len(pieces)):
            overlap = max(overlap, overlap_area(pieces[i], pieces[j]) / body.area)
    passed = bool(
        pieces
        and margin > 1e-9 * D
        and all(convex)
        and all(contained)
        and deficit <= EPS_AREA
        and overlap <= EPS_OVERLAP
    )
    return VerificationReport(D, sampled, exact, top, margin, convex, contained, deficit, overlap, passed)
