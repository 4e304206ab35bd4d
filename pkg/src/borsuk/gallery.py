"""Generators for the bodies used throughout the tests and the CLI."""
from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field

import numpy as np

from .bodies import ArcGon, ArcTo, ConvexBody, ConvexPolygon, Disc
from .errors import ConstructionFailed, DegenerateInput, InvalidParameters
from .geometry import Point, hull_polygon, polar


@dataclass(frozen=True, eq=False)
class GalleryShape:
    name: str
    body: ConvexBody
    params: dict = field(default_factory=dict)
    expected_alpha: int | None = None


def regular_polygon(n: int, circumradius: float = 1.0, center=(0.0, 0.0), phase: float = 0.0) -> ConvexPolygon:
    if n < 3 or circumradius <= 0:
        raise DegenerateInput("regular polygon needs n >= 3 and a positive radius")
    return ConvexPolygon(tuple(polar(phase + 2 * math.pi * k / n, circumradius, center) for k in range(n)))


def rectangle(w: float, h: float, corner=(0.0, 0.0)) -> ConvexPolygon:
    x, y = corner
    return ConvexPolygon(((x, y), (x + w, y), (x + w, y + h), (x, y + h)))


def unit_square() -> ConvexPolygon:
    return rectangle(1.0, 1.0)


def reuleaux_polygon(n: int, width: float = 1.0, center=(0.0, 0.0), phase: float = math.pi / 2) -> ArcGon:
    """Reuleaux n-gon: arcs of radius ``width`` about the opposite vertices."""
    if n < 3 or n % 2 == 0:
        raise DegenerateInput("Reuleaux polygons need an odd n >= 3")
    if width <= 0:
        raise DegenerateInput("width must be positive")
    R = width / (2 * math.sin(math.pi * (n - 1) / (2 * n)))
    v = [polar(phase + 2 * math.pi * k / n, R, center) for k in range(n)]
    half = (n + 1) // 2
    els = tuple(ArcTo(v[(k + half) % n], width, v[(k + 1) % n]) for k in range(n))
    body = ArcGon(v[0], els)
    for i in range(360):
        u = polar(math.pi * i / 360)
        if abs(body.width(u) - width) > 1e-9 * width:
            raise ConstructionFailed(f"Reuleaux {n}-gon is not of constant width")
    return body


def _circle_meet(p: Point, q: Point, r: float) -> tuple[Point, Point]:
    mid = (p + q) * 0.5
    L = math.dist(p, q)
    if L == 0 or L >= 2 * r:
        raise InvalidParameters("circles do not meet in two points")
    h = math.sqrt(r * r - L * L / 4)
    n = (q - p).perp() / L
    return mid + n * h, mid - n * h


def example_pentagon(r: float = 4.0, beta: float = 1 / 3, gamma: float = 2 / 3) -> ConvexPolygon:
    """Hull of o, a, b, c, d from the two-circle lens construction.

    o = (0, 0) and a = (r, 0) center two circles of radius r.  ``b`` sits on
    the upper lens arc of the circle about a, a fraction ``beta`` of the way
    from o to the lens tip; ``c`` on the upper lens arc of the circle about o,
    a fraction ``gamma`` of the way from a to the tip.  ``d`` is the meeting
    point, inside the lens, of the radius-r circles about b and c.
    """
    if r <= 0:
        raise InvalidParameters("r must be positive")
    if not (0 < beta < 1 and 0 < gamma < 1):
        raise InvalidParameters("beta and gamma must lie strictly inside (0, 1)")
    o, a = Point(0.0, 0.0), Point(r, 0.0)
    b = polar(math.pi - beta * math.pi / 3, r, a)
    c = polar(gamma * math.pi / 3, r, o)
    if math.dist(b, c) < 1e-9 * r:
        raise InvalidParameters("b and c coincide at the lens tip")
    lens = [x for x in _circle_meet(b, c, r) if math.dist(x, o) <= r * (1 + 1e-12) and math.dist(x, a) <= r * (1 + 1e-12)]
    if len(lens) != 1:
        raise InvalidParameters("no unique intersection point inside the lens")
    d = lens[0]
    pts = {"o": o, "a": a, "b": b, "c": c, "d": d}
    diam = {frozenset(p) for p in ("oa", "ab", "bd", "cd", "oc")}
    for x, y in itertools.combinations(pts, 2):
        L = math.dist(pts[x], pts[y])
        if frozenset((x, y)) in diam:
            if abs(L - r) > 1e-9 * r:
                raise InvalidParameters(f"{x}{y} has length {L}, expected {r}")
        elif L >= r * (1 - 1e-6):
            raise InvalidParameters(f"{x}{y} is not strictly shorter than r")
    hull = hull_polygon(pts.values())
    if len(hull) != 5:
        raise InvalidParameters("hull of o, a, b, c, d is not a pentagon")
    return ConvexPolygon(tuple(hull))


def random_convex_polygon(n: int, seed: int = 0, size: float = 1.0) -> ConvexPolygon:
    """Uniformly random convex polygon with exactly n vertices (Valtr's method).

    Random x and y increments are split into two monotone chains each, paired
    up, sorted by angle and accumulated, so the outline is convex by
    construction.
    """
    if n < 3:
        raise DegenerateInput("n must be at least 3")
    ss = np.random.SeedSequence(seed)
    for child in ss.spawn(64):
        rng = np.random.default_rng(child)
        dx = _chain_steps(np.sort(rng.random(n)), rng)
        dy = _chain_steps(np.sort(rng.random(n)), rng)
        rng.shuffle(dy)
        steps = np.column_stack([dx, dy])
        steps = steps[np.argsort(np.arctan2(steps[:, 1], steps[:, 0]), kind="stable")]
        pts = np.cumsum(steps, axis=0)
        pts -= pts.mean(axis=0)
        pts *= size
        try:
            poly = ConvexPolygon(tuple(map(tuple, pts.tolist())))
        except DegenerateInput:
            continue
        if len(poly.vertices) == n:
            return poly
    raise ConstructionFailed("could not draw a polygon with the requested vertex count")


def _chain_steps(xs: np.ndarray, rng: np.random.Generator) -> np.ndarray:
    lo, hi = xs[0], xs[-1]
    out = []
    last1 = last2 = lo
    for x in xs[1:-1]:
        if rng.random() < 0.5:
            out.append(x - last1)
            last1 = x
        else:
            out.append(last2 - x)
            last2 = x
    out.append(hi - last1)
    out.append(last2 - hi)
    return np.array(out)


def random_symmetric_polygon(n: int, seed: int = 0, size: float = 1.0) -> ConvexPolygon:
    """Random centrally symmetric convex polygon with n (even) vertices."""
    if n < 4 or n % 2:
        raise DegenerateInput("symmetric polygons need an even n >= 4")
    rng = np.random.default_rng(seed)
    m = n // 2
    while True:
        ang = np.sort(rng.random(m) * math.pi)
        if m == 1 or np.diff(ang).min() > 1e-6:
            break
    lengths = 0.2 + rng.random(m)
    steps = np.column_stack([np.cos(ang), np.sin(ang)]) * lengths[:, None]
    half = np.vstack([[0.0, 0.0], np.cumsum(steps, axis=0)])
    center = half[-1] / 2
    shift = rng.normal(size=2)
    half = (half - center) * size
    pts = np.vstack([half[:m], -half[:m]]) + shift
    return ConvexPolygon(tuple(map(tuple, pts.tolist())))


def gallery() -> list[GalleryShape]:
    """Every named shape, with the Borsuk number where it is known in closed form."""
    shapes = [
        GalleryShape("square", unit_square(), {"side": 1.0}, 2),
        GalleryShape("rectangle_4x1", rectangle(4.0, 1.0), {"w": 4.0, "h": 1.0}, 2),
        GalleryShape("disc", Disc((0.0, 0.0), 0.5), {"radius": 0.5}, 3),
    ]
    for n in range(3, 11):
        shapes.append(GalleryShape(f"regular_{n}", regular_polygon(n, 1.0), {"n": n, "circumradius": 1.0}, 3 if n % 2 else 2))
    for n in (3, 5, 7):
        shapes.append(GalleryShape(f"reuleaux_{n}", reuleaux_polygon(n, 1.0), {"n": n, "width": 1.0}, 3))
    shapes.append(GalleryShape("example_pentagon", example_pentagon(4.0), {"r": 4.0, "beta": 1 / 3, "gamma": 2 / 3}, 3))
    return shapes


SHAPES = {
    "square": lambda **kw: rectangle(kw.get("side", 1.0), kw.get("side", 1.0)),
    "rectangle": lambda **kw: rectangle(kw.get("w", 4.0), kw.get("h", 1.0)),
    "disc": lambda **kw: Disc((0.0, 0.0), kw.get("radius", 0.5)),
    "regular": lambda **kw: regular_polygon(int(kw.get("n", 5)), kw.get("radius", 1.0)),
    "reuleaux": lambda **kw: reuleaux_polygon(int(kw.get("n", 3)), kw.get("width", 1.0)),
    "pentagon": lambda **kw: example_pentagon(kw.get("r", 4.0), kw.get("beta", 1 / 3), kw.get("gamma", 2 / 3)),
    "random": lambda **kw: random_convex_polygon(int(kw.get("n", 8)), int(kw.get("seed", 42))),
    "symmetric": lambda **kw: random_symmetric_polygon(int(kw.get("n", 10)), int(kw.get("seed", 42))),
}
