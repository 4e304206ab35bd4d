"""Planar primitives: points, chords, and the two kinds of boundary pieces.

Every body in :mod:`borsuk.bodies` exposes its boundary as a closed,
counterclockwise sequence of :class:`Segment` and :class:`Arc` pieces.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable, NamedTuple

from .errors import DegenerateInput

TAU = 2.0 * math.pi


class Point(NamedTuple):
    x: float
    y: float

    # NamedTuple arithmetic would concatenate; points behave as vectors instead.
    def __add__(self, other):
        return Point(self.x + other[0], self.y + other[1])

    def __sub__(self, other):
        return Point(self.x - other[0], self.y - other[1])

    def __mul__(self, s):
        return Point(self.x * s, self.y * s)

    __rmul__ = __mul__

    def __truediv__(self, s):
        return Point(self.x / s, self.y / s)

    def __neg__(self):
        return Point(-self.x, -self.y)

    def dot(self, other) -> float:
        return self.x * other[0] + self.y * other[1]

    def cross(self, other) -> float:
        return self.x * other[1] - self.y * other[0]

    def norm(self) -> float:
        return math.hypot(self.x, self.y)

    def unit(self) -> "Point":
        n = math.hypot(self.x, self.y)
        return Point(self.x / n, self.y / n)

    def perp(self) -> "Point":
        """Rotate by +90 degrees."""
        return Point(-self.y, self.x)

    def angle(self) -> float:
        return math.atan2(self.y, self.x) % TAU


def as_point(p) -> Point:
    x, y = float(p[0]), float(p[1])
    if not (math.isfinite(x) and math.isfinite(y)):
        raise DegenerateInput(f"non-finite coordinate {p!r}")
    return Point(x, y)


def polar(angle: float, radius: float = 1.0, center=(0.0, 0.0)) -> Point:
    return Point(center[0] + radius * math.cos(angle), center[1] + radius * math.sin(angle))


def dist(p, q) -> float:
    return math.dist(p, q)


def orient(a, b, c) -> float:
    """Twice the signed area of triangle abc (positive for a left turn)."""
    return (b[0] - a[0]) * (c[1] - a[1]) - (b[1] - a[1]) * (c[0] - a[0])


def ccw_offset(angle: float, start: float) -> float:
    """Counterclockwise angular distance from ``start`` to ``angle`` in [0, 2pi)."""
    return (angle - start) % TAU


@dataclass(frozen=True)
class Chord:
    """A straight segment between two distinct points, usually on a boundary."""

    a: Point
    b: Point

    def __post_init__(self):
        object.__setattr__(self, "a", as_point(self.a))
        object.__setattr__(self, "b", as_point(self.b))
        if self.a == self.b:
            raise DegenerateInput("chord endpoints coincide")

    @property
    def length(self) -> float:
        return math.dist(self.a, self.b)

    @property
    def midpoint(self) -> Point:
        return (self.a + self.b) * 0.5

    @property
    def direction(self) -> Point:
        return (self.b - self.a).unit()

    def to_json(self) -> list:
        return [list(self.a), list(self.b)]


def segments_cross(p: Chord, q: Chord, tol: float = 0.0) -> bool:
    """True when the two chords meet at a point interior to both."""
    d1 = orient(p.a, p.b, q.a)
    d2 = orient(p.a, p.b, q.b)
    d3 = orient(q.a, q.b, p.a)
    d4 = orient(q.a, q.b, p.b)
    return ((d1 > tol and d2 < -tol) or (d1 < -tol and d2 > tol)) and (
        (d3 > tol and d4 < -tol) or (d3 < -tol and d4 > tol)
    )


class Segment(NamedTuple):
    a: Point
    b: Point

    @property
    def length(self) -> float:
        return math.dist(self.a, self.b)

    def point_at(self, s: float) -> Point:
        """Point at arc length ``s`` from ``a``."""
        L = self.length
        if L == 0.0:
            return self.a
        f = min(max(s / L, 0.0), 1.0)
        return Point(self.a.x + f * (self.b.x - self.a.x), self.a.y + f * (self.b.y - self.a.y))

    def project(self, p) -> tuple[float, float]:
        """(distance from p, arc length of the closest point)."""
        d = self.b - self.a
        L2 = d.dot(d)
        f = 0.0 if L2 == 0.0 else min(max((Point(*p) - self.a).dot(d) / L2, 0.0), 1.0)
        q = self.a + d * f
        return math.dist(p, q), f * math.sqrt(L2)

    def tangent_in(self) -> float:
        return (self.b - self.a).angle()

    tangent_out = tangent_in

    def transformed(self, f) -> "Segment":
        return Segment(f(self.a), f(self.b))

    def clip(self, normal: Point, offset: float, tol: float) -> list:
        """Parts of the segment inside {x : normal.x <= offset}."""
        da = normal.dot(self.a) - offset
        db = normal.dot(self.b) - offset
        if da <= tol and db <= tol:
            return [self]
        if da > -tol and db > -tol:
            return []
        x = self.a + (self.b - self.a) * (da / (da - db))
        part = Segment(self.a, x) if da < 0 else Segment(x, self.b)
        return [part] if part.length > tol else []


class Arc(NamedTuple):
    """Counterclockwise circular arc; ``start`` is an angle, ``sweep`` in (0, 2pi]."""

    center: Point
    radius: float
    start: float
    sweep: float

    @classmethod
    def through(cls, a, center, b, full_if_closed: bool = False) -> "Arc":
        """Counterclockwise arc from ``a`` to ``b`` about ``center``."""
        center = Point(*center)
        r = math.dist(a, center)
        t0 = (Point(*a) - center).angle()
        sweep = ccw_offset((Point(*b) - center).angle(), t0)
        if sweep == 0.0 and full_if_closed:
            sweep = TAU
        return cls(center, r, t0, sweep)

    @property
    def end(self) -> float:
        return self.start + self.sweep

    @property
    def a(self) -> Point:
        return polar(self.start, self.radius, self.center)

    @property
    def b(self) -> Point:
        return polar(self.end, self.radius, self.center)

    @property
    def length(self) -> float:
        return self.radius * self.sweep

    def contains_angle(self, angle: float, tol: float = 0.0) -> bool:
        off = ccw_offset(angle, self.start)
        return off <= self.sweep + tol or off >= TAU - tol

    def interior_angle(self, angle: float, tol: float) -> bool:
        off = ccw_offset(angle, self.start)
        return tol < off < self.sweep - tol

    def point_at_angle(self, angle: float) -> Point:
        return polar(angle, self.radius, self.center)

    def point_at(self, s: float) -> Point:
        return polar(self.start + min(max(s, 0.0), self.length) / self.radius, self.radius, self.center)

    def offset_of_angle(self, angle: float) -> float:
        """Arc length from the start of the arc to the point at ``angle``."""
        off = ccw_offset(angle, self.start)
        if off > self.sweep:
            # outside the arc: snap to the nearer end
            off = self.sweep if off - self.sweep < TAU - off else 0.0
        return off * self.radius

    def project(self, p) -> tuple[float, float]:
        v = Point(*p) - self.center
        if v.x == 0.0 and v.y == 0.0:
            return self.radius, 0.0
        ang = v.angle()
        if self.contains_angle(ang):
            return abs(v.norm() - self.radius), self.offset_of_angle(ang)
        da, db = math.dist(p, self.a), math.dist(p, self.b)
        return (da, 0.0) if da <= db else (db, self.length)

    def tangent_in(self) -> float:
        return (self.start + math.pi / 2) % TAU

    def tangent_out(self) -> float:
        return (self.end + math.pi / 2) % TAU

    def transformed(self, f, rotation: float, scale: float) -> "Arc":
        return Arc(f(self.center), self.radius * scale, (self.start + rotation) % TAU, self.sweep)

    def sub(self, off: float, sweep: float) -> "Arc":
        return Arc(self.center, self.radius, (self.start + off) % TAU, sweep)

    def clip(self, normal: Point, offset: float, tol: float) -> list:
        """Sub-arcs inside {x : normal.x <= offset}, in arc order."""
        k = (offset - normal.dot(self.center)) / self.radius
        if k >= 1.0 - 1e-15:
            return [self]
        if k <= -1.0:
            return []
        alpha = math.acos(k)
        inside_start = normal.angle() + alpha
        inside_len = TAU - 2.0 * alpha
        o = ccw_offset(inside_start, self.start)
        parts = []
        for lo in (o - TAU, o):
            s0, s1 = max(lo, 0.0), min(lo + inside_len, self.sweep)
            if s1 - s0 > 0.0:
                parts.append((s0, s1))
        parts.sort()
        # merge the pieces of the inside interval that meet across the wrap
        merged: list[list[float]] = []
        for s0, s1 in parts:
            if merged and s0 <= merged[-1][1] + 1e-15:
                merged[-1][1] = max(merged[-1][1], s1)
            else:
                merged.append([s0, s1])
        out = []
        for s0, s1 in merged:
            if (s1 - s0) * self.radius > tol:
                out.append(self if (s0 == 0.0 and s1 == self.sweep) else self.sub(s0, s1 - s0))
        return out


Piece = Segment | Arc


def hull_polygon(points: Iterable) -> list[Point]:
    """Counterclockwise strictly convex hull (collinear boundary points dropped).

    Returns the hull vertices starting from the lowest-leftmost point.
    """
    pts = sorted(set(as_point(p) for p in points))
    if len(pts) < 3:
        raise DegenerateInput("need at least 3 distinct points")

    def half(seq):
        out: list[Point] = []
        for p in seq:
            while len(out) >= 2 and orient(out[-2], out[-1], p) <= 0:
                out.pop()
            out.append(p)
        return out

    lower = half(pts)
    upper = half(reversed(pts))
    hull = lower[:-1] + upper[:-1]
    if len(hull) < 3:
        raise DegenerateInput("all points are collinear")
    return hull
