"""Diameter, diameter segments and the diameter graph of a convex body.

Vertex classes are the maximal connected pieces of the endpoint set V on the
boundary, split at junction points: an isolated point, or an open boundary arc
whose endpoints sit in their own point classes.  Two classes whose closures
touch are separated by a zero-length gap; a 2-colouring may only change colour
across gaps of positive length.
"""
from __future__ import annotations

import bisect
import itertools
import math
import random
from collections import deque
from dataclasses import dataclass, field, replace

from .bodies import ArcGon, ConvexBody, ConvexPolygon, Disc
from .geometry import TAU, Arc, Chord, Point, ccw_offset

EPS_REL = 1e-9
# tolerance on boundary parameters (fraction of the perimeter)
TOL_T = 1e-9


@dataclass(frozen=True)
class PointArcFamily:
    """Every point of an arc lies at distance D from ``point`` (its center)."""

    point: Point
    t_point: float
    arc: Arc
    t_start: float
    t_len: float


@dataclass(frozen=True)
class AntipodalFamily:
    """Two concentric sub-arcs whose radii add up to D; x pairs with its antipode."""

    center: Point
    first: Arc
    second: Arc
    first_t: tuple[float, float]
    second_t: tuple[float, float]


@dataclass(frozen=True)
class PointPair:
    chord: Chord
    ta: float
    tb: float


def _circ_intersect(s1: float, w1: float, s2: float, w2: float) -> list[tuple[float, float]]:
    """Intersection of two counterclockwise angular intervals as (start, length)."""
    o = ccw_offset(s2, s1)
    out = []
    for lo in (o - TAU, o):
        a, b = max(lo, 0.0), min(lo + w2, w1)
        if b > a:
            out.append(((s1 + a) % TAU, b - a))
    return out


def antipodal_pairs(vertices) -> set[tuple[int, int]]:
    """Candidate antipodal vertex pairs of a convex polygon (rotating calipers).

    Generous on purpose: the neighbours of every caliper contact are included
    so near-parallel edges never lose a pair to rounding.
    """
    v = vertices
    n = len(v)

    def height(i, i1, k):
        ax, ay = v[i]
        return (v[i1][0] - ax) * (v[k][1] - ay) - (v[i1][1] - ay) * (v[k][0] - ax)

    out: set[tuple[int, int]] = set()
    k = 1
    for i in range(n):
        i1 = (i + 1) % n
        if i == 0:
            k = i1
        steps = 0
        while steps < n and height(i, i1, (k + 1) % n) > height(i, i1, k):
            k = (k + 1) % n
            steps += 1
        for kk in (k - 1, k, k + 1):
            kk %= n
            for a in (i, i1):
                if a != kk:
                    out.add((min(a, kk), max(a, kk)))
    return out


def _polygon_relations(body: ConvexPolygon, eps_rel: float):
    v = body.vertices
    cands = antipodal_pairs(v)
    dists = {pair: math.dist(v[pair[0]], v[pair[1]]) for pair in cands}
    best = max(dists, key=lambda p: (dists[p], -p[0], -p[1]))
    D = dists[best]
    P = body.perimeter
    rels = [
        PointPair(Chord(v[i], v[j]), body.offsets[i] / P, body.offsets[j] / P)
        for (i, j), d in sorted(dists.items())
        if d >= (1.0 - eps_rel) * D
    ]
    return D, Chord(v[best[0]], v[best[1]]), rels


def _disc_relations(body: Disc):
    c, r = body.center, body.radius
    full = Arc(c, r, 0.0, TAU)
    fam = AntipodalFamily(c, full, full, (0.0, 1.0), (0.0, 1.0))
    return 2 * r, Chord(Point(c.x + r, c.y), Point(c.x - r, c.y)), [fam]


def _arcgon_relations(body: ArcGon, eps_rel: float):
    pieces = body.pieces
    P = body.perimeter
    offs = body.offsets
    J = body.junctions
    tJ = [offs[k] / P for k in range(len(J))]
    ctol = 1e-9 * body.scale
    atol = 1e-12

    def t_on(k: int, angle: float) -> float:
        arc = pieces[k]
        return ((offs[k] + arc.radius * ccw_offset(angle, arc.start)) / P) % 1.0

    arcs = [(k, p) for k, p in enumerate(pieces) if isinstance(p, Arc)]
    cands = []  # (distance, relation)

    for i in range(len(J)):
        for j in range(i + 1, len(J)):
            if J[i] != J[j]:
                cands.append((math.dist(J[i], J[j]), PointPair(Chord(J[i], J[j]), tJ[i], tJ[j])))

    for i, p in enumerate(J):
        for k, arc in arcs:
            to_c = arc.center - p
            if to_c.norm() <= ctol:
                fam = PointArcFamily(p, tJ[i], arc, offs[k] / P, arc.length / P)
                cands.append((arc.radius, fam))
                continue
            u = to_c.unit()
            ang = u.angle()
            if arc.interior_angle(ang, atol):
                x = arc.point_at_angle(ang)
                cands.append((math.dist(p, x), PointPair(Chord(p, x), tJ[i], t_on(k, ang))))

    for ai in range(len(arcs)):
        k1, a1 = arcs[ai]
        for aj in range(ai + 1, len(arcs)):
            k2, a2 = arcs[aj]
            if math.dist(a1.center, a2.center) <= ctol:
                for s, w in _circ_intersect(a1.start, a1.sweep, (a2.start + math.pi) % TAU, a2.sweep):
                    if w * max(a1.radius, a2.radius) <= ctol:
                        continue
                    f1 = Arc(a1.center, a1.radius, s, w)
                    f2 = Arc(a2.center, a2.radius, (s + math.pi) % TAU, w)
                    fam = AntipodalFamily(a1.center, f1, f2, (t_on(k1, s), w * a1.radius / P), (t_on(k2, f2.start), w * a2.radius / P))
                    cands.append((a1.radius + a2.radius, fam))
                continue
            u = (a1.center - a2.center).unit()
            th1, th2 = u.angle(), (-u).angle()
            if a1.interior_angle(th1, atol) and a2.interior_angle(th2, atol):
                x, y = a1.point_at_angle(th1), a2.point_at_angle(th2)
                cands.append((math.dist(x, y), PointPair(Chord(x, y), t_on(k1, th1), t_on(k2, th2))))

    D = max(d for d, _ in cands)
    rels = [rel for d, rel in cands if d >= (1.0 - eps_rel) * D]
    top = max(cands, key=lambda c: c[0])[1]
    return D, _witness_chord(top), rels


def _witness_chord(rel) -> Chord:
    if isinstance(rel, PointPair):
        return rel.chord
    if isinstance(rel, PointArcFamily):
        arc = rel.arc
        return Chord(rel.point, arc.point_at_angle(arc.start + arc.sweep / 2))
    f = rel.first
    mid = f.start + f.sweep / 2
    return Chord(f.point_at_angle(mid), rel.second.point_at_angle(mid + math.pi))


def _relations(body: ConvexBody, eps_rel: float = EPS_REL):
    if isinstance(body, ConvexPolygon):
        return _polygon_relations(body, eps_rel)
    if isinstance(body, Disc):
        return _disc_relations(body)
    return _arcgon_relations(body, eps_rel)


def diameter(body: ConvexBody) -> tuple[float, Chord]:
    """D(C) and one chord realizing it."""
    D, witness, _ = _relations(body, 0.0)
    return D, witness


def diameter_pairs(body: ConvexBody, eps_rel: float = EPS_REL) -> list:
    """All diameter segments: finite chords plus symbolic arc families."""
    if not 0.0 <= eps_rel <= 1e-3:
        raise ValueError("eps_rel must lie in [0, 1e-3]")
    _, _, rels = _relations(body, eps_rel)
    return [r.chord if isinstance(r, PointPair) else r for r in rels]


# -- graph --------------------------------------------------------------------------


@dataclass(frozen=True)
class VertexClass:
    kind: str  # "point" or "arc"
    t_start: float
    t_len: float = 0.0
    point: Point | None = None
    closed: bool = True
    full: bool = False

    @property
    def t_end(self) -> float:
        return (self.t_start + self.t_len) % 1.0

    @property
    def t_mid(self) -> float:
        return (self.t_start + self.t_len / 2) % 1.0

    def to_json(self) -> dict:
        d = {"kind": self.kind, "t": [self.t_start, self.t_start + self.t_len]}
        if self.point is not None:
            d["point"] = list(self.point)
        if self.kind == "arc":
            d["closed"] = self.closed
        if self.full:
            d["full"] = True
        return d


@dataclass(frozen=True)
class GraphEdge:
    u: int
    v: int
    kind: str  # "chord", "point_arc" or "antipodal"
    chord: Chord | None = None


@dataclass(frozen=True)
class SeparatedColoring:
    """Proper 2-colouring whose colours fill two disjoint closed boundary arcs.

    ``beta1`` is the gap arc just before the red arc, ``beta2`` the one just
    after it; all arcs are ``(t_start, t_len)`` in boundary parameter.
    """

    red: tuple[float, float]
    blue: tuple[float, float]
    beta1: tuple[float, float]
    beta2: tuple[float, float]
    colors: tuple[int, ...]
    cuts: tuple[int, int]

    @property
    def min_gap(self) -> float:
        return min(self.beta1[1], self.beta2[1])


@dataclass(frozen=True, eq=False)
class DiameterGraph:
    body: ConvexBody
    diameter: float
    witness: Chord
    classes: tuple[VertexClass, ...]
    edges: tuple[GraphEdge, ...]
    relations: tuple = field(repr=False, default=())

    def degree(self, i: int) -> int:
        return sum((e.u == i) + (e.v == i) for e in self.edges)

    def gaps(self) -> list[float]:
        """Boundary length (as a t fraction) between class i and class i+1."""
        k = len(self.classes)
        if k == 1:
            c = self.classes[0]
            return [0.0 if c.full else 1.0 - c.t_len]
        out = []
        for i in range(k):
            c, nxt = self.classes[i], self.classes[(i + 1) % k]
            out.append((nxt.t_start - (c.t_start + c.t_len)) % 1.0 if not c.full else 0.0)
        # a gap computed as ~1 from rounding is really ~0
        return [0.0 if g > 1.0 - TOL_T else g for g in out]

    def covers_boundary(self) -> bool:
        """True when the closed vertex classes fill all of the boundary (V = ∂C)."""
        return all(g <= TOL_T for g in self.gaps())

    def has_self_loop(self) -> bool:
        return any(e.u == e.v for e in self.edges)

    def adjacency(self) -> list[set[int]]:
        adj = [set() for _ in self.classes]
        for e in self.edges:
            adj[e.u].add(e.v)
            adj[e.v].add(e.u)
        return adj

    def two_coloring(self) -> tuple[list[int] | None, list[int] | None]:
        """BFS colouring ignoring self-loops: (colors, None) or (None, odd cycle)."""
        adj = self.adjacency()
        color = [-1] * len(self.classes)
        parent = [-1] * len(self.classes)
        for root in range(len(self.classes)):
            if color[root] >= 0:
                continue
            color[root] = 0
            queue = deque([root])
            while queue:
                x = queue.popleft()
                for y in sorted(adj[x]):
                    if y == x:
                        continue
                    if color[y] < 0:
                        color[y] = 1 - color[x]
                        parent[y] = x
                        queue.append(y)
                    elif color[y] == color[x]:
                        return None, _cycle_through(parent, x, y)
        return color, None

    def odd_cycle(self) -> list[int] | None:
        return self.two_coloring()[1]

    def is_bipartite(self) -> bool:
        return not self.has_self_loop() and self.odd_cycle() is None

    def to_json(self) -> dict:
        return {
            "diameter": self.diameter,
            "classes": [c.to_json() for c in self.classes],
            "edges": [
                {"u": e.u, "v": e.v, "kind": e.kind, **({"chord": e.chord.to_json()} if e.chord else {})}
                for e in self.edges
            ],
        }


def _cycle_through(parent: list[int], x: int, y: int) -> list[int]:
    """Odd cycle closed by the same-colour edge x-y in a BFS forest."""
    px = [x]
    while parent[px[-1]] >= 0:
        px.append(parent[px[-1]])
    py = [y]
    while parent[py[-1]] >= 0:
        py.append(parent[py[-1]])
    common = set(px) & set(py)
    ix = next(i for i, n in enumerate(px) if n in common)
    iy = py.index(px[ix])
    return px[: ix + 1] + list(reversed(py[:iy]))


def _inside_open(t: float, s: float, L: float) -> bool:
    off = (t - s) % 1.0
    return TOL_T < off < L - TOL_T


def _build_classes(point_ts: list[float], arcs: list[tuple[float, float]]) -> list[VertexClass]:
    if any(L >= 1.0 - TOL_T for _, L in arcs):
        return [VertexClass("arc", 0.0, 1.0, closed=True, full=True)]
    cut = 0.0
    if arcs:
        for s, L in arcs:
            e = (s + L) % 1.0
            if not any(_inside_open(e, s2, L2) for s2, L2 in arcs):
                cut = e
                break
        else:
            return [VertexClass("arc", 0.0, 1.0, closed=True, full=True)]

    def shift(t):
        x = (t - cut) % 1.0
        return 0.0 if x > 1.0 - TOL_T else x

    merged: list[list[float]] = []
    for s, L in sorted((shift(s), L) for s, L in arcs):
        if merged and s < merged[-1][1] - TOL_T:
            merged[-1][1] = max(merged[-1][1], s + L)
        else:
            merged.append([s, s + L])
    if merged and merged[-1][1] - merged[0][0] >= 1.0 - TOL_T and len(merged) == 1:
        return [VertexClass("arc", 0.0, 1.0, closed=True, full=True)]
    starts = [m[0] for m in merged]
    pts: list[float] = []
    for t in sorted(shift(t) for t in point_ts):
        i = bisect.bisect_right(starts, t) - 1
        if i >= 0 and merged[i][0] + TOL_T < t < merged[i][1] - TOL_T:
            continue
        if pts and t - pts[-1] <= TOL_T:
            continue
        pts.append(t)
    if len(pts) > 1 and pts[0] + 1.0 - pts[-1] <= TOL_T:
        pts.pop()
    out = [VertexClass("arc", (s + cut) % 1.0, e - s, closed=False) for s, e in merged]
    out += [VertexClass("point", (t + cut) % 1.0) for t in pts]
    # a point sharing its t with an arc start comes first (it closes the gap before the arc)
    out.sort(key=lambda c: (c.t_start, c.kind != "point"))
    return out


class _ClassIndex:
    def __init__(self, classes: list[VertexClass]):
        self.classes = classes
        self.starts = [c.t_start for c in classes]

    def find(self, t: float) -> int:
        k = len(self.classes)
        if k == 1:
            return 0
        i = bisect.bisect_right(self.starts, (t + TOL_T) % 1.0) - 1
        near = [(i + d) % k for d in (0, -1, 1, -2)]
        for j in near:
            c = self.classes[j]
            if c.kind == "point" and min((t - c.t_start) % 1.0, (c.t_start - t) % 1.0) <= 2 * TOL_T:
                return j
        for j in near:
            c = self.classes[j]
            if c.kind == "arc" and ((t - c.t_start) % 1.0 <= c.t_len + 2 * TOL_T or (c.t_start - t) % 1.0 <= 2 * TOL_T):
                return j
        raise ValueError(f"no vertex class contains t={t}")


def build_diameter_graph(body: ConvexBody, eps_rel: float = EPS_REL) -> DiameterGraph:
    if not 0.0 <= eps_rel <= 1e-3:
        raise ValueError("eps_rel must lie in [0, 1e-3]")
    D, witness, rels = _relations(body, eps_rel)
    point_ts: list[float] = []
    arcs: list[tuple[float, float]] = []
    for r in rels:
        if isinstance(r, PointPair):
            point_ts += [r.ta, r.tb]
        elif isinstance(r, PointArcFamily):
            point_ts.append(r.t_point)
            arcs.append((r.t_start, r.t_len))
            point_ts += [r.t_start, (r.t_start + r.t_len) % 1.0]
        else:
            for s, L in (r.first_t, r.second_t):
                arcs.append((s, L))
                if L < 1.0 - TOL_T:
                    point_ts += [s, (s + L) % 1.0]
    classes = _build_classes(point_ts, arcs)
    index = _ClassIndex(classes)
    exact = {}
    for r in rels:
        if isinstance(r, PointPair):
            exact.setdefault(index.find(r.ta), r.chord.a)
            exact.setdefault(index.find(r.tb), r.chord.b)
        elif isinstance(r, PointArcFamily):
            exact.setdefault(index.find(r.t_point), r.point)
    classes = [
        replace(c, point=exact.get(i) or body.point_at(c.t_start)) if c.kind == "point" else c
        for i, c in enumerate(classes)
    ]
    edges: list[GraphEdge] = []
    seen: set[tuple[int, int]] = set()
    for r in rels:
        if isinstance(r, PointPair):
            u, v = index.find(r.ta), index.find(r.tb)
            key = (min(u, v), max(u, v))
            if classes[u].kind == "point" and classes[v].kind == "point":
                if key in seen:
                    continue
                seen.add(key)
            edges.append(GraphEdge(key[0], key[1], "chord", r.chord))
        elif isinstance(r, PointArcFamily):
            u, v = index.find(r.t_point), index.find((r.t_start + r.t_len / 2) % 1.0)
            edges.append(GraphEdge(min(u, v), max(u, v), "point_arc"))
        else:
            u = index.find((r.first_t[0] + r.first_t[1] / 2) % 1.0)
            v = index.find((r.second_t[0] + r.second_t[1] / 2) % 1.0)
            edges.append(GraphEdge(min(u, v), max(u, v), "antipodal"))
    return DiameterGraph(body, D, witness, tuple(classes), tuple(edges), tuple(rels))


# -- separation search -----------------------------------------------------------------


def _split_valid(edges, a: int, b: int) -> bool:
    for e in edges:
        ina = e.u <= a < e.v
        inb = e.u <= b < e.v
        if ina == inb:
            return False
    return True


def _pick(edges, gaps, pairs) -> tuple[int, int] | None:
    """Best proper cut pair: largest smaller gap (relative ties at 1e-9), then largest (b, a).

    Candidates are ranked first so the O(E) check runs only until a hit.
    """
    ranked = sorted(((min(gaps[a], gaps[b]), (b, a)) for a, b in pairs), reverse=True)
    i = 0
    while i < len(ranked):
        top = ranked[i][0]
        j = i
        while j < len(ranked) and ranked[j][0] >= top * (1 - 1e-9):
            j += 1
        for _, (b, a) in sorted(ranked[i:j], key=lambda c: c[1], reverse=True):
            if _split_valid(edges, a, b):
                return a, b
        i = j
    return None


def is_bipartite_with_separation(graph: DiameterGraph) -> SeparatedColoring | None:
    """Proper 2-colouring with the two colours on disjoint closed boundary arcs.

    A colouring is fixed by two cut gaps a < b: classes a+1..b form one
    colour, the rest the other.  A cut pair is proper exactly when every edge
    has one endpoint on each side.  Each gap is tagged with the XOR of random
    per-edge keys over the edges it lies under, so proper pairs are the ones
    whose tags XOR to the total; every hit is then checked edge by edge.
    Among proper pairs the one with the largest smaller gap wins.
    """
    k = len(graph.classes)
    edges = graph.edges
    if k < 2 or not edges or graph.has_self_loop() or graph.covers_boundary():
        return None
    gaps = graph.gaps()
    rng = random.Random(0x5EED)
    diff = [0] * (k + 1)
    total = 0
    for e in edges:
        h = rng.getrandbits(64)
        diff[e.u] ^= h
        diff[e.v] ^= h
        total ^= h
    tags = []
    acc = 0
    for g in range(k):
        acc ^= diff[g]
        tags.append(acc)
    usable = [g for g in range(k) if gaps[g] > TOL_T]
    buckets: dict[int, list[int]] = {}
    for g in usable:
        buckets.setdefault(tags[g], []).append(g)

    hits = [(a, b) for a in usable for b in buckets.get(tags[a] ^ total, ()) if b > a]
    best_pair = _pick(edges, gaps, hits)
    if best_pair is None and len(usable) * len(usable) * len(edges) <= 4_000_000:
        # the tags could only miss a pair through a 64-bit collision; confirm
        best_pair = _pick(edges, gaps, itertools.combinations(usable, 2))
    if best_pair is None:
        return None
    a, b = best_pair
    return _coloring_from_cuts(graph, gaps, a, b)


def _coloring_from_cuts(graph: DiameterGraph, gaps: list[float], a: int, b: int) -> SeparatedColoring:
    cls = graph.classes
    k = len(cls)
    colors = tuple(1 if a < i <= b else 0 for i in range(k))

    def span(first: int, last: int) -> tuple[float, float]:
        s = cls[first].t_start
        e = cls[last].t_start + cls[last].t_len
        return s, (e - s) % 1.0

    red = span((b + 1) % k, a)
    blue = span(a + 1, b)
    beta1 = ((cls[b].t_start + cls[b].t_len) % 1.0, gaps[b])
    beta2 = ((cls[a].t_start + cls[a].t_len) % 1.0, gaps[a])
    return SeparatedColoring(red, blue, beta1, beta2, colors, (a, b))
