"""Decide the Borsuk number of a planar convex body, with a certificate.

``alpha == 2`` comes with a separated colouring of the diameter graph and a
splitting chord; ``alpha == 3`` with an obstruction: an odd cycle of
diameter segments, a vertex set filling the whole boundary, a point where the
two colours are forced to touch, or (centrally symmetric case) the ball itself.
"""
from __future__ import annotations

import logging
from dataclasses import dataclass, field

from .bodies import ConvexBody, symmetry_center
from .diameter import (
    EPS_REL,
    DiameterGraph,
    SeparatedColoring,
    build_diameter_graph,
    is_bipartite_with_separation,
)
from .geometry import Chord, Point

log = logging.getLogger(__name__)

# symmetric bodies: smallest gap arc accepted for the antipodal split
MIN_SYMMETRIC_GAP = 1e-6


@dataclass(frozen=True)
class OddCycle:
    classes: tuple[int, ...]
    kind = "odd_cycle"

    def to_json(self):
        return {"kind": self.kind, "classes": list(self.classes)}


@dataclass(frozen=True)
class FullBoundaryVertexSet:
    kind = "full_boundary"

    def to_json(self):
        return {"kind": self.kind}


@dataclass(frozen=True)
class ClosureContact:
    t: float
    kind = "closure_contact"

    def to_json(self):
        return {"kind": self.kind, "t": self.t}


@dataclass(frozen=True)
class EuclideanBall:
    center: Point
    radius: float
    kind = "euclidean_ball"

    def to_json(self):
        return {"kind": self.kind, "center": list(self.center), "radius": self.radius}


@dataclass(frozen=True, eq=False)
class BorsukCertificate:
    alpha: int
    witness: object
    chord: Chord | None = None
    center: Point | None = None
    warnings: tuple[str, ...] = ()
    graph: DiameterGraph | None = field(default=None, repr=False)

    def __post_init__(self):
        if self.alpha == 2:
            assert isinstance(self.witness, SeparatedColoring) and self.chord is not None
        elif self.alpha == 3:
            assert isinstance(self.witness, (OddCycle, FullBoundaryVertexSet, ClosureContact, EuclideanBall))
            if isinstance(self.witness, OddCycle):
                assert len(self.witness.classes) >= 3 and len(self.witness.classes) % 2 == 1
        else:
            raise ValueError(f"alpha must be 2 or 3, got {self.alpha}")

    def to_json(self) -> dict:
        if self.alpha == 2:
            w = self.witness
            out = {
                "alpha": 2,
                "chord": self.chord.to_json(),
                "red": [w.red[0], w.red[0] + w.red[1]],
                "blue": [w.blue[0], w.blue[0] + w.blue[1]],
            }
        else:
            out = {"alpha": 3, "witness": self.witness.to_json()}
        if self.warnings:
            out["warnings"] = list(self.warnings)
        return out


def splitting_chord(body: ConvexBody, coloring: SeparatedColoring) -> Chord:
    """Chord joining the midpoints of the two gap arcs."""
    b1, b2 = coloring.beta1, coloring.beta2
    return Chord(body.point_at(b1[0] + b1[1] / 2), body.point_at(b2[0] + b2[1] / 2))


def _closure_contact_t(graph: DiameterGraph) -> float:
    """A boundary point where any colouring has to change colour without a gap."""
    for e in graph.edges:
        if e.u == e.v:
            return graph.classes[e.u].t_start
    colors, _ = graph.two_coloring()
    gaps = graph.gaps()
    k = len(graph.classes)
    for i in range(k):
        j = (i + 1) % k
        if colors[i] != colors[j] and gaps[i] <= 1e-9:
            c = graph.classes[i]
            return (c.t_start + c.t_len) % 1.0
    changes = [i for i in range(k) if colors[i] != colors[(i + 1) % k]]
    if len(changes) > 2:
        return graph.classes[(changes[2] + 1) % k].t_start
    return graph.classes[0].t_start


def _obstruction(graph: DiameterGraph):
    cycle = graph.odd_cycle()
    if cycle is not None:
        return OddCycle(tuple(cycle))
    if graph.covers_boundary():
        return FullBoundaryVertexSet()
    return ClosureContact(_closure_contact_t(graph))


def decide_general(body: ConvexBody, graph: DiameterGraph) -> BorsukCertificate:
    """α = 2 iff G_C is bipartite with colour classes on disjoint closed arcs."""
    sep = is_bipartite_with_separation(graph)
    if sep is not None:
        return BorsukCertificate(2, sep, splitting_chord(body, sep), graph=graph)
    return BorsukCertificate(3, _obstruction(graph), graph=graph)


def decide_symmetric(body: ConvexBody, graph: DiameterGraph, center: Point) -> BorsukCertificate:
    """Centrally symmetric bodies: α = 3 exactly when V is the whole boundary (a disc)."""
    if graph.covers_boundary():
        return BorsukCertificate(3, EuclideanBall(center, graph.diameter / 2), center=center, graph=graph)
    sep = is_bipartite_with_separation(graph)
    if sep is not None and sep.min_gap >= MIN_SYMMETRIC_GAP:
        return BorsukCertificate(2, sep, splitting_chord(body, sep), center=center, graph=graph)
    msg = "symmetric body with V != boundary but no gap arc of length >= 1e-6 * perimeter"
    log.warning(msg)
    return BorsukCertificate(3, ClosureContact(_closure_contact_t(graph)), center=center, warnings=(msg,), graph=graph)


def borsuk_number(body: ConvexBody, eps_rel: float = EPS_REL) -> BorsukCertificate:
    graph = build_diameter_graph(body, eps_rel)
    center = symmetry_center(body)
    if center is not None:
        return decide_symmetric(body, graph, center)
    return decide_general(body, graph)
