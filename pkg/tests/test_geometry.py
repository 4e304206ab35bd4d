import json
import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from borsuk.bodies import (
    ArcGon,
    ArcTo,
    ConvexPolygon,
    Disc,
    SegTo,
    body_from_json,
    clip_halfplane,
    reflect,
    symmetry_center,
)
from borsuk.errors import DegenerateInput, EmptyResult, InvalidBody, NotOnBoundary, SchemaError
from borsuk.gallery import random_convex_polygon, random_symmetric_polygon, regular_polygon, reuleaux_polygon, unit_square
from borsuk.geometry import Arc, Chord, Point, as_point, hull_polygon, orient, polar, segments_cross

from conftest import close


# -- hull ---------------------------------------------------------------------------

def test_hull_drops_interior_point():
    hull = hull_polygon([(0, 0), (1, 0), (1, 1), (0, 1), (0.5, 0.5)])
    assert ConvexPolygon(tuple(hull)).vertices == ((0, 0), (1, 0), (1, 1), (0, 1))


def test_hull_drops_collinear_midpoint():
    assert hull_polygon([(0, 0), (2, 0), (1, 1), (1, 0)]) == [(0, 0), (2, 0), (1, 1)]


@pytest.mark.parametrize("pts", [[(0, 0), (1, 1), (2, 2)], [(0, 0), (0, 0), (1, 1)], [(1, 2)]])
def test_hull_degenerate(pts):
    with pytest.raises(DegenerateInput):
        hull_polygon(pts)


@given(st.lists(st.tuples(st.floats(-10, 10), st.floats(-10, 10)), min_size=3, max_size=40))
def test_hull_contains_inputs(pts):
    try:
        hull = hull_polygon(pts)
    except DegenerateInput:
        return
    n = len(hull)
    for i in range(n):
        assert orient(hull[i - 1], hull[i], hull[(i + 1) % n]) > 0
    for p in pts:
        for i in range(n):
            assert orient(hull[i], hull[(i + 1) % n], p) >= -1e-9


# -- points, chords, validation -------------------------------------------------------

def test_point_rejects_non_finite():
    with pytest.raises(DegenerateInput):
        as_point((math.nan, 0))
    with pytest.raises(DegenerateInput):
        as_point((0, math.inf))


def test_chord_endpoints_distinct():
    with pytest.raises(DegenerateInput):
        Chord((1, 1), (1, 1))
    assert Chord((0, 0), (3, 4)).length == 5


def test_segments_cross():
    assert segments_cross(Chord((0, 0), (1, 1)), Chord((0, 1), (1, 0)))
    assert not segments_cross(Chord((0, 0), (1, 0)), Chord((0, 1), (1, 1)))


def test_polygon_cleanup_and_orientation():
    cw = ConvexPolygon(((0, 0), (0, 1), (1, 1), (1, 0)))
    assert cw.vertices[0] == (0, 0) and cw.vertices[1] == (1, 0)
    with_collinear = ConvexPolygon(((0, 0), (0.5, 0), (1, 0), (1, 1), (1, 1), (0, 1)))
    assert len(with_collinear.vertices) == 4


def test_polygon_rejects_reflex_vertex():
    with pytest.raises(InvalidBody):
        ConvexPolygon(((0, 0), (1, 0), (0.2, 0.2), (0, 1)))


def test_polygon_too_few_vertices():
    with pytest.raises(DegenerateInput):
        ConvexPolygon(((0, 0), (1, 0)))


def test_disc_radius_positive():
    with pytest.raises(InvalidBody):
        Disc((0, 0), 0.0)


def test_arcgon_must_close():
    with pytest.raises(InvalidBody):
        ArcGon((0, 0), (SegTo((1, 0)), SegTo((1, 1))))


# -- support ------------------------------------------------------------------------

def test_support_point_face_midpoint():
    assert close(unit_square().support_point((1, 0)), (1, 0.5))


def test_support_point_disc_tangency():
    assert close(Disc((0, 0), 2).support_point((0, 1)), (0, 2))


def test_support_point_unique_corner():
    s = 1 / math.sqrt(2)
    assert close(unit_square().support_point((s, s)), (1, 1))


@pytest.mark.parametrize("body", [unit_square(), Disc((1, 2), 0.7), reuleaux_polygon(5), random_convex_polygon(12, 3)])
def test_support_point_dominates_samples(body):
    rng = np.random.default_rng(11)
    pts = body.points_at(rng.random(100))
    for ang in rng.random(64) * 2 * math.pi:
        u = polar(ang)
        h = u.dot(body.support_point(u))
        assert np.all(pts @ np.array(u) <= h + 1e-12 * body.scale)


# -- boundary parametrization -------------------------------------------------------

def test_param_anchor_and_quarter():
    sq = unit_square()
    assert close(sq.point_at(0.0), (0, 0))
    assert close(sq.point_at(0.125), (0.5, 0))


def test_disc_param():
    assert close(Disc((0, 0), 1).point_at(0.25), (0, 1), 1e-15)


@pytest.mark.parametrize(
    "body", [unit_square(), Disc((3, 4), 2), reuleaux_polygon(3), reuleaux_polygon(7), random_convex_polygon(30, 5)]
)
def test_param_round_trip(body):
    rng = np.random.default_rng(5)
    for t in rng.random(256):
        back = body.param_of(body.point_at(t))
        assert min(abs(back - t), 1 - abs(back - t)) <= 1e-9


def test_param_of_off_boundary():
    with pytest.raises(NotOnBoundary):
        unit_square().param_of((0.5, 0.5))


# -- clipping -----------------------------------------------------------------------

def test_clip_square_half():
    piece = clip_halfplane(unit_square(), (0, 0.5), (0, 1))
    assert isinstance(piece, ConvexPolygon)
    assert sorted(piece.vertices) == [(0, 0), (0, 0.5), (1, 0), (1, 0.5)]


def test_clip_disc_half():
    piece = clip_halfplane(Disc((0, 0), 1), (0, 0), (1, 0))
    assert isinstance(piece, ArcGon)
    kinds = sorted(type(p).__name__ for p in piece.pieces)
    assert kinds == ["Arc", "Segment"]
    assert piece.area == pytest.approx(math.pi / 2, rel=1e-12)


def test_clip_noop_and_empty():
    sq = unit_square()
    assert clip_halfplane(sq, (0, 2), (0, 1)) == sq
    with pytest.raises(EmptyResult):
        clip_halfplane(sq, (0, -1), (0, 1))


def _turns_left(body, tol=1e-9):
    pts = body.outline(32)
    n = len(pts)
    s = body.scale
    return all(orient(pts[i - 1], pts[i], pts[(i + 1) % n]) >= -tol * s * s for i in range(n))


def test_clip_convex_on_random_pairs():
    rng = np.random.default_rng(2024)
    done = 0
    for k in range(1000):
        poly = random_convex_polygon(int(rng.integers(3, 25)), seed=k)
        p = poly.points_at(rng.random(1))[0] * rng.random()
        piece = None
        try:
            piece = clip_halfplane(poly, p, polar(rng.random() * 2 * math.pi))
        except EmptyResult:
            continue
        assert isinstance(piece, ConvexPolygon)
        assert _turns_left(piece)
        assert piece.area <= poly.area * (1 + 1e-12)
        done += 1
    assert done > 900


@pytest.mark.parametrize("body", [Disc((0, 0), 1), reuleaux_polygon(3), reuleaux_polygon(5)])
def test_clip_curved_bodies_convex(body):
    rng = np.random.default_rng(9)
    for _ in range(50):
        p = body.points_at(rng.random(1))[0] * 0.8
        try:
            piece = clip_halfplane(body, p, polar(rng.random() * 2 * math.pi))
        except EmptyResult:
            continue
        assert isinstance(piece, ArcGon)
        assert _turns_left(piece)


def test_clip_pieces_tile():
    body = reuleaux_polygon(3)
    a = clip_halfplane(body, (0, 0), (0.3, 1))
    b = clip_halfplane(body, (0, 0), (-0.3, -1))
    assert a.area + b.area == pytest.approx(body.area, rel=1e-12)


# -- symmetry -----------------------------------------------------------------------

def test_symmetry_center_examples():
    assert close(symmetry_center(unit_square()), (0.5, 0.5))
    assert symmetry_center(regular_polygon(3)) is None
    assert symmetry_center(Disc((3, 4), 1)) == (3, 4)
    assert symmetry_center(reuleaux_polygon(3)) is None


def test_symmetry_center_symmetric_arcgon():
    # stadium: two half-discs joined by segments
    stadium = ArcGon(
        (0, -1),
        (SegTo((2, -1)), ArcTo((2, 0), 1, (2, 1)), SegTo((0, 1)), ArcTo((0, 0), 1, (0, -1))),
    )
    assert close(symmetry_center(stadium), (1, 0), 1e-12)


@pytest.mark.parametrize("seed", range(20))
def test_reflection_matches_body(seed):
    body = random_symmetric_polygon(2 * (2 + seed % 10), seed)
    p = symmetry_center(body)
    assert p is not None
    mirrored = reflect(body, p)
    D = max(math.dist(a, b) for a in body.vertices for b in body.vertices)
    for v in mirrored.vertices:
        assert min(math.dist(v, w) for w in body.vertices) <= 1e-9 * D


# -- JSON ---------------------------------------------------------------------------

@pytest.mark.parametrize("body", [unit_square(), Disc((1, 1), 2), reuleaux_polygon(5)])
def test_json_round_trip(body):
    again = body_from_json(json.loads(json.dumps(body.to_json())))
    assert type(again) is type(body)
    assert again.area == pytest.approx(body.area, rel=1e-12)


@pytest.mark.parametrize(
    "doc",
    [
        [],
        {"type": "triangle"},
        {"type": "polygon"},
        {"type": "polygon", "vertices": [[0, 0], [1], [0, 1]]},
        {"type": "disc", "center": [0, 0]},
        {"type": "arcgon", "start": [0, 0], "elements": [{"kind": "curve", "to": [1, 1]}]},
    ],
)
def test_json_schema_errors(doc):
    with pytest.raises(SchemaError):
        body_from_json(doc)


def test_json_invalid_body_is_not_schema_error():
    with pytest.raises(InvalidBody):
        body_from_json({"type": "disc", "center": [0, 0], "radius": -1})
