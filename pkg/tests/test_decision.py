import json
import math

import numpy as np
import pytest

from borsuk.bodies import ArcGon, ArcTo, Disc, SegTo, symmetry_center
from borsuk.decision import (
    BorsukCertificate,
    ClosureContact,
    EuclideanBall,
    FullBoundaryVertexSet,
    OddCycle,
    borsuk_number,
    decide_general,
    decide_symmetric,
    splitting_chord,
)
from borsuk.diameter import DiameterGraph, GraphEdge, VertexClass, build_diameter_graph, is_bipartite_with_separation
from borsuk.gallery import (
    example_pentagon,
    random_convex_polygon,
    random_symmetric_polygon,
    rectangle,
    regular_polygon,
    reuleaux_polygon,
    unit_square,
)
from borsuk.geometry import Chord, orient, segments_cross

from conftest import close


def separates(chord: Chord, diam: Chord) -> bool:
    """The chord line strictly separates the diameter's ends, meeting it inside the closed chord."""
    if segments_cross(chord, diam):
        return True
    da, db = orient(chord.a, chord.b, diam.a), orient(chord.a, chord.b, diam.b)
    if not da * db < 0:
        return False
    # crossing point along the chord must lie on the closed chord
    x = diam.a + (diam.b - diam.a) * (da / (da - db))
    L = chord.length
    s = (x - chord.a).dot(chord.b - chord.a) / (L * L)
    return -1e-12 <= s <= 1 + 1e-12


def test_square_alpha2_midline():
    cert = borsuk_number(unit_square())
    assert cert.alpha == 2
    ends = sorted([tuple(cert.chord.a), tuple(cert.chord.b)])
    assert close(ends[0], (0, 0.5)) and close(ends[1], (1, 0.5))


def test_disc_ball_witness():
    cert = borsuk_number(Disc((2, 3), 1.5))
    assert cert.alpha == 3
    assert cert.witness == EuclideanBall((2, 3), 1.5)


def test_example_pentagon_five_cycle():
    cert = borsuk_number(example_pentagon(4.0))
    assert cert.alpha == 3
    assert isinstance(cert.witness, OddCycle) and len(cert.witness.classes) == 5


def test_regular_heptagon_seven_cycle():
    cert = borsuk_number(regular_polygon(7))
    assert cert.alpha == 3 and len(cert.witness.classes) == 7


@pytest.mark.parametrize("n", [3, 5, 7])
def test_reuleaux_alpha3(n):
    assert borsuk_number(reuleaux_polygon(n)).alpha == 3


def test_hexagon_chord_joins_side_midpoints():
    hexagon = regular_polygon(6, 1.0)
    cert = borsuk_number(hexagon)
    v = hexagon.vertices
    want = {tuple((v[2] + v[3]) * 0.5), tuple((v[5] + v[0]) * 0.5)}
    got = {tuple(cert.chord.a), tuple(cert.chord.b)}
    for p in got:
        assert any(close(p, q) for q in want)


def test_thin_rectangle_vertical_chord():
    cert = borsuk_number(rectangle(4.0, 1.0))
    a, b = cert.chord.a, cert.chord.b
    assert close((a.x, b.x), (2.0, 2.0))
    assert sorted([a.y, b.y]) == [0.0, 1.0]


def test_square_splitting_chord_from_coloring():
    g = build_diameter_graph(unit_square())
    sep = is_bipartite_with_separation(g)
    chord = splitting_chord(unit_square(), sep)
    assert {round(chord.a.y, 12), round(chord.b.y, 12)} == {0.5}


@pytest.mark.parametrize("seed", range(60))
def test_chord_crosses_every_diameter(seed):
    body = random_convex_polygon(4 + seed % 10, seed)
    cert = borsuk_number(body)
    assert cert.alpha in (2, 3)
    g = cert.graph
    if cert.alpha == 2:
        for e in g.edges:
            assert separates(cert.chord, e.chord)
        sep = cert.witness
        assert sep.beta1[1] > 0 and sep.beta2[1] > 0
    elif isinstance(cert.witness, OddCycle):
        cyc = cert.witness.classes
        assert len(cyc) % 2 == 1 and len(cyc) >= 3
        adj = g.adjacency()
        for i in range(len(cyc)):
            assert cyc[(i + 1) % len(cyc)] in adj[cyc[i]]


def test_odd_cycle_edges_realize_diameter():
    cert = borsuk_number(regular_polygon(9))
    g = cert.graph
    cyc = cert.witness.classes
    for i in range(len(cyc)):
        p, q = g.classes[cyc[i]].point, g.classes[cyc[(i + 1) % len(cyc)]].point
        assert math.dist(p, q) == pytest.approx(g.diameter, rel=1e-9)


@pytest.mark.parametrize("seed", range(40))
def test_symmetric_and_general_paths_agree(seed):
    body = random_symmetric_polygon(4 + 2 * (seed % 12), seed)
    g = build_diameter_graph(body)
    sym = decide_symmetric(body, g, symmetry_center(body))
    gen = decide_general(body, g)
    assert sym.alpha == gen.alpha == 2


def _synthetic(classes, edges):
    body = Disc((0, 0), 1)
    return DiameterGraph(body, 2.0, Chord((1, 0), (-1, 0)), tuple(classes), tuple(edges))


def test_full_boundary_witness():
    # two arcs filling the boundary, one edge between them: bipartite yet no gap to cut in
    g = _synthetic(
        [VertexClass("arc", 0.0, 0.5, closed=False), VertexClass("arc", 0.5, 0.5, closed=False)],
        [GraphEdge(0, 1, "antipodal")],
    )
    assert g.is_bipartite() and g.covers_boundary()
    cert = decide_general(g.body, g)
    assert cert.alpha == 3 and isinstance(cert.witness, FullBoundaryVertexSet)


def test_closure_contact_witness():
    # red and blue arcs touch at t = 0.5, leaving a single positive gap
    g = _synthetic(
        [VertexClass("arc", 0.0, 0.5, closed=False), VertexClass("arc", 0.5, 0.3, closed=False)],
        [GraphEdge(0, 1, "antipodal")],
    )
    assert g.is_bipartite() and not g.covers_boundary()
    cert = decide_general(g.body, g)
    assert cert.alpha == 3 and cert.witness == ClosureContact(0.5)


def test_certificate_invariants():
    with pytest.raises(AssertionError):
        BorsukCertificate(3, OddCycle((0, 1)))
    with pytest.raises(ValueError):
        BorsukCertificate(4, FullBoundaryVertexSet())
    with pytest.raises(AssertionError):
        BorsukCertificate(2, ClosureContact(0.1))


def test_certificate_json_schema():
    doc = json.loads(json.dumps(borsuk_number(unit_square()).to_json()))
    assert set(doc) == {"alpha", "chord", "red", "blue"}
    assert len(doc["chord"]) == 2 and len(doc["red"]) == 2
    doc = borsuk_number(regular_polygon(5)).to_json()
    assert doc == {"alpha": 3, "witness": {"kind": "odd_cycle", "classes": list(doc["witness"]["classes"])}}


def test_stadium_symmetric_alpha2():
    stadium = ArcGon(
        (0, -1),
        (SegTo((2, -1)), ArcTo((2, 0), 1, (2, 1)), SegTo((0, 1)), ArcTo((0, 0), 1, (0, -1))),
    )
    cert = borsuk_number(stadium)
    assert cert.center is not None and cert.alpha == 2
    assert cert.chord.length > 0


def test_similarity_invariance():
    rng = np.random.default_rng(77)
    for k in range(30):
        body = random_convex_polygon(int(rng.integers(3, 14)), seed=k)
        s = float(np.exp(rng.normal()))
        moved = body.transformed(scale=s, rotation=float(rng.random() * 6.3), shift=tuple(rng.normal(size=2) * 5))
        a, b = borsuk_number(body), borsuk_number(moved)
        assert a.alpha == b.alpha
        assert b.graph.diameter == pytest.approx(s * a.graph.diameter, rel=1e-9)


def test_symmetric_tiny_gaps_warn(caplog):
    h = 0.5 - 5e-8
    g = _synthetic(
        [VertexClass("arc", 0.0, h, closed=False), VertexClass("arc", 0.5, h, closed=False)],
        [GraphEdge(0, 1, "antipodal")],
    )
    cert = decide_symmetric(g.body, g, (0.0, 0.0))
    assert cert.alpha == 3 and isinstance(cert.witness, ClosureContact)
    assert cert.warnings and "1e-6" in cert.warnings[0]
    assert "gap" in caplog.text
