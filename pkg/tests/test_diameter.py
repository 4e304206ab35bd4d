import json
import math

import numpy as np
import pytest

from borsuk.bodies import Disc, symmetry_center
from borsuk.diameter import (
    AntipodalFamily,
    PointArcFamily,
    build_diameter_graph,
    diameter,
    diameter_pairs,
    is_bipartite_with_separation,
)
from borsuk.gallery import (
    random_convex_polygon,
    random_symmetric_polygon,
    rectangle,
    regular_polygon,
    reuleaux_polygon,
    unit_square,
)
from borsuk.geometry import Chord, orient
from borsuk.oracle import OracleConfig, brute_diameter

from conftest import brute_vertex_diameter


# -- diameter -----------------------------------------------------------------------

def test_square_diameter_and_witness():
    D, w = diameter(unit_square())
    assert D == math.sqrt(2)
    assert {tuple(w.a), tuple(w.b)} == {(0.0, 0.0), (1.0, 1.0)}


def test_disc_diameter():
    assert diameter(Disc((1, -2), 3))[0] == 6


def test_reuleaux_triangle_diameter_matches_sampling():
    # oracle: exhaustive pairs over 10^4 boundary samples
    est, _ = brute_diameter(reuleaux_polygon(3), OracleConfig(boundary_samples=10_000, seed=1))
    D = diameter(reuleaux_polygon(3))[0]
    assert abs(D - 1.0) <= 1e-12
    assert abs(est - D) <= 1e-6 and est <= D + 1e-12


def test_polygon_diameter_equals_brute_force():
    rng = np.random.default_rng(500)
    for k in range(500):
        n = int(rng.integers(3, 65))
        poly = random_convex_polygon(n, seed=10_000 + k)
        assert diameter(poly)[0] == brute_vertex_diameter(poly.vertices)


@pytest.mark.parametrize("n", range(3, 40))
def test_regular_polygon_diameter_equals_brute_force(n):
    poly = regular_polygon(n, 1.0, phase=0.1 * n)
    assert diameter(poly)[0] == brute_vertex_diameter(poly.vertices)


# -- diameter pairs -----------------------------------------------------------------

def test_regular_pentagon_has_five_diameter_chords():
    pent = regular_polygon(5, 1.0)
    chords = diameter_pairs(pent)
    # oracle: all 10 vertex pairs, count those at the maximum
    v = pent.vertices
    d = [math.dist(v[i], v[j]) for i in range(5) for j in range(i + 1, 5)]
    top = max(d)
    assert sum(x >= top * (1 - 1e-9) for x in d) == 5
    assert len(chords) == 5 and all(isinstance(c, Chord) for c in chords)


def test_square_pairs_are_diagonals():
    chords = diameter_pairs(unit_square())
    assert len(chords) == 2
    assert all(c.length == pytest.approx(math.sqrt(2), abs=1e-15) for c in chords)


def test_disc_pairs_symbolic():
    (fam,) = diameter_pairs(Disc((0, 0), 1))
    assert isinstance(fam, AntipodalFamily)


def test_reuleaux_pairs_are_point_arc_families():
    pairs = diameter_pairs(reuleaux_polygon(3))
    fams = [f for f in pairs if isinstance(f, PointArcFamily)]
    chords = [c for c in pairs if isinstance(c, Chord)]
    # the three sides between vertices are diameters too
    assert len(fams) == 3 and len(chords) == 3
    assert all(c.length == pytest.approx(1.0, abs=1e-12) for c in chords)
    for f in fams:
        for s in np.linspace(0, f.arc.length, 11):
            assert math.dist(f.point, f.arc.point_at(s)) == pytest.approx(1.0, abs=1e-12)


def test_eps_rel_range():
    with pytest.raises(ValueError):
        diameter_pairs(unit_square(), 1e-2)
    with pytest.raises(ValueError):
        diameter_pairs(unit_square(), -1.0)


@pytest.mark.parametrize("seed", range(40))
def test_pairs_realize_diameter_and_maximality(seed):
    poly = random_convex_polygon(5 + seed % 20, seed)
    D = diameter(poly)[0]
    for c in diameter_pairs(poly):
        assert abs(c.length - D) <= 1e-9 * D
    v = poly.vertices
    assert all(math.dist(p, q) < D * (1 + 1e-12) for p in v for q in v)


# -- graph --------------------------------------------------------------------------

def test_regular_pentagon_graph_is_five_cycle():
    g = build_diameter_graph(regular_polygon(5))
    assert len(g.classes) == 5 and len(g.edges) == 5
    assert all(c.kind == "point" for c in g.classes)
    adj = g.adjacency()
    assert all(len(a) == 2 for a in adj)
    # walk the cycle
    seen, prev, cur = [0], None, 0
    while True:
        nxt = min(x for x in adj[cur] if x != prev) if prev is None else next(x for x in adj[cur] if x != prev)
        if nxt == 0:
            break
        seen.append(nxt)
        prev, cur = cur, nxt
    assert sorted(seen) == list(range(5))


def test_reuleaux_triangle_classes_alternate():
    g = build_diameter_graph(reuleaux_polygon(3))
    assert [c.kind for c in g.classes] == ["point", "arc"] * 3
    fam = [e for e in g.edges if e.kind == "point_arc"]
    assert len(fam) == 3
    for e in fam:
        # each vertex faces the arc opposite to it
        assert {g.classes[e.u].kind, g.classes[e.v].kind} == {"point", "arc"}
        assert abs(e.u - e.v) == 3
    # the sides v_i v_j between vertices are diameter chords as well
    chords = [e for e in g.edges if e.kind == "chord"]
    assert len(chords) == 3 and all(e.chord.length == pytest.approx(1.0, abs=1e-12) for e in chords)
    assert g.covers_boundary()


def test_disc_graph_single_full_class():
    g = build_diameter_graph(Disc((0, 0), 1))
    assert len(g.classes) == 1 and g.classes[0].full and g.classes[0].closed
    assert len(g.edges) == 1 and g.edges[0].u == g.edges[0].v == 0
    assert g.covers_boundary()


@pytest.mark.parametrize("seed", range(30))
def test_classes_strictly_ordered(seed):
    body = random_convex_polygon(4 + seed, seed) if seed % 3 else reuleaux_polygon(3 + 2 * (seed % 4))
    g = build_diameter_graph(body)
    cls = g.classes
    for c, d in zip(cls, cls[1:]):
        # an open arc may start exactly at the point class before it
        assert c.t_start < d.t_start or (c.kind == "point" and d.kind == "arc" and not d.closed and c.t_start == d.t_start)
        assert c.t_start + c.t_len <= d.t_start + 1e-12
    assert all(g.degree(i) >= 1 for i in range(len(g.classes)))


def test_graph_json_serializable():
    doc = build_diameter_graph(reuleaux_polygon(5)).to_json()
    again = json.loads(json.dumps(doc))
    assert again["diameter"] == pytest.approx(1.0)
    assert len(again["classes"]) == 10
    assert sum(e["kind"] == "point_arc" for e in again["edges"]) == 5


# -- separation ---------------------------------------------------------------------

def test_hexagon_split():
    g = build_diameter_graph(regular_polygon(6))
    sep = is_bipartite_with_separation(g)
    assert sep is not None
    red = [i for i, c in enumerate(sep.colors) if c == sep.colors[0]]
    blue = [i for i, c in enumerate(sep.colors) if c != sep.colors[0]]
    assert (len(red), len(blue)) == (3, 3)
    # contiguous blocks and every diagonal crosses
    assert blue == list(range(blue[0], blue[0] + 3))
    for e in g.edges:
        assert sep.colors[e.u] != sep.colors[e.v]


def test_triangle_not_separable():
    assert is_bipartite_with_separation(build_diameter_graph(regular_polygon(3))) is None


def test_reuleaux_not_separable():
    assert is_bipartite_with_separation(build_diameter_graph(reuleaux_polygon(3))) is None


def test_brute_force_split_enumeration_agrees():
    # oracle: enumerate every pair of cut gaps directly
    for seed in range(60):
        g = build_diameter_graph(random_convex_polygon(4 + seed % 9, seed))
        k = len(g.classes)
        gaps = g.gaps()
        valid = [
            (a, b)
            for a in range(k)
            for b in range(a + 1, k)
            if gaps[a] > 1e-9 and gaps[b] > 1e-9
            and all((e.u <= a < e.v) != (e.u <= b < e.v) for e in g.edges)
        ]
        sep = is_bipartite_with_separation(g)
        assert (sep is None) == (not valid)
        if sep is not None:
            assert sep.cuts in valid
            assert min(gaps[a] for a in sep.cuts) >= max(min(gaps[a], gaps[b]) for a, b in valid) * (1 - 1e-9)


# -- symmetric bodies ---------------------------------------------------------------

@pytest.mark.parametrize("seed", range(25))
def test_symmetric_chords_pass_through_center(seed):
    body = random_symmetric_polygon(4 + 2 * (seed % 15), seed)
    p = symmetry_center(body)
    g = build_diameter_graph(body)
    for e in g.edges:
        c = e.chord
        assert abs(orient(c.a, c.b, p)) / c.length <= 1e-9 * g.diameter
    assert all(g.degree(i) == 1 for i in range(len(g.classes)))
    assert g.is_bipartite()


def test_similarity_scales_diameter():
    body = random_convex_polygon(9, 4)
    moved = body.transformed(scale=3.5, rotation=1.1, shift=(4, -7))
    assert diameter(moved)[0] == pytest.approx(3.5 * diameter(body)[0], rel=1e-12)
