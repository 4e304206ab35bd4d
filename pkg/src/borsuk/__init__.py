"""Borsuk numbers of planar convex bodies: diameter graphs, decisions, partitions."""
from .bodies import ArcGon, ArcTo, ConvexPolygon, Disc, SegTo, body_from_json, clip_halfplane, symmetry_center
from .decision import BorsukCertificate, borsuk_number
from .diameter import DiameterGraph, build_diameter_graph, diameter, diameter_pairs, is_bipartite_with_separation
from .errors import BorsukError
from .geometry import Chord, Point, hull_polygon
from .partition import build_partition, pal_hexagon, three_partition, two_partition, verify_partition

__all__ = [
    "ArcGon", "ArcTo", "BorsukCertificate", "BorsukError", "Chord", "ConvexPolygon", "DiameterGraph",
    "Disc", "Point", "SegTo", "body_from_json", "borsuk_number", "build_diameter_graph", "build_partition",
    "clip_halfplane", "diameter", "diameter_pairs", "hull_polygon", "is_bipartite_with_separation",
    "pal_hexagon", "symmetry_center", "three_partition", "two_partition", "verify_partition",
]
