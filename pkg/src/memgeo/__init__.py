"""Memory-constrained algorithms for simple polygons.

Constant-workspace triangulation of plane straight-line graphs through
monotone mountains, and an O(s)-word shortest-path structure built from
balanced cuts with O(n^2/s)-time queries.
"""
from memgeo.geodesic import (Chord, Decomposition, PathSummary, Subpolygon, balanced_cut,
                             build_decomposition, geodesic_path, locate, query, tree_route)
from memgeo.mountain import ArrayMountain, mountain_triangles, triangulate_mountain
from memgeo.scene import (Constant, DegenerateInput, GeomError, GeometryError,
                          InvariantViolation, LinearInS, OutsidePolygon, ParseError, Scene,
                          WorkspaceExceeded, build_scene, load_file, load_scene, metered)
from memgeo.triangulate import triangulate_pslg, triangulation

__version__ = "0.1.0"

__all__ = [
    "ArrayMountain", "Chord", "Constant", "Decomposition", "DegenerateInput", "GeomError",
    "GeometryError", "InvariantViolation", "LinearInS", "OutsidePolygon", "ParseError",
    "PathSummary", "Scene", "Subpolygon", "WorkspaceExceeded", "balanced_cut", "build_decomposition",
    "build_scene", "geodesic_path", "load_file", "load_scene", "locate", "metered",
    "mountain_triangles", "query", "tree_route", "triangulate_mountain", "triangulate_pslg",
    "triangulation",
]
