"""Acute tetrahedral tilings of space and of a slab: construction,
validation and quality statistics."""

from .geom import (
    DegenerateError,
    DihedralSet,
    Point3,
    Tetrahedron,
    circumsphere,
    dihedral_angles,
    face_angles,
    insphere,
    is_acute,
    orient3d,
    radius_edge_ratio,
    vertex_projection_test,
)
from .delaunay import PeriodicPointSet, WindowTooSmall, delaunay, flip_3to2, periodic_delaunay
from .mesh import TetMesh

__all__ = [
    "DegenerateError", "DihedralSet", "Point3", "Tetrahedron", "circumsphere",
    "dihedral_angles", "face_angles", "insphere", "is_acute", "orient3d",
    "radius_edge_ratio", "vertex_projection_test", "PeriodicPointSet",
    "WindowTooSmall", "delaunay", "flip_3to2", "periodic_delaunay", "TetMesh",
]
__version__ = "0.1.0"
