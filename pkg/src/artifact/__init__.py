"""Kinetic maintenance of contour trees on piecewise-linear terrains."""
from .mesh import INF, Mesh, build_mesh
from .kinetic import KineticState, MultipleSaddleEncountered
from .edit import delete_vertex, flip_edge, insert_vertex, reduce_degree
from .oracle import assert_equivalent, static_snapshot

__version__ = "0.1.0"
