"""Singer cyclic polygons, Weyl graphs and lattice presentations."""

from .difference_sets import DifferenceSet, singer_difference_set, verify_difference_set
from .finite_field import field_make, primitive_element
from .polygons import SingerPolygon, quotient_digon, quotient_triangle
from .presentation import GroupPresentation, lattice_presentation
from .weyl import GluingMatrix, build_weyl_graph, parse_gluing, validate_gluing

__all__ = [
    "DifferenceSet",
    "GluingMatrix",
    "GroupPresentation",
    "SingerPolygon",
    "build_weyl_graph",
    "field_make",
    "lattice_presentation",
    "parse_gluing",
    "primitive_element",
    "quotient_digon",
    "quotient_triangle",
    "singer_difference_set",
    "validate_gluing",
    "verify_difference_set",
]
