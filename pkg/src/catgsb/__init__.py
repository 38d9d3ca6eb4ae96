"""Groebner-Shirshov bases for small categories presented by quivers."""

__version__ = "0.1.0"

from .engine import Basis, check_gsb, complete, interreduce, irr_enumerate, membership, normal_form, reduce
from .orders import CyclicOrder, DegLex, SimplicialOrder, make_order
from .poly import PartialPoly, parse_poly, parse_word
from .presentations import Presentation, build_cyclic, build_simplicial, builtin, parse_presentation
from .quiver import Edge, Quiver, Vertex, Word

__all__ = [
    "Basis", "CyclicOrder", "DegLex", "Edge", "PartialPoly", "Presentation", "Quiver",
    "SimplicialOrder", "Vertex", "Word", "build_cyclic", "build_simplicial", "builtin",
    "check_gsb", "complete", "interreduce", "irr_enumerate", "make_order", "membership",
    "normal_form", "parse_poly", "parse_presentation", "parse_word", "reduce",
]
