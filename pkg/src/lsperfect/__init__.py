"""Stable set polytopes, the LS+ lift and joined antiweb constraints on small graphs."""

from .generators import antiweb, g_emn, g_lt, line_graph, random_claw_free, web
from .graphcore import Graph, complement, parse_edge_list, stability_number
from .inequalities import is_joined_a_perfect, recognize_joined_antiweb
from .lsplus import eta_plus, is_lsplus_perfect, is_minimally_lsplus_imperfect, membership
from .polytope import LinearInequality, stab_facets

__version__ = "0.1.0"

__all__ = [
    "Graph",
    "LinearInequality",
    "antiweb",
    "complement",
    "eta_plus",
    "g_emn",
    "g_lt",
    "is_joined_a_perfect",
    "is_lsplus_perfect",
    "is_minimally_lsplus_imperfect",
    "line_graph",
    "membership",
    "parse_edge_list",
    "random_claw_free",
    "recognize_joined_antiweb",
    "stab_facets",
    "stability_number",
    "web",
]
