from llycurv.curvature import (
    all_edge_curvatures,
    all_edge_reports,
    crosscheck_edge,
    curvature_upper_bound,
    edge_curvature,
    lazy_lp_curvature,
    lipschitz_curvature,
    ollivier_curvature,
)
from llycurv.generators import generate, generate_irregular_sharp
from llycurv.graph import Graph, diameter, parse_edge_list, read_edge_list
from llycurv.sharpness import sharpness_verdict
from llycurv.util import UTIL, Util

__all__ = [
    "Graph",
    "UTIL",
    "Util",
    "all_edge_curvatures",
    "all_edge_reports",
    "crosscheck_edge",
    "curvature_upper_bound",
    "diameter",
    "edge_curvature",
    "generate",
    "generate_irregular_sharp",
    "lazy_lp_curvature",
    "lipschitz_curvature",
    "ollivier_curvature",
    "parse_edge_list",
    "read_edge_list",
    "sharpness_verdict",
]
