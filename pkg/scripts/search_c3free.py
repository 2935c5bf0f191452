"""
List the triangle-free Bonnet-Myers sharp graphs in the networkx graph atlas.

Every connected triangle-free atlas graph with at most ``--max-vertices``
vertices is checked for sharpness. For each sharp one the script prints its
atlas index, size, diameter, whether it is bipartite and whether every edge
``uv`` has ``max(d_u, d_v) = L``. A final line counts the graphs that break
either pattern.

Usage:
  PYTHONPATH=src python scripts/search_c3free.py [--max-vertices 7] [-v]
"""

import argparse

import networkx as nx

from llycurv.graph import Graph, is_triangle_free
from llycurv.sharpness import sharpness_verdict
from llycurv.util import set_verbose


def _max_degree_is_diameter(graph: Graph, longest: int) -> bool:
    return all(max(graph.degree(u), graph.degree(v)) == longest for u, v in graph.edges())


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__, formatter_class=argparse.RawDescriptionHelpFormatter)
    ap.add_argument("--max-vertices", type=int, default=7, help="Largest order to scan (the atlas stops at 7)")
    ap.add_argument("-v", "--verbose", action="store_true")
    args = ap.parse_args()
    if args.verbose:
        set_verbose(True)

    scanned = sharp = exceptions = 0
    for index, atlas_graph in enumerate(nx.graph_atlas_g()):
        n = atlas_graph.number_of_nodes()
        if n > args.max_vertices:
            break
        if n < 2 or not nx.is_connected(atlas_graph):
            continue
        graph = Graph.from_networkx(atlas_graph)
        if not is_triangle_free(graph):
            continue
        scanned += 1
        verdict = sharpness_verdict(graph)
        if not verdict.sharp:
            continue
        sharp += 1
        bipartite = nx.is_bipartite(atlas_graph)
        degree_pattern = _max_degree_is_diameter(graph, verdict.diameter)
        if not (bipartite and degree_pattern):
            exceptions += 1
        print(  # noqa: T201
            f"G{index}: n={n} m={graph.edge_count} L={verdict.diameter} "
            f"bipartite={bipartite} max_degree_is_L={degree_pattern}"
        )
    print(f"{scanned} triangle-free graphs scanned, {sharp} sharp, {exceptions} break a pattern")  # noqa: T201


if __name__ == "__main__":
    main()
