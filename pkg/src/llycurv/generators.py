"""
Named graph families.

Families are addressed by name and a list of integer parameters through
``generate``; the CLI exposes the same table. Generated vertex orders are
lexicographic in the family's natural labels so reports stay reproducible.
"""

from __future__ import annotations

from itertools import combinations, product
from typing import Callable

import networkx as nx

from llycurv.graph import Graph, parse_edge_list
from llycurv.util import logger
from llycurv.validators import CurvatureError, ParameterValidator

LOPSIDED_EDGES = """\
# Edge x y with d_x = 3 and d_y = 4; the optimal transport costs 14.
x y
x x1
x z
y z
y y1
y y2
z y1
"""


def _bits(node: tuple[int, ...]) -> str:
    return "".join(str(bit) for bit in node)


def path(n: int) -> Graph:
    ParameterValidator.require_int_at_least("n", n, 2)
    return Graph.from_networkx(nx.path_graph(n))


def cycle(n: int) -> Graph:
    ParameterValidator.require_int_at_least("n", n, 3)
    return Graph.from_networkx(nx.cycle_graph(n))


def complete(m: int) -> Graph:
    ParameterValidator.require_int_at_least("m", m, 2)
    return Graph.from_networkx(nx.complete_graph(m))


def complete_minus_matching(m: int, k: int) -> Graph:
    """``K_m`` with the ``k`` disjoint edges ``(0,1), (2,3), ...`` removed."""
    ParameterValidator.require_int_at_least("m", m, 2)
    ParameterValidator.require_int_at_least("k", k, 0)
    if 2 * k > m:
        raise CurvatureError(f"a matching of K_{m} has at most {m // 2} edges, got k={k}")
    graph = nx.complete_graph(m)
    graph.remove_edges_from((2 * i, 2 * i + 1) for i in range(k))
    return Graph.from_networkx(graph)


def complete_minus_path(m: int, k: int) -> Graph:
    """``K_m`` with the ``k``-edge path ``0-1-...-k`` removed."""
    ParameterValidator.require_int_at_least("m", m, 3)
    ParameterValidator.require_int_at_least("k", k, 1)
    if k > m - 1:
        raise CurvatureError(f"a path in K_{m} has at most {m - 1} edges, got k={k}")
    graph = nx.complete_graph(m)
    graph.remove_edges_from((i, i + 1) for i in range(k))
    return Graph.from_networkx(graph)


def hypercube(n: int) -> Graph:
    """``Q_n`` on length-``n`` bitstrings."""
    ParameterValidator.require_int_at_least("n", n, 1)
    return Graph.from_networkx(nx.hypercube_graph(n), label=_bits)


def cocktail(n: int) -> Graph:
    """Cocktail party graph ``CP(n)``: ``K_2n`` minus a perfect matching."""
    ParameterValidator.require_int_at_least("n", n, 2)
    return complete_minus_matching(2 * n, n)


def johnson(n: int, k: int) -> Graph:
    """
    Johnson graph ``J(n, k)``.

    Vertices are the ``k``-subsets of ``{1..n}`` written as ``1-2-3``; two
    subsets are adjacent when they share ``k - 1`` elements.
    """
    ParameterValidator.require_int_at_least("k", k, 1)
    ParameterValidator.require_int_at_least("n", n, k + 1)
    subsets = list(combinations(range(1, n + 1), k))
    edges = [
        (i, j)
        for i, j in combinations(range(len(subsets)), 2)
        if len(set(subsets[i]) & set(subsets[j])) == k - 1
    ]
    return Graph.from_edges(["-".join(map(str, s)) for s in subsets], edges)


def demicube(n: int) -> Graph:
    """Half-cube: even-weight bitstrings of length ``n``, adjacent at Hamming distance 2."""
    ParameterValidator.require_int_at_least("n", n, 2)
    words = [word for word in product((0, 1), repeat=n) if sum(word) % 2 == 0]
    edges = [
        (i, j)
        for i, j in combinations(range(len(words)), 2)
        if sum(a != b for a, b in zip(words[i], words[j])) == 2
    ]
    return Graph.from_edges([_bits(word) for word in words], edges)


def gosset() -> Graph:
    """
    The Gosset graph on 56 vertices.

    Two copies ``a`` and ``b`` of the 2-subsets of ``{1..8}``. Inside a copy two
    pairs are adjacent when they share one element; across copies when they
    are disjoint. Each vertex gets 12 + 15 = 27 neighbors.
    """
    pairs = list(combinations(range(1, 9), 2))
    labels = [f"{side}{p}{q}" for side in "ab" for p, q in pairs]
    size = len(pairs)
    edges: list[tuple[int, int]] = []
    for i, j in combinations(range(size), 2):
        if len(set(pairs[i]) & set(pairs[j])) == 1:
            edges.append((i, j))
            edges.append((size + i, size + j))
    for i in range(size):
        for j in range(size):
            if not set(pairs[i]) & set(pairs[j]):
                edges.append((i, size + j))
    return Graph.from_edges(labels, edges)


def erdos_renyi(n: int, percent: int, seed: int) -> Graph:
    """``G(n, p)`` with ``p = percent / 100``; the same seed always gives the same graph."""
    ParameterValidator.require_int_at_least("n", n, 1)
    ParameterValidator.require_int_at_least("percent", percent, 0)
    if percent > 100:
        raise CurvatureError(f"percent must be <= 100, got {percent}")
    ParameterValidator.require_int_at_least("seed", seed, 0)
    return Graph.from_networkx(nx.gnp_random_graph(n, percent / 100, seed=seed))


def cartesian(first: Graph, second: Graph) -> Graph:
    """Box product; vertex ``(u, v)`` is labelled ``u:v``."""
    product_graph = nx.cartesian_product(first.nx_graph, second.nx_graph)
    return Graph.from_networkx(
        product_graph,
        label=lambda node: f"{first.labels[node[0]]}:{second.labels[node[1]]}",
    )


def generate_irregular_sharp(r: int, t: int) -> Graph:
    """
    Irregular Bonnet-Myers sharp graph of diameter 3.

    With ``m = 2r + t`` the vertices are ``x``, ``u0..u(m-1)``,
    ``v0..v(m-1)`` and ``y``. ``x`` is joined to every ``u_i`` and ``y`` to
    every ``v_j``; ``u_i v_j`` is an edge when ``j`` lies in the cyclic window
    ``i, i+1, ..., i+r+1`` modulo ``m``. Both neighborhoods ``N(x)`` and
    ``N(y)`` are cliques, minus the matching ``{i, i+r+1}`` (``0 <= i <= r``)
    when ``t = 2``.

    Args:
        r: Window parameter, at least 1.
        t: 1 or 2.

    Returns:
        Graph with ``2 + 2m`` vertices; the poles have degree ``2r + t`` and
        every other vertex ``3(r + 1)``.
    """
    ParameterValidator.require_int_at_least("r", r, 1)
    ParameterValidator.require_member("t", t, (1, 2))
    m = 2 * r + t
    x, y = 0, 2 * m + 1
    u = list(range(1, m + 1))
    v = list(range(m + 1, 2 * m + 1))
    labels = ["x"] + [f"u{i}" for i in range(m)] + [f"v{j}" for j in range(m)] + ["y"]

    removed = {frozenset((i, i + r + 1)) for i in range(r + 1)} if t == 2 else set()
    edges: list[tuple[int, int]] = []
    edges += [(x, u[i]) for i in range(m)]
    edges += [(v[j], y) for j in range(m)]
    for side in (u, v):
        edges += [
            (side[i], side[j])
            for i, j in combinations(range(m), 2)
            if frozenset((i, j)) not in removed
        ]
    edges += [(u[i], v[(i + k) % m]) for i in range(m) for k in range(r + 2)]
    logger.debug("irregular sharp graph r=%d t=%d: %d vertices, %d edges", r, t, len(labels), len(edges))
    return Graph.from_edges(labels, edges)


def lopsided_edge() -> Graph:
    """The six-vertex edge example with ``κ(x, y) = 1/12``."""
    return parse_edge_list(LOPSIDED_EDGES)


FAMILIES: dict[str, tuple[Callable[..., Graph], tuple[str, ...]]] = {
    "path": (path, ("n",)),
    "cycle": (cycle, ("n",)),
    "complete": (complete, ("m",)),
    "complete-minus-matching": (complete_minus_matching, ("m", "k")),
    "complete-minus-path": (complete_minus_path, ("m", "k")),
    "hypercube": (hypercube, ("n",)),
    "cocktail": (cocktail, ("n",)),
    "johnson": (johnson, ("n", "k")),
    "demicube": (demicube, ("n",)),
    "gosset": (gosset, ()),
    "erdos-renyi": (erdos_renyi, ("n", "percent", "seed")),
    "irregular-sharp": (generate_irregular_sharp, ("r", "t")),
    "lopsided-edge": (lopsided_edge, ()),
}
"""Family name -> (builder, parameter names)."""


def generate(family: str, *params: int) -> Graph:
    """
    Build a member of a named family.

    Args:
        family: A key of ``FAMILIES``.
        params: Integer parameters in the order listed by ``FAMILIES``.

    Raises:
        CurvatureError: On an unknown family, a wrong parameter count or
            parameters the family does not accept.

    Examples:
        >>> generate("hypercube", 3).edge_count
        12
    """
    try:
        builder, names = FAMILIES[family]
    except KeyError:
        raise CurvatureError(f"unknown family {family!r}; choose from {sorted(FAMILIES)}") from None
    if len(params) != len(names):
        raise CurvatureError(
            f"{family} takes {len(names)} parameter(s) ({', '.join(names) or 'none'}), got {len(params)}"
        )
    return builder(*params)
