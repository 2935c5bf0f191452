"""
Simple undirected graphs, their shortest-path metric, and the edge-list format.

Vertices are the integers ``0..n-1``; every vertex also carries a display
label, and the edge-list format speaks in labels only.
"""

from __future__ import annotations

import sys
from dataclasses import dataclass
from functools import cached_property
from pathlib import Path
from typing import Callable, Hashable, Iterable, Sequence

import networkx as nx

from llycurv.validators import GraphFormatError, GraphValidator, VertexError


@dataclass(frozen=True)
class Graph:
    """
    Immutable simple undirected graph.

    Build instances with ``Graph.from_edges``, ``parse_edge_list`` or one of the
    generators rather than by hand; the constructor only checks invariants.
    """

    labels: tuple[str, ...]
    """Display label of every vertex, indexed by vertex."""

    adjacency: tuple[tuple[int, ...], ...]
    """Sorted neighbor indices of every vertex."""

    def __post_init__(self) -> None:
        if len(self.labels) != len(self.adjacency):
            raise GraphFormatError("labels and adjacency must have the same length")
        if len(set(self.labels)) != len(self.labels):
            raise GraphFormatError("vertex labels must be unique")
        n = len(self.labels)
        neighbor_sets = [frozenset(nbrs) for nbrs in self.adjacency]
        for v, nbrs in enumerate(self.adjacency):
            if list(nbrs) != sorted(neighbor_sets[v]):
                raise GraphFormatError(f"adjacency of {self.labels[v]} must be sorted and duplicate-free")
            for u in nbrs:
                if not 0 <= u < n:
                    raise GraphFormatError(f"neighbor index {u} of {self.labels[v]} out of range")
                if u == v:
                    raise GraphFormatError(f"self-loop at {self.labels[v]}")
                if v not in neighbor_sets[u]:
                    raise GraphFormatError(
                        f"adjacency is not symmetric between {self.labels[v]} and {self.labels[u]}"
                    )

    @classmethod
    def from_edges(cls, labels: Sequence[str], edges: Iterable[tuple[int, int]]) -> Graph:
        """
        Build a graph from vertex labels and index pairs.

        Raises:
            GraphFormatError: On self-loops, duplicate edges or bad indices.
        """
        n = len(labels)
        neighbor_sets: list[set[int]] = [set() for _ in range(n)]
        for u, v in edges:
            if not (0 <= u < n and 0 <= v < n):
                raise GraphFormatError(f"edge ({u}, {v}) refers to a missing vertex")
            if u == v:
                raise GraphFormatError(f"self-loop at {labels[u]}")
            if v in neighbor_sets[u]:
                raise GraphFormatError(f"duplicate edge {labels[u]} {labels[v]}")
            neighbor_sets[u].add(v)
            neighbor_sets[v].add(u)
        return cls(tuple(str(label) for label in labels), tuple(tuple(sorted(s)) for s in neighbor_sets))

    @classmethod
    def from_networkx(
        cls,
        graph: nx.Graph,
        label: Callable[[Hashable], str] = str,
        order: Sequence[Hashable] | None = None,
    ) -> Graph:
        """
        Convert a networkx graph.

        Args:
            graph: Source graph; self-loops are refused.
            label: Maps a networkx node to its display label.
            order: Vertex order; defaults to the sorted node list.
        """
        nodes = list(order) if order is not None else sorted(graph.nodes)
        index = {node: i for i, node in enumerate(nodes)}
        return cls.from_edges([label(node) for node in nodes],
                              ((index[u], index[v]) for u, v in graph.edges))

    @property
    def vertex_count(self) -> int:
        return len(self.labels)

    @property
    def edge_count(self) -> int:
        return sum(len(nbrs) for nbrs in self.adjacency) // 2

    @cached_property
    def _index(self) -> dict[str, int]:
        return {label: i for i, label in enumerate(self.labels)}

    @cached_property
    def _neighbor_sets(self) -> tuple[frozenset[int], ...]:
        return tuple(frozenset(nbrs) for nbrs in self.adjacency)

    def index(self, label: str) -> int:
        """
        Vertex index of ``label``.

        Raises:
            VertexError: If no vertex carries the label.
        """
        try:
            return self._index[label]
        except KeyError:
            raise VertexError(f"unknown vertex {label!r}") from None

    def neighbors(self, v: int) -> tuple[int, ...]:
        return self.adjacency[v]

    def neighbor_set(self, v: int) -> frozenset[int]:
        """``N(v)``."""
        return self._neighbor_sets[v]

    def closed_neighborhood(self, v: int) -> frozenset[int]:
        """``N[v] = N(v) ∪ {v}``."""
        return self._neighbor_sets[v] | {v}

    def degree(self, v: int) -> int:
        return len(self.adjacency[v])

    def degrees(self) -> tuple[int, ...]:
        return tuple(len(nbrs) for nbrs in self.adjacency)

    @property
    def is_regular(self) -> bool:
        return len(set(self.degrees())) <= 1

    def has_edge(self, u: int, v: int) -> bool:
        return v in self._neighbor_sets[u]

    def edges(self) -> tuple[tuple[int, int], ...]:
        """Every edge once, as ``(u, v)`` with ``u < v``, in lexicographic order."""
        return tuple((u, v) for u, nbrs in enumerate(self.adjacency) for v in nbrs if u < v)

    def set_neighborhood(self, vertices: Iterable[int]) -> frozenset[int]:
        """``N(S)``: vertices outside ``S`` adjacent to some vertex of ``S``."""
        vertices = frozenset(vertices)
        found: set[int] = set()
        for v in vertices:
            found.update(self._neighbor_sets[v])
        return frozenset(found - vertices)

    @cached_property
    def nx_graph(self) -> nx.Graph:
        """Frozen networkx view of the graph (nodes are vertex indices)."""
        graph = nx.Graph()
        graph.add_nodes_from(range(self.vertex_count))
        graph.add_edges_from(self.edges())
        return nx.freeze(graph)

    @cached_property
    def is_connected(self) -> bool:
        return self.vertex_count > 0 and nx.is_connected(self.nx_graph)

    @cached_property
    def distance_matrix(self) -> tuple[tuple[int | None, ...], ...]:
        """All-pairs distances; ``None`` marks an unreachable pair."""
        rows: list[tuple[int | None, ...]] = [()] * self.vertex_count
        for source, lengths in nx.all_pairs_shortest_path_length(self.nx_graph):
            rows[source] = tuple(lengths.get(v) for v in range(self.vertex_count))
        return tuple(rows)

    def distance(self, u: int, v: int) -> int | None:
        return self.distance_matrix[u][v]

    def relabel(self, permutation: Sequence[int]) -> Graph:
        """
        Isomorphic copy in which vertex ``v`` becomes vertex ``permutation[v]``.

        Labels travel with their vertices.
        """
        n = self.vertex_count
        if sorted(permutation) != list(range(n)):
            raise VertexError("relabel needs a permutation of the vertex indices")
        labels = [""] * n
        for v, image in enumerate(permutation):
            labels[image] = self.labels[v]
        return Graph.from_edges(labels, ((permutation[u], permutation[v]) for u, v in self.edges()))


@dataclass(frozen=True)
class DistanceMap:
    """Breadth-first distances from one source vertex."""

    source: int
    """Vertex the distances are measured from."""

    dist: tuple[int | None, ...]
    """Distance of every vertex; ``None`` when unreachable (or beyond the cutoff)."""

    def __getitem__(self, v: int) -> int | None:
        return self.dist[v]

    def reachable(self, v: int) -> bool:
        return self.dist[v] is not None

    def level(self, i: int) -> tuple[int, ...]:
        """``N_i(source)``: vertices at distance exactly ``i``."""
        return tuple(v for v, d in enumerate(self.dist) if d == i)

    @property
    def eccentricity(self) -> int:
        return max(d for d in self.dist if d is not None)


def distances_from(graph: Graph, source: int, cutoff: int | None = None) -> DistanceMap:
    """
    Exact shortest-path distances from ``source``.

    Args:
        graph: The graph.
        source: Start vertex.
        cutoff: Optional search depth; vertices farther away are reported as
            unreachable.
    """
    GraphValidator.require_vertex(graph, source)
    lengths = nx.single_source_shortest_path_length(graph.nx_graph, source, cutoff=cutoff)
    return DistanceMap(source, tuple(lengths.get(v) for v in range(graph.vertex_count)))


def diameter(graph: Graph) -> tuple[int, list[tuple[int, int]]]:
    """
    Diameter ``L`` and every unordered pair ``(u, v)``, ``u < v``, at distance ``L``.

    Raises:
        DisconnectedGraphError: If the graph is not connected.
    """
    GraphValidator.require_connected(graph)
    matrix = graph.distance_matrix
    longest = max(max(row) for row in matrix)
    witnesses = [
        (u, v)
        for u in range(graph.vertex_count)
        for v in range(u + 1, graph.vertex_count)
        if matrix[u][v] == longest
    ]
    return longest, witnesses


def interval(graph: Graph, x: int, y: int) -> frozenset[int]:
    """``[x, y]``: every vertex on some geodesic from ``x`` to ``y``."""
    GraphValidator.require_vertex(graph, x)
    GraphValidator.require_vertex(graph, y)
    GraphValidator.require_connected(graph)
    matrix = graph.distance_matrix
    target = matrix[x][y]
    return frozenset(w for w in range(graph.vertex_count) if matrix[x][w] + matrix[w][y] == target)


def is_triangle_free(graph: Graph) -> bool:
    """``True`` iff the graph contains no 3-cycle."""
    return not any(nx.triangles(graph.nx_graph).values())


def parse_edge_list(text: str) -> Graph:
    """
    Parse the edge-list format.

    One ``u v`` pair of whitespace-free tokens per line; ``#`` starts a
    comment and blank lines are ignored. Vertices are numbered in order of
    first appearance.

    Raises:
        GraphFormatError: On malformed lines, self-loops, duplicate edges or
            when the text holds no edge at all.
    """
    labels: list[str] = []
    index: dict[str, int] = {}
    edges: list[tuple[int, int]] = []
    seen: set[frozenset[int]] = set()
    for line_number, raw in enumerate(text.splitlines(), start=1):
        tokens = raw.split("#", 1)[0].split()
        if not tokens:
            continue
        if len(tokens) != 2:
            raise GraphFormatError(f"line {line_number}: expected two vertex tokens, got {len(tokens)}")
        u_label, v_label = tokens
        if u_label == v_label:
            raise GraphFormatError(f"line {line_number}: self-loop at {u_label}")
        for token in tokens:
            if token not in index:
                index[token] = len(labels)
                labels.append(token)
        key = frozenset((index[u_label], index[v_label]))
        if key in seen:
            raise GraphFormatError(f"line {line_number}: duplicate edge {u_label} {v_label}")
        seen.add(key)
        edges.append((index[u_label], index[v_label]))
    if not edges:
        raise GraphFormatError("edge list is empty")
    return Graph.from_edges(labels, edges)


def format_edge_list(graph: Graph) -> str:
    """
    Render ``graph`` in the edge-list format, one edge per line in vertex order.

    Raises:
        GraphFormatError: If a vertex is isolated (it could not be recovered).
    """
    isolated = [graph.labels[v] for v in range(graph.vertex_count) if graph.degree(v) == 0]
    if isolated:
        raise GraphFormatError(f"isolated vertices cannot be written as an edge list: {isolated}")
    return "".join(f"{graph.labels[u]} {graph.labels[v]}\n" for u, v in graph.edges())


def read_edge_list(path: str | Path) -> Graph:
    """Read an edge list from ``path``; ``'-'`` reads standard input."""
    if str(path) == "-":
        return parse_edge_list(sys.stdin.read())
    return parse_edge_list(Path(path).read_text(encoding="utf-8"))
