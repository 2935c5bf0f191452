"""
Integer transportation problems and bipartite blow-up matchings.

``min_cost_transport`` runs successive shortest paths with node potentials, so
every flow it returns is integral without any rounding step. Optimality can
be re-checked independently with ``is_optimal`` (no negative residual cycle).
"""

from __future__ import annotations

import heapq
from dataclasses import dataclass
from itertools import combinations
from typing import Sequence

import networkx as nx

from llycurv.util import UTIL, logger
from llycurv.validators import CurvatureError, InstanceTooLargeError, UnbalancedInstanceError


@dataclass(frozen=True)
class TransportInstance:
    """Balanced integer transportation problem between supply and demand sites."""

    supply: tuple[int, ...]
    """Mass available at every supply site."""

    demand: tuple[int, ...]
    """Mass required at every demand site."""

    cost: tuple[tuple[int, ...], ...]
    """``cost[i][j]`` to move one unit from supply ``i`` to demand ``j``."""

    def __post_init__(self) -> None:
        if any(mass < 0 for mass in self.supply) or any(mass < 0 for mass in self.demand):
            raise CurvatureError("masses must be nonnegative")
        if len(self.cost) != len(self.supply) or any(len(row) != len(self.demand) for row in self.cost):
            raise CurvatureError("cost matrix must be len(supply) x len(demand)")
        if any(c < 0 for row in self.cost for c in row):
            raise CurvatureError("costs must be nonnegative")

    @property
    def total_supply(self) -> int:
        return sum(self.supply)

    @property
    def total_demand(self) -> int:
        return sum(self.demand)

    def scaled(self, factor: int) -> TransportInstance:
        return TransportInstance(
            tuple(mass * factor for mass in self.supply),
            tuple(mass * factor for mass in self.demand),
            self.cost,
        )


@dataclass(frozen=True)
class IntegerCoupling:
    """Integer transport plan and its total cost."""

    flow: tuple[tuple[int, ...], ...]
    """``flow[i][j]`` units moved from supply ``i`` to demand ``j``."""

    cost: int
    """``Σ flow[i][j] · cost[i][j]``."""

    def row_sums(self) -> tuple[int, ...]:
        return tuple(sum(row) for row in self.flow)

    def column_sums(self) -> tuple[int, ...]:
        if not self.flow:
            return ()
        return tuple(sum(column) for column in zip(*self.flow))

    def support(self) -> list[tuple[int, int, int]]:
        """Positive entries as ``(i, j, mass)`` in row-major order."""
        return [(i, j, mass) for i, row in enumerate(self.flow) for j, mass in enumerate(row) if mass > 0]


def _require_balanced(instance: TransportInstance) -> None:
    if instance.total_supply != instance.total_demand:
        raise UnbalancedInstanceError(
            f"total supply {instance.total_supply} differs from total demand {instance.total_demand}"
        )


class _ResidualNetwork:
    """Arc-list residual network; arc ``a ^ 1`` is the reverse of arc ``a``."""

    def __init__(self, node_count: int) -> None:
        self.outgoing: list[list[int]] = [[] for _ in range(node_count)]
        self.head: list[int] = []
        self.capacity: list[int] = []
        self.cost: list[int] = []

    def add_arc(self, tail: int, head: int, capacity: int, cost: int) -> int:
        arc = len(self.head)
        for node, other, cap, c in ((tail, head, capacity, cost), (head, tail, 0, -cost)):
            self.outgoing[node].append(len(self.head))
            self.head.append(other)
            self.capacity.append(cap)
            self.cost.append(c)
        return arc

    def tail(self, arc: int) -> int:
        return self.head[arc ^ 1]

    def flow(self, arc: int) -> int:
        return self.capacity[arc ^ 1]

    def shortest_paths(self, source: int, potential: list[int]) -> tuple[list[int | None], list[int | None]]:
        """Dijkstra on reduced costs; ties keep the first predecessor found."""
        dist: list[int | None] = [None] * len(self.outgoing)
        predecessor: list[int | None] = [None] * len(self.outgoing)
        dist[source] = 0
        heap = [(0, source)]
        done = [False] * len(self.outgoing)
        while heap:
            d, node = heapq.heappop(heap)
            if done[node]:
                continue
            done[node] = True
            for arc in self.outgoing[node]:
                if self.capacity[arc] == 0:
                    continue
                nxt = self.head[arc]
                candidate = d + self.cost[arc] + potential[node] - potential[nxt]
                if dist[nxt] is None or candidate < dist[nxt]:
                    dist[nxt] = candidate
                    predecessor[nxt] = arc
                    heapq.heappush(heap, (candidate, nxt))
        return dist, predecessor


def min_cost_transport(instance: TransportInstance) -> IntegerCoupling:
    """
    Minimum-cost integer coupling of a balanced transportation problem.

    Augmenting paths are found in lowest-index order, so equal inputs always
    give the same coupling.

    Args:
        instance: Balanced problem.

    Returns:
        An optimal ``IntegerCoupling``.

    Raises:
        UnbalancedInstanceError: If total supply and total demand differ.

    Examples:
        >>> min_cost_transport(TransportInstance((2, 1), (1, 2), ((1, 2), (3, 1)))).cost
        4
    """
    _require_balanced(instance)
    p, q = len(instance.supply), len(instance.demand)
    total = instance.total_supply
    source, sink = 0, p + q + 1
    network = _ResidualNetwork(p + q + 2)
    for i, mass in enumerate(instance.supply):
        if mass:
            network.add_arc(source, 1 + i, mass, 0)
    cross: dict[tuple[int, int], int] = {}
    for i, supply in enumerate(instance.supply):
        for j, demand in enumerate(instance.demand):
            if supply and demand:
                cross[(i, j)] = network.add_arc(1 + i, 1 + p + j, total, instance.cost[i][j])
    for j, mass in enumerate(instance.demand):
        if mass:
            network.add_arc(1 + p + j, sink, mass, 0)

    potential = [0] * (p + q + 2)
    shipped = 0
    augmentations = 0
    while shipped < total:
        dist, predecessor = network.shortest_paths(source, potential)
        if dist[sink] is None:
            raise CurvatureError("transport network has no augmenting path left")
        for node, d in enumerate(dist):
            if d is not None:
                potential[node] += d
        push = total - shipped
        node = sink
        while node != source:
            arc = predecessor[node]
            push = min(push, network.capacity[arc])
            node = network.tail(arc)
        node = sink
        while node != source:
            arc = predecessor[node]
            network.capacity[arc] -= push
            network.capacity[arc ^ 1] += push
            node = network.tail(arc)
        shipped += push
        augmentations += 1

    flow = [[0] * q for _ in range(p)]
    for (i, j), arc in cross.items():
        flow[i][j] = network.flow(arc)
    cost = sum(flow[i][j] * instance.cost[i][j] for i in range(p) for j in range(q))
    coupling = IntegerCoupling(tuple(tuple(row) for row in flow), cost)
    logger.debug("transport %dx%d mass=%d cost=%d augmentations=%d", p, q, total, cost, augmentations)
    if UTIL.certify_transport and not is_optimal(instance, coupling):
        raise CurvatureError("transport solver returned a coupling with a negative residual cycle")
    return coupling


def is_feasible(instance: TransportInstance, coupling: IntegerCoupling) -> bool:
    """Marginals, nonnegativity and the recorded cost all match ``instance``."""
    flow = coupling.flow
    if len(flow) != len(instance.supply) or any(len(row) != len(instance.demand) for row in flow):
        return False
    if any(mass < 0 for row in flow for mass in row):
        return False
    if coupling.row_sums() != instance.supply:
        return False
    if instance.supply and coupling.column_sums() != instance.demand:
        return False
    expected = sum(
        mass * instance.cost[i][j] for i, row in enumerate(flow) for j, mass in enumerate(row)
    )
    return expected == coupling.cost


def is_optimal(instance: TransportInstance, coupling: IntegerCoupling) -> bool:
    """
    Certify ``coupling`` by the absence of a negative-cost residual cycle.

    Forward arcs ``supply -> demand`` always have residual capacity; backward
    arcs exist where the coupling moves positive mass.
    """
    if not is_feasible(instance, coupling):
        return False
    residual = nx.DiGraph()
    residual.add_nodes_from(("s", i) for i in range(len(instance.supply)))
    residual.add_nodes_from(("d", j) for j in range(len(instance.demand)))
    for i, row in enumerate(instance.cost):
        for j, c in enumerate(row):
            residual.add_edge(("s", i), ("d", j), weight=c)
            if coupling.flow[i][j] > 0:
                residual.add_edge(("d", j), ("s", i), weight=-c)
    if residual.number_of_edges() == 0:
        return True
    return not nx.negative_edge_cycle(residual, weight="weight")


def _require_matching_sizes(left_sizes: Sequence[int], right_sizes: Sequence[int]) -> None:
    if sum(left_sizes) != sum(right_sizes):
        raise UnbalancedInstanceError(
            f"blow-up sides differ in size: {sum(left_sizes)} != {sum(right_sizes)}"
        )


def has_perfect_matching(
    left_sizes: Sequence[int],
    right_sizes: Sequence[int],
    unit_edges: Sequence[tuple[int, int]],
) -> tuple[bool, IntegerCoupling | None]:
    """
    Decide whether the blow-up bipartite graph has a perfect matching.

    Base vertex ``i`` on the left stands for ``left_sizes[i]`` copies (and
    likewise on the right); copies of ``i`` and ``j`` are adjacent exactly when
    ``(i, j)`` is in ``unit_edges``. Solved as a maximum flow on the base graph:
    source arcs carry the left sizes, sink arcs the right sizes and unit edges
    are uncapacitated.

    Returns:
        ``(True, witness)`` where the witness is an integer coupling using only
        unit edges, or ``(False, None)``.

    Raises:
        UnbalancedInstanceError: If the two sides have different total size.
    """
    _require_matching_sizes(left_sizes, right_sizes)
    total = sum(left_sizes)
    if total == 0:
        return True, IntegerCoupling(tuple((0,) * len(right_sizes) for _ in left_sizes), 0)
    network = nx.DiGraph()
    network.add_node("source")
    network.add_node("sink")
    for i, size in enumerate(left_sizes):
        network.add_edge("source", ("l", i), capacity=size)
    for j, size in enumerate(right_sizes):
        network.add_edge(("r", j), "sink", capacity=size)
    for i, j in unit_edges:
        network.add_edge(("l", i), ("r", j))
    value, flow_dict = nx.maximum_flow(network, "source", "sink")
    if value != total:
        return False, None
    flow = tuple(
        tuple(int(flow_dict[("l", i)].get(("r", j), 0)) for j in range(len(right_sizes)))
        for i in range(len(left_sizes))
    )
    return True, IntegerCoupling(flow, total)


def hall_witness_search(
    left_sizes: Sequence[int],
    right_sizes: Sequence[int],
    unit_edges: Sequence[tuple[int, int]],
) -> tuple[int, ...] | None:
    """
    Smallest left set violating Hall's condition in the blow-up graph.

    Subsets of the positive-size left vertices are enumerated by increasing
    size; the first ``T`` with ``Σ_T left > Σ_{N(T)} right`` is returned.

    Raises:
        UnbalancedInstanceError: If the two sides have different total size.
        InstanceTooLargeError: If more than ``UTIL.hall_support_limit`` left
            vertices carry mass.
    """
    _require_matching_sizes(left_sizes, right_sizes)
    active = [i for i, size in enumerate(left_sizes) if size > 0]
    if len(active) > UTIL.hall_support_limit:
        raise InstanceTooLargeError(
            f"Hall search over {len(active)} left vertices exceeds the limit of {UTIL.hall_support_limit}"
        )
    reach: dict[int, set[int]] = {i: set() for i in active}
    for i, j in unit_edges:
        if i in reach and right_sizes[j] > 0:
            reach[i].add(j)
    for size in range(1, len(active) + 1):
        for subset in combinations(active, size):
            neighborhood = set().union(*(reach[i] for i in subset))
            if sum(left_sizes[i] for i in subset) > sum(right_sizes[j] for j in neighborhood):
                return subset
    return None
