"""
Exact Lin-Lu-Yau curvature of graph edges.

The primary path turns the edge ``xy`` into a small integer transportation
problem (the blow-up instance) and reads the curvature off its optimal cost:

    κ(x, y) = 1 + 1/d_y - C(σ*) / lcm(d_x, d_y)

Two independent oracles recompute the same value: the lazy random walk
transport distance (``lazy_lp_curvature``) and the minimum of the Laplacian
gradient over integer 1-Lipschitz functions (``lipschitz_curvature``).
Optimal pairs from the two sides are tied together by ``slackness_check`` and
``star_coupling_of``.
"""

from __future__ import annotations

import math
import time
from dataclasses import dataclass, replace
from fractions import Fraction
from multiprocessing import Pool
from typing import Iterable, Sequence

from llycurv.graph import Graph, distances_from
from llycurv.transport import (
    IntegerCoupling,
    TransportInstance,
    has_perfect_matching,
    hall_witness_search,
    min_cost_transport,
)
from llycurv.util import UTIL, logger
from llycurv.validators import (
    CurvatureError,
    GraphValidator,
    InstanceTooLargeError,
    ParameterValidator,
    StarCouplingError,
)

# Any u in N[x] and v in N[y] are at most this far apart when xy is an edge.
_LOCAL_RADIUS = 3

ORACLES = ("lp", "lipschitz")


@dataclass(frozen=True)
class BlowupInstance:
    """
    Local transport problem of an edge.

    The edge is stored with ``d_x <= d_y``. Mass ``c_x - c_y`` sits on every
    vertex of ``N(x) ∩ N[y]`` and ``c_x`` on every vertex of ``N(x) \\ N[y]``;
    ``μ_y`` puts ``c_y`` on every vertex of ``N(y) \\ N[x]``. Only vertices with
    positive mass appear in ``sources`` and ``targets``.
    """

    x: int
    y: int
    d_x: int
    d_y: int
    lcm: int
    c_x: int
    """``lcm / d_x``."""
    c_y: int
    """``lcm / d_y``."""
    x_neighbors: tuple[int, ...]
    y_neighbors: tuple[int, ...]
    sources: tuple[int, ...]
    """Vertices carrying ``μ_x`` mass, ascending."""
    mu_x: tuple[int, ...]
    targets: tuple[int, ...]
    """Vertices carrying ``μ_y`` mass, ascending."""
    mu_y: tuple[int, ...]
    cost: tuple[tuple[int, ...], ...]
    """Graph distance from ``sources[i]`` to ``targets[j]``."""

    @property
    def common(self) -> frozenset[int]:
        """``N(x) ∩ N(y)``."""
        return frozenset(self.x_neighbors) & frozenset(self.y_neighbors)

    @property
    def total_mass(self) -> int:
        """``|X| = |Y|``."""
        return sum(self.mu_x)

    @property
    def unit_edges(self) -> tuple[tuple[int, int], ...]:
        """Index pairs at distance 1: the edges of ``H₁`` on base vertices."""
        return tuple(
            (i, j) for i, row in enumerate(self.cost) for j, c in enumerate(row) if c == 1
        )

    def transport_instance(self) -> TransportInstance:
        return TransportInstance(self.mu_x, self.mu_y, self.cost)

    def blowup_sizes(self) -> dict[int, int]:
        """``|S_u|`` for every vertex with positive mass on either side."""
        sizes = dict(zip(self.sources, self.mu_x))
        sizes.update(zip(self.targets, self.mu_y))
        return sizes


def blowup_instance(graph: Graph, x: int, y: int) -> BlowupInstance:
    """
    Build the blow-up instance of the edge ``xy``.

    The endpoints are swapped when ``d_x > d_y``; with equal degrees the given
    order is kept.

    Raises:
        DisconnectedGraphError: If ``graph`` is not connected.
        NotAnEdgeError: If ``x`` and ``y`` are not adjacent.
    """
    GraphValidator.require_connected(graph)
    GraphValidator.require_edge(graph, x, y)
    if graph.degree(x) > graph.degree(y):
        x, y = y, x
    d_x, d_y = graph.degree(x), graph.degree(y)
    lcm = math.lcm(d_x, d_y)
    c_x, c_y = lcm // d_x, lcm // d_y
    n_x, n_y = graph.neighbor_set(x), graph.neighbor_set(y)
    closed_x, closed_y = n_x | {x}, n_y | {y}

    sources: list[int] = []
    mu_x: list[int] = []
    for u in sorted(n_x):
        mass = c_x - c_y if u in closed_y else c_x
        if mass > 0:
            sources.append(u)
            mu_x.append(mass)
    targets = sorted(n_y - closed_x)
    mu_y = [c_y] * len(targets)
    if sum(mu_x) != sum(mu_y):
        raise CurvatureError(f"blow-up masses do not balance on edge {graph.labels[x]} {graph.labels[y]}")

    cost = []
    for u in sources:
        reach = distances_from(graph, u, cutoff=_LOCAL_RADIUS)
        cost.append(tuple(reach[v] for v in targets))
    return BlowupInstance(
        x=x,
        y=y,
        d_x=d_x,
        d_y=d_y,
        lcm=lcm,
        c_x=c_x,
        c_y=c_y,
        x_neighbors=graph.neighbors(x),
        y_neighbors=graph.neighbors(y),
        sources=tuple(sources),
        mu_x=tuple(mu_x),
        targets=tuple(targets),
        mu_y=tuple(mu_y),
        cost=tuple(cost),
    )


@dataclass(frozen=True)
class LipschitzWitness:
    """Integer 1-Lipschitz function on ``N[x] ∪ N[y]`` with ``f(target) - f(source) = 1``."""

    source: int
    target: int
    f: dict[int, int]
    gradient: Fraction
    """``Δf(source) - Δf(target)``."""

    def oriented(self, x: int, y: int) -> LipschitzWitness:
        """
        The same witness expressed for the orientation ``(x, y)``.

        Reversing the edge replaces ``f`` with ``1 - f``, which keeps the
        gradient.
        """
        if (self.source, self.target) == (x, y):
            return self
        if (self.source, self.target) == (y, x):
            return LipschitzWitness(x, y, {v: 1 - value for v, value in self.f.items()}, self.gradient)
        raise CurvatureError("witness belongs to a different edge")


@dataclass(frozen=True)
class StarCoupling:
    """Signed matrix ``B`` with finite support, positive only at ``(x, y)``."""

    x: int
    y: int
    entries: dict[tuple[int, int], Fraction]
    value: Fraction
    """``Σ B(u, v) d(u, v)``."""

    def row_sum(self, u: int) -> Fraction:
        return sum((b for (a, _), b in self.entries.items() if a == u), Fraction(0))

    def column_sum(self, v: int) -> Fraction:
        return sum((b for (_, c), b in self.entries.items() if c == v), Fraction(0))


@dataclass(frozen=True)
class CurvatureReport:
    """Curvature of one edge with everything needed to audit it."""

    edge: tuple[int, int]
    """The edge as requested."""

    kappa: Fraction
    instance: BlowupInstance
    coupling: IntegerCoupling
    upper_bound: Fraction
    """``(|N(x) ∩ N(y)| + 2) / d_y``."""

    bound_attained: bool
    """``H₁`` has a perfect matching."""

    lp_kappa: Fraction | None = None
    ollivier_kappa: Fraction | None = None
    lipschitz_kappa: Fraction | None = None
    lipschitz_witness: LipschitzWitness | None = None
    slackness: bool | None = None
    star_value: Fraction | None = None

    @property
    def agrees(self) -> bool | None:
        """
        ``None`` when no oracle ran; otherwise whether every oracle matches
        ``kappa`` and ``kappa >= ollivier_kappa``.
        """
        checked = [v for v in (self.lp_kappa, self.lipschitz_kappa, self.star_value) if v is not None]
        if not checked and self.ollivier_kappa is None and self.slackness is None:
            return None
        if any(value != self.kappa for value in checked):
            return False
        if self.ollivier_kappa is not None and self.kappa < self.ollivier_kappa:
            return False
        return self.slackness is not False


def _upper_bound(instance: BlowupInstance) -> tuple[Fraction, bool]:
    bound = Fraction(len(instance.common) + 2, instance.d_y)
    attained, _ = has_perfect_matching(instance.mu_x, instance.mu_y, instance.unit_edges)
    return bound, attained


def edge_curvature(graph: Graph, x: int, y: int) -> CurvatureReport:
    """
    Exact curvature of the edge ``xy`` from the optimal blow-up coupling.

    Raises:
        DisconnectedGraphError: If ``graph`` is not connected.
        NotAnEdgeError: If ``x`` and ``y`` are not adjacent.

    Examples:
        >>> from llycurv.generators import lopsided_edge
        >>> g = lopsided_edge()
        >>> edge_curvature(g, g.index("x"), g.index("y")).kappa
        Fraction(1, 12)
    """
    start = time.perf_counter()
    instance = blowup_instance(graph, x, y)
    coupling = min_cost_transport(instance.transport_instance())
    kappa = 1 + Fraction(1, instance.d_y) - Fraction(coupling.cost, instance.lcm)
    bound, attained = _upper_bound(instance)
    logger.debug(
        "edge %s %s: cost=%d lcm=%d kappa=%s (%.6f secs)",
        graph.labels[x], graph.labels[y], coupling.cost, instance.lcm, kappa, time.perf_counter() - start,
    )
    return CurvatureReport((x, y), kappa, instance, coupling, bound, attained)


def curvature_upper_bound(graph: Graph, x: int, y: int) -> tuple[Fraction, bool]:
    """
    Upper bound ``(|N(x) ∩ N(y)| + 2) / d_y`` and whether curvature attains it.

    The bound is attained exactly when the unit-cost blow-up graph ``H₁`` has
    a perfect matching.
    """
    return _upper_bound(blowup_instance(graph, x, y))


def lazy_lp_curvature(graph: Graph, x: int, y: int, alpha: Fraction | int | None = None) -> Fraction:
    """
    ``κ_α(x, y) / (1 - α)`` from the lazy random walk measures.

    Both measures are scaled to integers by the least common denominator and
    solved exactly. For ``α >= 1 / (max(d_x, d_y) + 1)`` the result equals
    ``κ(x, y)``; at ``α = 0`` it is the Ollivier curvature.

    Args:
        graph: Connected graph.
        x: One endpoint.
        y: The other endpoint.
        alpha: Idleness in ``[0, 1)``; defaults to ``1 / (max(d_x, d_y) + 1)``.

    Raises:
        CurvatureError: If ``alpha`` is a float or out of range.
    """
    GraphValidator.require_connected(graph)
    GraphValidator.require_edge(graph, x, y)
    d_x, d_y = graph.degree(x), graph.degree(y)
    if alpha is None:
        alpha = Fraction(1, max(d_x, d_y) + 1)
    alpha = ParameterValidator.require_idleness(alpha)

    def lazy_measure(center: int, degree: int) -> dict[int, Fraction]:
        measure = {center: alpha}
        measure.update({u: (1 - alpha) / degree for u in graph.neighbors(center)})
        return {v: mass for v, mass in sorted(measure.items()) if mass > 0}

    m_x, m_y = lazy_measure(x, d_x), lazy_measure(y, d_y)
    scale = math.lcm(*(mass.denominator for mass in (*m_x.values(), *m_y.values())))
    sources, targets = list(m_x), list(m_y)
    cost = []
    for u in sources:
        reach = distances_from(graph, u, cutoff=_LOCAL_RADIUS)
        cost.append(tuple(reach[v] for v in targets))
    instance = TransportInstance(
        tuple(int(m_x[u] * scale) for u in sources),
        tuple(int(m_y[v] * scale) for v in targets),
        tuple(cost),
    )
    distance = Fraction(min_cost_transport(instance).cost, scale)
    return (1 - distance) / (1 - alpha)


def ollivier_curvature(graph: Graph, x: int, y: int) -> Fraction:
    """Ollivier curvature ``κ₀(x, y)`` (no idleness)."""
    return lazy_lp_curvature(graph, x, y, 0)


class _LipschitzSearch:
    """Branch and bound over integer 1-Lipschitz functions, lexicographic order."""

    def __init__(self, free: Sequence[int], weight: dict[int, int], dist: dict[int, dict[int, int]]) -> None:
        self.free = list(free)
        self.weight = [weight[w] for w in self.free]
        self.dist = dist
        self.best: int | None = None
        self.best_values: list[int] | None = None
        self.values: list[int] = []

    def _optimistic(self, k: int, lo: list[int], hi: list[int]) -> int:
        return sum(min(self.weight[m] * lo[m], self.weight[m] * hi[m]) for m in range(k, len(self.free)))

    def run(self, lo: list[int], hi: list[int]) -> None:
        self._search(0, 0, lo, hi)

    def _search(self, k: int, partial: int, lo: list[int], hi: list[int]) -> None:
        if k == len(self.free):
            if self.best is None or partial < self.best:
                self.best = partial
                self.best_values = list(self.values)
            return
        if self.best is not None and partial + self._optimistic(k, lo, hi) >= self.best:
            return
        w = self.free[k]
        for value in range(lo[k], hi[k] + 1):
            next_lo, next_hi = lo[:], hi[:]
            for m in range(k + 1, len(self.free)):
                gap = self.dist[w][self.free[m]]
                next_lo[m] = max(next_lo[m], value - gap)
                next_hi[m] = min(next_hi[m], value + gap)
                if next_lo[m] > next_hi[m]:
                    break
            else:
                self.values.append(value)
                self._search(k + 1, partial + self.weight[k] * value, next_lo, next_hi)
                self.values.pop()


def lipschitz_curvature(graph: Graph, x: int, y: int) -> tuple[Fraction, LipschitzWitness]:
    """
    Curvature as the minimum of ``Δf(x) - Δf(y)`` over integer 1-Lipschitz ``f``.

    ``f`` ranges over integer functions on ``S = N[x] ∪ N[y]`` with
    ``f(x) = 0``, ``f(y) = 1``, values in ``[-2, 2]`` and
    ``|f(u) - f(v)| <= d(u, v)`` on ``S``. Candidates are visited in
    lexicographic order of ``S`` and the first minimizer is returned.

    Raises:
        InstanceTooLargeError: If ``|S|`` exceeds ``UTIL.lipschitz_support_limit``.
    """
    GraphValidator.require_connected(graph)
    GraphValidator.require_edge(graph, x, y)
    support = sorted(graph.closed_neighborhood(x) | graph.closed_neighborhood(y))
    if len(support) > UTIL.lipschitz_support_limit:
        raise InstanceTooLargeError(
            f"|N[x] ∪ N[y]| = {len(support)} exceeds the Lipschitz limit of {UTIL.lipschitz_support_limit}"
        )
    d_x, d_y = graph.degree(x), graph.degree(y)
    lcm = math.lcm(d_x, d_y)
    c_x, c_y = lcm // d_x, lcm // d_y
    n_x, n_y = graph.neighbor_set(x), graph.neighbor_set(y)
    weight = {w: (c_x if w in n_x else 0) - (c_y if w in n_y else 0) for w in support}
    dist = {}
    for u in support:
        reach = distances_from(graph, u, cutoff=_LOCAL_RADIUS)
        dist[u] = {v: reach[v] for v in support}

    fixed = {x: 0, y: 1}
    free = [w for w in support if w not in fixed]
    lo = [max([-2] + [value - dist[s][w] for s, value in fixed.items()]) for w in free]
    hi = [min([2] + [value + dist[s][w] for s, value in fixed.items()]) for w in free]
    search = _LipschitzSearch(free, weight, dist)
    search.run(lo, hi)

    constant = lcm + sum(weight[s] * value for s, value in fixed.items())
    kappa = Fraction(constant + search.best, lcm)
    f = dict(fixed)
    f.update(zip(free, search.best_values))
    return kappa, LipschitzWitness(x, y, dict(sorted(f.items())), kappa)


def slackness_check(instance: BlowupInstance, sigma: IntegerCoupling, witness: LipschitzWitness) -> bool:
    """
    Complementary slackness between an optimal coupling and an optimal ``f``.

    Returns ``True`` iff every positive ``σ(u, v)`` has ``f(v) - f(u) = d(u, v)``.
    """
    f = witness.oriented(instance.x, instance.y).f
    for i, j, _ in sigma.support():
        u, v = instance.sources[i], instance.targets[j]
        if f[v] - f[u] != instance.cost[i][j]:
            logger.debug("slackness fails on σ(%d, %d): f gap %d, distance %d", u, v, f[v] - f[u], instance.cost[i][j])
            return False
    return True


def star_coupling_of(instance: BlowupInstance, sigma: IntegerCoupling) -> StarCoupling:
    """
    Signed ∗-coupling built from a blow-up coupling.

    ``B(x, y) = 1 + 1/d_y``, ``B(u, u) = -1/d_y`` on ``N[x] ∩ N[y]`` and
    ``B(u, v) = -σ(u, v) / lcm`` on the transport support. When ``σ`` is
    optimal, ``Σ B(u, v) d(u, v)`` equals the curvature.

    Raises:
        StarCouplingError: If ``B`` breaks any of the sign, zero-sum,
            row-marginal or column-marginal conditions.
    """
    if len(sigma.flow) != len(instance.sources) or any(len(row) != len(instance.targets) for row in sigma.flow):
        raise StarCouplingError("coupling shape does not match the blow-up instance")
    x, y = instance.x, instance.y
    entries: dict[tuple[int, int], Fraction] = {(x, y): 1 + Fraction(1, instance.d_y)}
    for u in sorted(instance.common | {x, y}):
        entries[(u, u)] = -Fraction(1, instance.d_y)
    value = entries[(x, y)]
    for i, row in enumerate(sigma.flow):
        for j, mass in enumerate(row):
            if mass:
                entries[(instance.sources[i], instance.targets[j])] = -Fraction(mass, instance.lcm)
                value -= Fraction(mass * instance.cost[i][j], instance.lcm)
    coupling = StarCoupling(x, y, entries, value)
    _check_star_conditions(instance, coupling)
    return coupling


def _check_star_conditions(instance: BlowupInstance, coupling: StarCoupling) -> None:
    x, y = instance.x, instance.y
    for (u, v), b in coupling.entries.items():
        if (u, v) != (x, y) and b > 0:
            raise StarCouplingError(f"B({u}, {v}) = {b} is positive away from (x, y)")
    if coupling.entries[(x, y)] <= 0:
        raise StarCouplingError("B(x, y) must be positive")
    if sum(coupling.entries.values()) != 0:
        raise StarCouplingError("entries of B do not sum to zero")
    rows = {u for u, _ in coupling.entries} | set(instance.x_neighbors)
    for u in rows - {x}:
        expected = -Fraction(1, instance.d_x) if u in instance.x_neighbors else Fraction(0)
        if coupling.row_sum(u) != expected:
            raise StarCouplingError(f"row {u} sums to {coupling.row_sum(u)}, expected {expected}")
    columns = {v for _, v in coupling.entries} | set(instance.y_neighbors)
    for v in columns - {y}:
        expected = -Fraction(1, instance.d_y) if v in instance.y_neighbors else Fraction(0)
        if coupling.column_sum(v) != expected:
            raise StarCouplingError(f"column {v} sums to {coupling.column_sum(v)}, expected {expected}")


def hall_violation(graph: Graph, x: int, y: int) -> tuple[tuple[int, ...], tuple[int, ...]] | None:
    """
    Sets ``(T₁, T₂)`` breaking the matching condition of ``H₁``, or ``None``.

    ``T₁ ⊆ N(x) \\ N[y]`` and ``T₂ ⊆ N(x) ∩ N[y]`` (for the degree-normalized
    orientation) with
    ``c_y |N(T₁ ∪ T₂) ∩ (N(y) \\ N[x])| < c_x |T₁| + (c_x - c_y) |T₂|``.
    """
    instance = blowup_instance(graph, x, y)
    subset = hall_witness_search(instance.mu_x, instance.mu_y, instance.unit_edges)
    if subset is None:
        return None
    closed_y = set(instance.y_neighbors) | {instance.y}
    vertices = [instance.sources[i] for i in subset]
    return (
        tuple(v for v in vertices if v not in closed_y),
        tuple(v for v in vertices if v in closed_y),
    )


def crosscheck_edge(graph: Graph, x: int, y: int, oracles: Iterable[str] = ORACLES) -> CurvatureReport:
    """
    ``edge_curvature`` with the requested oracles filled in.

    ``"lp"`` adds the lazy-walk value at the default idleness and the Ollivier
    curvature; ``"lipschitz"`` adds the Lipschitz minimum, its witness and the
    slackness check. The ∗-coupling value is always recorded.
    """
    oracles = tuple(oracles)
    for oracle in oracles:
        ParameterValidator.require_member("oracle", oracle, ORACLES)
    report = edge_curvature(graph, x, y)
    updates: dict = {"star_value": star_coupling_of(report.instance, report.coupling).value}
    if "lp" in oracles:
        updates["lp_kappa"] = lazy_lp_curvature(graph, x, y)
        updates["ollivier_kappa"] = ollivier_curvature(graph, x, y)
    if "lipschitz" in oracles:
        kappa, witness = lipschitz_curvature(graph, x, y)
        updates["lipschitz_kappa"] = kappa
        updates["lipschitz_witness"] = witness
        updates["slackness"] = slackness_check(report.instance, report.coupling, witness)
    return replace(report, **updates)


# Worker-side graph; set by the pool initializer.
_GRAPH: Graph | None = None


def _init_worker(graph: Graph, settings: dict) -> None:
    global _GRAPH
    _GRAPH = graph
    UTIL.restore(settings)


def _evaluate_edge(graph: Graph, edge: tuple[int, int], oracles: tuple[str, ...]) -> CurvatureReport:
    if oracles:
        return crosscheck_edge(graph, *edge, oracles=oracles)
    return edge_curvature(graph, *edge)


def _wrap_evaluate_edge(stuff: tuple[tuple[int, int], tuple[str, ...]]) -> CurvatureReport:
    edge, oracles = stuff
    return _evaluate_edge(_GRAPH, edge, oracles)


def all_edge_reports(
    graph: Graph,
    oracles: Iterable[str] = (),
    processes: int | None = None,
) -> dict[tuple[int, int], CurvatureReport]:
    """
    Curvature report of every edge, keyed ``(u, v)`` with ``u < v`` in edge order.

    Args:
        graph: Connected graph.
        oracles: Oracles to run per edge, as in ``crosscheck_edge``.
        processes: Worker count; defaults to ``UTIL.processes``.
    """
    GraphValidator.require_connected(graph)
    oracles = tuple(oracles)
    processes = UTIL.processes if processes is None else processes
    ParameterValidator.require_int_at_least("processes", processes, 1)
    edges = graph.edges()
    logger.info("computing curvature of %d edges on %d vertices", len(edges), graph.vertex_count)
    start = time.perf_counter()
    if processes > 1 and len(edges) > 1:
        chunksize, extra = divmod(len(edges), processes * 4)
        if extra:
            chunksize += 1
        with Pool(processes=processes, initializer=_init_worker, initargs=(graph, UTIL.snapshot())) as pool:
            results = list(pool.imap(_wrap_evaluate_edge, [(e, oracles) for e in edges], chunksize=chunksize))
    else:
        results = [_evaluate_edge(graph, e, oracles) for e in edges]
    logger.info("%8f secs for edge curvature", time.perf_counter() - start)
    return dict(zip(edges, results))


def all_edge_curvatures(graph: Graph, processes: int | None = None) -> dict[tuple[int, int], Fraction]:
    """``κ`` of every edge, keyed like ``all_edge_reports``."""
    return {edge: report.kappa for edge, report in all_edge_reports(graph, processes=processes).items()}
