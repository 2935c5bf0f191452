"""
Bonnet-Myers sharpness analysis.

A connected graph of diameter ``L`` is sharp when ``κ_min · L = 2``. For sharp
graphs this module verifies the structure every pole ``x`` must have: the level
identities of the distance function ``d(x, ·)``, interval fullness, the pole
degree and matching conditions, the Laplacian eigenfunction certificate, the
diameter-3 structure and the triangle-free rigidity of hypercubes.
"""

from __future__ import annotations

from dataclasses import dataclass, field, replace
from fractions import Fraction
from itertools import combinations
from typing import Iterable

from llycurv.curvature import CurvatureReport, all_edge_reports
from llycurv.graph import Graph, diameter, distances_from, interval, is_triangle_free
from llycurv.util import UTIL, logger
from llycurv.validators import GraphValidator, PreconditionError


@dataclass(frozen=True)
class CheckResult:
    """Outcome of one structural check."""

    passed: bool
    witnesses: tuple[str, ...] = ()
    """Human-readable description of every violation found."""

    applicable: bool = True
    """``False`` when the check's hypothesis does not hold (it then passes vacuously)."""

    @classmethod
    def from_violations(cls, violations: Iterable[str], applicable: bool = True) -> CheckResult:
        violations = tuple(violations)
        return cls(not violations, violations, applicable)


def _merge(results: Iterable[CheckResult]) -> CheckResult:
    results = list(results)
    witnesses = tuple(w for result in results for w in result.witnesses)
    return CheckResult(
        all(result.passed for result in results),
        witnesses,
        any(result.applicable for result in results),
    )


@dataclass(frozen=True)
class LevelRow:
    """Neighbor counts of one vertex relative to the distance levels of a pole."""

    vertex: int
    level: int
    up: int
    """``d⁺``: neighbors one level farther from the pole."""
    flat: int
    """``d⁰``: neighbors on the same level."""
    down: int
    """``d⁻``: neighbors one level closer to the pole."""


@dataclass(frozen=True)
class LevelProfile:
    pole: int
    eccentricity: int
    rows: tuple[LevelRow, ...]

    def __getitem__(self, v: int) -> LevelRow:
        return self.rows[v]

    def level(self, i: int) -> tuple[int, ...]:
        """``N_i(pole)``."""
        return tuple(row.vertex for row in self.rows if row.level == i)


def level_profile(graph: Graph, x: int) -> LevelProfile:
    """Level and ``(d⁺, d⁰, d⁻)`` of every vertex for ``f = d(x, ·)``."""
    GraphValidator.require_connected(graph)
    dist = distances_from(graph, x)
    rows = []
    for u in range(graph.vertex_count):
        around = [dist[v] - dist[u] for v in graph.neighbors(u)]
        rows.append(LevelRow(u, dist[u], around.count(1), around.count(0), around.count(-1)))
    return LevelProfile(x, dist.eccentricity, tuple(rows))


@dataclass(frozen=True)
class Diameter3Structure:
    """Structure of an irregular sharp graph of diameter 3."""

    poles: tuple[int, int]
    r: int | None
    t: int | None
    checks: dict[str, CheckResult]

    @property
    def passed(self) -> bool:
        return all(check.passed for check in self.checks.values())


@dataclass(frozen=True)
class HypercubeLabeling:
    """Either a labeling by subsets of ``{1..L}`` that is an isomorphism to ``Q_L``, or the reason none was found."""

    pole: int
    labels: dict[int, frozenset[int]] | None
    refutation: str | None = None

    @property
    def is_isomorphism(self) -> bool:
        return self.labels is not None


@dataclass(frozen=True)
class SharpnessReport:
    """Bonnet-Myers verdict of a graph with the evidence behind it."""

    diameter: int
    kappa_min: Fraction
    witness_edge: tuple[int, int]
    """First edge, in edge order, with ``κ = κ_min``."""

    sharp: bool
    """``κ_min · L = 2``."""

    pole_pairs: tuple[tuple[int, int], ...]
    edge_reports: dict[tuple[int, int], CurvatureReport] = field(repr=False, default_factory=dict)
    checks: dict[str, CheckResult] = field(default_factory=dict)
    structure: Diameter3Structure | None = None

    @property
    def poles(self) -> tuple[int, ...]:
        return tuple(sorted({v for pair in self.pole_pairs for v in pair}))

    def anti_poles(self, x: int) -> tuple[int, ...]:
        return tuple(sorted(v if u == x else u for u, v in self.pole_pairs if x in (u, v)))

    @property
    def all_checks_pass(self) -> bool:
        structure_ok = self.structure is None or self.structure.passed
        return self.sharp and structure_ok and all(check.passed for check in self.checks.values())


def _edge(graph: Graph, u: int, v: int) -> str:
    return f"{graph.labels[u]} {graph.labels[v]}"


def sharpness_verdict(graph: Graph, strict: bool = False, processes: int | None = None) -> SharpnessReport:
    """
    Compute every edge curvature, ``κ_min``, the diameter and the verdict.

    Args:
        graph: Connected graph with at least one edge.
        strict: Also run the full pole suite when the graph is sharp.
        processes: Worker count for the edge pass; defaults to ``UTIL.processes``.

    Raises:
        DisconnectedGraphError: If ``graph`` is not connected.
        PreconditionError: If ``graph`` has no edge.
    """
    GraphValidator.require_connected(graph)
    if graph.vertex_count < 2:
        raise PreconditionError("sharpness needs at least one edge")
    reports = all_edge_reports(graph, processes=processes)
    witness_edge, witness_report = min(reports.items(), key=lambda item: item[1].kappa)
    longest, pairs = diameter(graph)
    kappa_min = witness_report.kappa
    verdict = SharpnessReport(
        diameter=longest,
        kappa_min=kappa_min,
        witness_edge=witness_edge,
        sharp=kappa_min * longest == 2,
        pole_pairs=tuple(pairs),
        edge_reports=reports,
    )
    logger.info(
        "diameter %d, kappa_min %s, sharp=%s", longest, UTIL.format_rational(kappa_min), verdict.sharp
    )
    if strict and verdict.sharp:
        checks, structure = _full_suite(graph, verdict)
        verdict = replace(verdict, checks=checks, structure=structure)
    return verdict


def _require_sharp(graph: Graph, verdict: SharpnessReport | None) -> SharpnessReport:
    verdict = verdict if verdict is not None else sharpness_verdict(graph)
    if not verdict.sharp:
        raise PreconditionError(
            f"graph is not Bonnet-Myers sharp: kappa_min * L = "
            f"{UTIL.format_rational(verdict.kappa_min * verdict.diameter)}, not 2"
        )
    return verdict


def _require_sharp_pole(graph: Graph, x: int, verdict: SharpnessReport | None) -> SharpnessReport:
    GraphValidator.require_vertex(graph, x)
    verdict = _require_sharp(graph, verdict)
    if x not in verdict.poles:
        raise PreconditionError(f"{graph.labels[x]} is not a pole")
    return verdict


def level_identity_check(graph: Graph, x: int, verdict: SharpnessReport | None = None) -> CheckResult:
    """
    ``d⁺ - d⁻ = (1 - 2i/L) d_u`` at every vertex ``u`` of level ``i``, and ``L | 2 i d_u``.

    Raises:
        PreconditionError: If the graph is not sharp or ``x`` is not a pole.
    """
    verdict = _require_sharp_pole(graph, x, verdict)
    longest = verdict.diameter
    violations = []
    for row in level_profile(graph, x).rows:
        degree = graph.degree(row.vertex)
        expected = (1 - Fraction(2 * row.level, longest)) * degree
        if row.up - row.down != expected:
            violations.append(
                f"{graph.labels[row.vertex]}: d+ - d- = {row.up - row.down}, expected {UTIL.format_rational(expected)}"
            )
        elif (2 * row.level * degree) % longest:
            violations.append(f"{graph.labels[row.vertex]}: L does not divide 2 i d_u = {2 * row.level * degree}")
    return CheckResult.from_violations(violations)


def ratio_check(graph: Graph, x: int, verdict: SharpnessReport | None = None) -> CheckResult:
    """``d⁺ / d⁻ = L/i - 1`` at every vertex of level ``i >= 1`` with ``d⁰ = 0``."""
    verdict = _require_sharp_pole(graph, x, verdict)
    longest = verdict.diameter
    violations = [
        f"{graph.labels[row.vertex]}: d+ = {row.up}, d- = {row.down} at level {row.level}"
        for row in level_profile(graph, x).rows
        if row.level >= 1 and row.flat == 0 and row.up * row.level != (longest - row.level) * row.down
    ]
    return CheckResult.from_violations(violations)


def interval_fullness(graph: Graph, x: int, y: int, verdict: SharpnessReport | None = None) -> CheckResult:
    """
    ``[x, y] = V`` for a pole pair, and ``y`` is the only vertex at distance ``L`` from ``x``.

    Raises:
        PreconditionError: If the graph is not sharp or ``(x, y)`` is not a pole pair.
    """
    GraphValidator.require_vertex(graph, y)
    verdict = _require_sharp_pole(graph, x, verdict)
    if graph.distance(x, y) != verdict.diameter:
        raise PreconditionError(f"({_edge(graph, x, y)}) is not a pole pair")
    between = interval(graph, x, y)
    violations = [f"{graph.labels[w]} not on an x-y geodesic" for w in range(graph.vertex_count) if w not in between]
    violations += [
        f"second anti-pole {graph.labels[w]}"
        for w in distances_from(graph, x).level(verdict.diameter)
        if w != y
    ]
    return CheckResult.from_violations(violations)


def pole_necessary_conditions(graph: Graph, verdict: SharpnessReport | None = None) -> dict[str, CheckResult]:
    """
    The five conditions every pole of a sharp graph satisfies.

    ``pole_degree``: ``d_x <= d_u`` for ``u`` in ``N(x)``.
    ``degree_bound``: ``d_u <= (|N(u) ∩ N(v)| + 2) L / 2`` on every edge, both ways.
    ``pole_matching``: ``H₁(x, u)`` has a perfect matching for ``u`` in ``N(x)``.
    ``private_neighbors``: ``|(N(x) ∩ N(v)) \\ N[u]| <= d_v / d_u`` for
    ``v`` in ``N₂(x)`` and ``u`` in ``N(x) ∩ N(v)``.
    ``transport_direction``: optimal couplings move mass away from the pole.

    Raises:
        PreconditionError: If the graph is not sharp.
    """
    verdict = _require_sharp(graph, verdict)
    longest = verdict.diameter
    degree = graph.degree
    pole_degree, degree_bound, pole_matching, private, direction = [], [], [], [], []

    for u, v in graph.edges():
        shared = len(graph.neighbor_set(u) & graph.neighbor_set(v))
        for a in (u, v):
            if 2 * degree(a) > (shared + 2) * longest:
                degree_bound.append(f"{graph.labels[a]} on edge {_edge(graph, u, v)}: degree {degree(a)}")

    for x in verdict.poles:
        profile = level_profile(graph, x)
        n_x = graph.neighbor_set(x)
        for u in sorted(n_x):
            if degree(x) > degree(u):
                pole_degree.append(f"pole {graph.labels[x]} has degree {degree(x)} > {degree(u)} at {graph.labels[u]}")
            if not verdict.edge_reports[(min(x, u), max(x, u))].bound_attained:
                pole_matching.append(f"no perfect matching in H1({_edge(graph, x, u)})")
        for v in profile.level(2):
            middle = n_x & graph.neighbor_set(v)
            for u in sorted(middle):
                count = len(middle - graph.neighbor_set(u) - {u})
                if count * degree(u) > degree(v):
                    private.append(f"pole {graph.labels[x]}: {count} private neighbors for {_edge(graph, u, v)}")
        for report in verdict.edge_reports.values():
            instance = report.instance
            near, far = profile[instance.x].level, profile[instance.y].level
            if near == far:
                continue
            outward = near < far
            for i, j, _ in report.coupling.support():
                s, t = instance.sources[i], instance.targets[j]
                ok = profile[s].level < profile[t].level if outward else profile[s].level > profile[t].level
                if not ok:
                    direction.append(
                        f"pole {graph.labels[x]}: edge {_edge(graph, instance.x, instance.y)} moves mass "
                        f"{graph.labels[s]} -> {graph.labels[t]}"
                    )

    return {
        "pole_degree": CheckResult.from_violations(pole_degree),
        "degree_bound": CheckResult.from_violations(degree_bound),
        "pole_matching": CheckResult.from_violations(pole_matching),
        "private_neighbors": CheckResult.from_violations(private),
        "transport_direction": CheckResult.from_violations(direction),
    }


def lichnerowicz_certificate(graph: Graph, x: int, verdict: SharpnessReport | None = None) -> CheckResult:
    """
    Exact eigenfunction identity ``Δg = -(2/L) g`` for ``g = d(x, ·) - L/2``.

    Together with ``λ₁ >= κ_min = 2/L`` this certifies ``λ₁ = 2/L``.
    """
    verdict = _require_sharp_pole(graph, x, verdict)
    longest = verdict.diameter
    violations = []
    for row in level_profile(graph, x).rows:
        g = row.level - Fraction(longest, 2)
        laplacian = Fraction(row.up - row.down, graph.degree(row.vertex))
        if laplacian != -Fraction(2, longest) * g:
            violations.append(f"{graph.labels[row.vertex]}: Δg = {UTIL.format_rational(laplacian)}")
    return CheckResult.from_violations(violations)


def geodesic_curvature_check(graph: Graph, x: int, verdict: SharpnessReport | None = None) -> CheckResult:
    """Every edge ``uv`` with ``d(x, u) + 1 + d(v, ȳ) = L`` has ``κ(u, v) = 2/L``."""
    verdict = _require_sharp_pole(graph, x, verdict)
    longest = verdict.diameter
    target = Fraction(2, longest)
    from_pole = distances_from(graph, x)
    violations = []
    for y in verdict.anti_poles(x):
        from_anti = distances_from(graph, y)
        for (u, v), report in verdict.edge_reports.items():
            on_geodesic = any(from_pole[a] + 1 + from_anti[b] == longest for a, b in ((u, v), (v, u)))
            if on_geodesic and report.kappa != target:
                violations.append(f"{_edge(graph, u, v)}: kappa {UTIL.format_rational(report.kappa)}")
    return CheckResult.from_violations(violations)


def verify_diameter3_structure(graph: Graph, verdict: SharpnessReport | None = None) -> Diameter3Structure:
    """
    Check the structure of irregular sharp graphs of diameter 3.

    Extracts ``r`` from the common degree ``3(r + 1)`` of the non-pole vertices
    and ``t`` from ``d_x = 2r + t``.

    Raises:
        PreconditionError: If the diameter is not 3, the graph is regular or
            it is not sharp.
    """
    GraphValidator.require_connected(graph)
    longest, _ = diameter(graph)
    if longest != 3:
        raise PreconditionError(f"diameter is {longest}, not 3")
    if graph.is_regular:
        raise PreconditionError(
            "graph is regular; the regular sharp graphs of diameter 3 are Q3, J(6,3), "
            "the 6-demicube and the Gosset graph"
        )
    verdict = _require_sharp(graph, verdict)
    n = graph.vertex_count
    degree = graph.degree
    checks: dict[str, CheckResult] = {}

    pairs = verdict.pole_pairs
    checks["unique_pole_pair"] = CheckResult.from_violations(f"extra pole pair {_edge(graph, u, v)}" for u, v in pairs[1:])
    x, y = pairs[0]
    checks["pole_degrees"] = CheckResult.from_violations(
        f"{graph.labels[p]}: degree {degree(p)}, expected {(n - 2) / 2:g}" for p in (x, y) if 2 * degree(p) != n - 2
    )

    cliques = []
    for a, b in ((x, y), (y, x)):
        for u in graph.neighbors(b):
            part = graph.neighbor_set(u) & graph.neighbor_set(a)
            for w in sorted(part):
                if len(part - graph.neighbor_set(w) - {w}) > 1:
                    cliques.append(f"N({graph.labels[u]}) ∩ N({graph.labels[a]}) misses two edges at {graph.labels[w]}")
    checks["neighborhood_cliques"] = CheckResult.from_violations(cliques)

    middle_degrees = sorted({degree(v) for v in range(n) if v not in (x, y)})
    checks["middle_regular"] = CheckResult.from_violations(
        [f"non-pole degrees {middle_degrees}"] if len(middle_degrees) != 1 else []
    )
    r = t = None
    if len(middle_degrees) == 1 and middle_degrees[0] % 3 == 0:
        r = middle_degrees[0] // 3 - 1
        t = degree(x) - 2 * r
    checks["t_range"] = CheckResult.from_violations(
        [] if r is not None and 1 <= t and 2 * t <= r + 4 else [f"(r, t) = ({r}, {t}) violates 1 <= t <= r/2 + 2"]
    )

    profile = level_profile(graph, x)
    relation = [
        f"{graph.labels[u]}: d0 = {profile[u].flat}, d+ = {profile[u].up}"
        for u in graph.neighbors(x)
        if profile[u].flat != 2 * profile[u].up - 4
    ]
    relation += [
        f"{graph.labels[v]}: d0 = {profile[v].flat}, d- = {profile[v].down}"
        for v in graph.neighbors(y)
        if profile[v].flat != 2 * profile[v].down - 4
    ]
    checks["neighbor_relation"] = CheckResult.from_violations(relation)
    structure = Diameter3Structure((x, y), r, t, checks)
    logger.info("diameter-3 structure: r=%s t=%s passed=%s", r, t, structure.passed)
    return structure


def c3free_checks(graph: Graph, x: int, verdict: SharpnessReport | None = None) -> dict[str, CheckResult]:
    """
    Degree and matching conditions of triangle-free sharp graphs at pole ``x``.

    The two second-level clauses only apply above the degree thresholds
    ``d_x > L/2`` and ``d_x > 2L/3``; their results say whether they applied.

    Raises:
        PreconditionError: If the graph has a triangle, is not sharp or ``x`` is
            not a pole.
    """
    if not is_triangle_free(graph):
        raise PreconditionError("graph contains a triangle")
    verdict = _require_sharp_pole(graph, x, verdict)
    longest = verdict.diameter
    degree = graph.degree
    profile = level_profile(graph, x)

    too_big = [f"{graph.labels[u]}: degree {degree(u)} > {longest}" for u in range(graph.vertex_count) if degree(u) > longest]
    matching = []
    for u in range(graph.vertex_count):
        if degree(u) != longest:
            continue
        for v in graph.neighbors(u):
            if profile[v].level != profile[u].level and not verdict.edge_reports[(min(u, v), max(u, v))].bound_attained:
                matching.append(f"no perfect matching in H1({_edge(graph, v, u)})")
    pole_neighbors = [f"{graph.labels[u]}: degree {degree(u)}" for u in graph.neighbors(x) if degree(u) != longest]
    down = []
    for row in profile.rows:
        if row.down > row.level:
            down.append(f"{graph.labels[row.vertex]}: d- = {row.down} > {row.level}")
        elif row.level and row.down == row.level and (row.flat or row.up != longest - row.level):
            down.append(f"{graph.labels[row.vertex]}: d- = i but (d0, d+) = ({row.flat}, {row.up})")

    second = profile.level(2)
    half = 2 * degree(x) > longest
    two_down = [f"{graph.labels[u]}: d- = {profile[u].down}" for u in second if profile[u].down != 2] if half else []
    two_thirds = 3 * degree(x) > 2 * longest
    repeated = []
    if two_thirds:
        owners: dict[frozenset[int], int] = {}
        for u in second:
            key = graph.neighbor_set(u) & graph.neighbor_set(x)
            if key in owners:
                repeated.append(f"{graph.labels[owners[key]]} and {graph.labels[u]} share their N(x) neighbors")
            owners.setdefault(key, u)

    return {
        "degree_at_most_diameter": CheckResult.from_violations(too_big),
        "full_degree_matching": CheckResult.from_violations(matching),
        "pole_neighbor_degree": CheckResult.from_violations(pole_neighbors),
        "down_degree": CheckResult.from_violations(down),
        "second_level_down_degree": CheckResult.from_violations(two_down, applicable=half),
        "second_level_distinct_pairs": CheckResult.from_violations(repeated, applicable=two_thirds),
    }


def hypercube_label(graph: Graph, x: int, verdict: SharpnessReport | None = None) -> HypercubeLabeling:
    """
    Label a triangle-free sharp graph by subsets of ``{1..L}`` starting from pole ``x``.

    ``x`` gets the empty set, ``N(x)`` the singletons in vertex order, and
    every later vertex the union of the labels of its down-neighbors. The
    extension stops with a refutation as soon as a vertex has the wrong down
    degree or label size, two levels contain a butterfly, two vertices share
    a label, or the final map is not a hypercube isomorphism.

    Raises:
        PreconditionError: If the graph has a triangle, ``x`` is not a pole,
            ``d_x <= 2L/3``, or the graph is not sharp.
    """
    GraphValidator.require_connected(graph)
    GraphValidator.require_vertex(graph, x)
    if not is_triangle_free(graph):
        raise PreconditionError("graph contains a triangle")
    longest, pairs = diameter(graph)
    if not any(x in pair for pair in pairs):
        raise PreconditionError(f"{graph.labels[x]} is not a pole")
    d_x = graph.degree(x)
    if not 3 * d_x > 2 * longest:
        raise PreconditionError(
            f"d_x = {d_x} is not > 2L/3 = {UTIL.format_rational(Fraction(2 * longest, 3))}"
        )
    _require_sharp(graph, verdict)

    profile = level_profile(graph, x)

    def refuted(reason: str) -> HypercubeLabeling:
        logger.debug("hypercube labeling from %s refuted: %s", graph.labels[x], reason)
        return HypercubeLabeling(x, None, reason)

    labels: dict[int, frozenset[int]] = {x: frozenset()}
    for k, u in enumerate(graph.neighbors(x), start=1):
        labels[u] = frozenset({k})
    for i in range(2, longest + 1):
        layer = profile.level(i)
        down_sets = {}
        for v in layer:
            down = frozenset(w for w in graph.neighbors(v) if profile[w].level == i - 1)
            if len(down) != i:
                return refuted(f"{graph.labels[v]} has {len(down)} down-neighbors at level {i}")
            label = frozenset().union(*(labels[w] for w in down))
            if len(label) != i:
                return refuted(f"{graph.labels[v]} gets a label of size {len(label)} at level {i}")
            labels[v] = label
            down_sets[v] = down
        for a, b in combinations(layer, 2):
            shared = down_sets[a] & down_sets[b]
            if len(shared) >= 2:
                w1, w2 = sorted(shared)[:2]
                return refuted(
                    f"butterfly {graph.labels[a]} {graph.labels[w1]} {graph.labels[b]} {graph.labels[w2]}"
                )

    if len(labels) != graph.vertex_count or len(set(labels.values())) != graph.vertex_count:
        return refuted("labels are not distinct")
    if graph.vertex_count != 2 ** longest:
        return refuted(f"{graph.vertex_count} vertices, expected {2 ** longest}")
    owner = {label: v for v, label in labels.items()}
    coordinates = frozenset(range(1, longest + 1))
    for v, label in labels.items():
        if not label <= coordinates:
            return refuted(f"{graph.labels[v]} has a coordinate outside 1..{longest}")
        for k in coordinates:
            w = owner.get(label ^ {k})
            if w is None or not graph.has_edge(v, w):
                return refuted(f"{graph.labels[v]} is not adjacent to its coordinate-{k} flip")
    if graph.edge_count != longest * 2 ** (longest - 1):
        return refuted("edge count differs from the hypercube")
    return HypercubeLabeling(x, labels)


def _full_suite(graph: Graph, verdict: SharpnessReport) -> tuple[dict[str, CheckResult], Diameter3Structure | None]:
    per_pole: dict[str, list[CheckResult]] = {}

    def add(name: str, result: CheckResult) -> None:
        per_pole.setdefault(name, []).append(result)

    triangle_free = is_triangle_free(graph)
    for x in verdict.poles:
        add("level_identity", level_identity_check(graph, x, verdict))
        add("ratio", ratio_check(graph, x, verdict))
        for y in verdict.anti_poles(x):
            add("interval_fullness", interval_fullness(graph, x, y, verdict))
        add("lichnerowicz", lichnerowicz_certificate(graph, x, verdict))
        add("geodesic_curvature", geodesic_curvature_check(graph, x, verdict))
        if triangle_free:
            for name, result in c3free_checks(graph, x, verdict).items():
                add(name, result)
            if 3 * graph.degree(x) > 2 * verdict.diameter:
                labeling = hypercube_label(graph, x, verdict)
                add("hypercube_rigidity", CheckResult.from_violations([labeling.refutation] if labeling.refutation else []))

    checks = {name: _merge(results) for name, results in per_pole.items()}
    checks.update(pole_necessary_conditions(graph, verdict))
    structure = None
    if verdict.diameter == 3 and not graph.is_regular:
        structure = verify_diameter3_structure(graph, verdict)
    return checks, structure
