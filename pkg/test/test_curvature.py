from __future__ import annotations

from dataclasses import replace
from fractions import Fraction
import multiprocessing
import random
import unittest

import pytest

from llycurv import curvature, generators
from llycurv.curvature import (
    LipschitzWitness,
    all_edge_curvatures,
    all_edge_reports,
    blowup_instance,
    crosscheck_edge,
    curvature_upper_bound,
    edge_curvature,
    hall_violation,
    lazy_lp_curvature,
    lipschitz_curvature,
    ollivier_curvature,
    slackness_check,
    star_coupling_of,
)
from llycurv.graph import Graph
from llycurv.transport import IntegerCoupling
from llycurv.util import UTIL
from llycurv.validators import (
    CurvatureError,
    DisconnectedGraphError,
    InstanceTooLargeError,
    NotAnEdgeError,
    StarCouplingError,
)
from test.graph_corpus import corpus_edges, named_graphs, random_graphs
from test.test_mocks import mock_util_settings


def _lopsided_edge() -> tuple[Graph, int, int]:
    graph = generators.lopsided_edge()
    return graph, graph.index("x"), graph.index("y")


class EdgeCurvatureTests(unittest.TestCase):
    def test_lopsided_edge(self) -> None:
        graph, x, y = _lopsided_edge()

        report = edge_curvature(graph, x, y)

        self.assertEqual(Fraction(1, 12), report.kappa)
        self.assertEqual(14, report.coupling.cost)
        self.assertEqual(12, report.instance.lcm)
        self.assertEqual((4, 3), (report.instance.c_x, report.instance.c_y))

    def test_lopsided_edge_blowup_masses(self) -> None:
        graph, x, y = _lopsided_edge()

        instance = blowup_instance(graph, x, y)

        masses = {graph.labels[u]: m for u, m in zip(instance.sources, instance.mu_x)}
        self.assertEqual({"y": 1, "z": 1, "x1": 4}, masses)
        self.assertEqual(["y1", "y2"], [graph.labels[v] for v in instance.targets])
        self.assertEqual(6, instance.total_mass)

    def test_endpoints_are_ordered_by_degree(self) -> None:
        graph, x, y = _lopsided_edge()

        instance = blowup_instance(graph, y, x)

        self.assertEqual((x, y), (instance.x, instance.y))
        self.assertEqual(edge_curvature(graph, x, y).kappa, edge_curvature(graph, y, x).kappa)

    def test_single_edge(self) -> None:
        report = edge_curvature(generators.complete(2), 0, 1)

        self.assertEqual(Fraction(2), report.kappa)
        self.assertEqual(0, report.instance.total_mass)

    def test_cycle_and_hypercube_and_path(self) -> None:
        self.assertEqual(Fraction(1, 2), edge_curvature(generators.cycle(5), 0, 1).kappa)
        self.assertEqual(Fraction(2, 3), edge_curvature(generators.hypercube(3), 0, 1).kappa)
        self.assertEqual(Fraction(1), edge_curvature(generators.path(3), 0, 1).kappa)

    def test_non_edge_is_rejected(self) -> None:
        with self.assertRaisesRegex(NotAnEdgeError, r"\(0, 2\) is not an edge"):
            edge_curvature(generators.cycle(5), 0, 2)

    def test_disconnected_graph_is_rejected(self) -> None:
        graph = Graph.from_edges(["a", "b", "c", "d"], [(0, 1), (2, 3)])

        with self.assertRaises(DisconnectedGraphError):
            edge_curvature(graph, 0, 1)


class UpperBoundTests(unittest.TestCase):
    def test_hypercube_attains_bound(self) -> None:
        self.assertEqual((Fraction(2, 3), True), curvature_upper_bound(generators.hypercube(3), 0, 1))

    def test_five_cycle_misses_bound(self) -> None:
        self.assertEqual((Fraction(1), False), curvature_upper_bound(generators.cycle(5), 0, 1))

    def test_triangle_attains_bound(self) -> None:
        self.assertEqual((Fraction(3, 2), True), curvature_upper_bound(generators.complete(3), 0, 1))

    def test_hall_violation_matches_bound(self) -> None:
        self.assertEqual(((4,), ()), hall_violation(generators.cycle(5), 0, 1))
        self.assertIsNone(hall_violation(generators.hypercube(3), 0, 1))


class LazyWalkTests(unittest.TestCase):
    def test_lopsided_edge_at_threshold_idleness(self) -> None:
        graph, x, y = _lopsided_edge()

        self.assertEqual(Fraction(1, 12), lazy_lp_curvature(graph, x, y, Fraction(1, 5)))
        self.assertEqual(Fraction(1, 12), lazy_lp_curvature(graph, x, y))

    def test_ollivier_curvature_of_five_cycle(self) -> None:
        self.assertEqual(Fraction(0), ollivier_curvature(generators.cycle(5), 0, 1))

    def test_single_edge_with_half_idleness(self) -> None:
        self.assertEqual(Fraction(2), lazy_lp_curvature(generators.complete(2), 0, 1, Fraction(1, 2)))

    def test_idleness_must_be_exact_and_below_one(self) -> None:
        graph = generators.cycle(5)

        with self.assertRaisesRegex(CurvatureError, "not a float"):
            lazy_lp_curvature(graph, 0, 1, 0.2)
        with self.assertRaisesRegex(CurvatureError, "0 <= alpha < 1"):
            lazy_lp_curvature(graph, 0, 1, 1)


class LipschitzTests(unittest.TestCase):
    def test_lopsided_edge(self) -> None:
        graph, x, y = _lopsided_edge()

        kappa, witness = lipschitz_curvature(graph, x, y)

        self.assertEqual(Fraction(1, 12), kappa)
        self.assertEqual((0, 1), (witness.f[x], witness.f[y]))
        self.assertEqual(kappa, witness.gradient)

    def test_path_and_cycle(self) -> None:
        self.assertEqual(Fraction(1), lipschitz_curvature(generators.path(3), 0, 1)[0])
        self.assertEqual(Fraction(1, 2), lipschitz_curvature(generators.cycle(5), 0, 1)[0])

    def test_witness_is_one_lipschitz(self) -> None:
        graph, x, y = _lopsided_edge()

        _, witness = lipschitz_curvature(graph, x, y)

        for u, fu in witness.f.items():
            for v, fv in witness.f.items():
                self.assertLessEqual(abs(fu - fv), graph.distance(u, v))

    def test_support_limit(self) -> None:
        with mock_util_settings(lipschitz_support_limit=3):
            with self.assertRaisesRegex(InstanceTooLargeError, "= 4 exceeds the Lipschitz limit of 3"):
                lipschitz_curvature(generators.cycle(5), 0, 1)

    def test_orientation_flip(self) -> None:
        witness = LipschitzWitness(0, 1, {0: 0, 1: 1, 2: 2}, Fraction(1, 2))

        flipped = witness.oriented(1, 0)

        self.assertEqual({0: 1, 1: 0, 2: -1}, flipped.f)
        self.assertIs(witness, witness.oriented(0, 1))
        with self.assertRaises(CurvatureError):
            witness.oriented(0, 2)


class CertificateTests(unittest.TestCase):
    def test_slackness_on_optimal_pair(self) -> None:
        graph, x, y = _lopsided_edge()
        report = edge_curvature(graph, x, y)
        _, witness = lipschitz_curvature(graph, x, y)

        self.assertTrue(slackness_check(report.instance, report.coupling, witness))

    def test_slackness_fails_for_perturbed_function(self) -> None:
        graph, x, y = _lopsided_edge()
        report = edge_curvature(graph, x, y)
        _, witness = lipschitz_curvature(graph, x, y)
        f = dict(witness.f)
        f[graph.index("y1")] = f[graph.index("x1")]

        perturbed = replace(witness, f=f)

        self.assertFalse(slackness_check(report.instance, report.coupling, perturbed))

    def test_slackness_is_vacuous_on_single_edge(self) -> None:
        graph = generators.complete(2)
        report = edge_curvature(graph, 0, 1)
        _, witness = lipschitz_curvature(graph, 0, 1)

        self.assertTrue(slackness_check(report.instance, report.coupling, witness))

    def test_star_coupling_of_lopsided_edge(self) -> None:
        graph, x, y = _lopsided_edge()
        report = edge_curvature(graph, x, y)

        star = star_coupling_of(report.instance, report.coupling)

        self.assertEqual(Fraction(1, 12), star.value)
        self.assertEqual(Fraction(5, 4), star.entries[(x, y)])
        self.assertEqual(Fraction(0), sum(star.entries.values()))

    def test_star_coupling_of_single_edge(self) -> None:
        report = edge_curvature(generators.complete(2), 0, 1)

        star = star_coupling_of(report.instance, report.coupling)

        self.assertEqual({(0, 1): 2, (0, 0): -1, (1, 1): -1}, star.entries)
        self.assertEqual(Fraction(2), star.value)

    def test_star_coupling_rejects_broken_marginals(self) -> None:
        graph, x, y = _lopsided_edge()
        report = edge_curvature(graph, x, y)
        flow = [list(row) for row in report.coupling.flow]
        flow[0][0] += 1
        broken = IntegerCoupling(tuple(tuple(row) for row in flow), report.coupling.cost)

        with self.assertRaises(StarCouplingError):
            star_coupling_of(report.instance, broken)

    def test_star_coupling_rejects_wrong_shape(self) -> None:
        graph, x, y = _lopsided_edge()
        report = edge_curvature(graph, x, y)

        with self.assertRaisesRegex(StarCouplingError, "shape"):
            star_coupling_of(report.instance, IntegerCoupling(((6,),), 0))


def test_all_edge_curvatures_of_small_graphs() -> None:
    assert set(all_edge_curvatures(generators.cycle(5)).values()) == {Fraction(1, 2)}
    assert set(all_edge_curvatures(generators.path(3)).values()) == {Fraction(1)}
    assert set(all_edge_curvatures(generators.hypercube(2)).values()) == {Fraction(1)}


def test_all_edge_reports_are_keyed_in_edge_order() -> None:
    graph = generators.lopsided_edge()

    reports = all_edge_reports(graph)

    assert list(reports) == list(graph.edges())
    assert all(report.agrees is None for report in reports.values())


def test_worker_pool_gives_the_same_reports() -> None:
    graph = generators.johnson(5, 2)

    serial = all_edge_curvatures(graph, processes=1)
    pooled = all_edge_curvatures(graph, processes=2)

    assert serial == pooled


def test_worker_initializer_applies_parent_settings(monkeypatch: pytest.MonkeyPatch) -> None:
    graph = generators.cycle(5)
    monkeypatch.setattr(curvature, "_GRAPH", None)
    with mock_util_settings(lipschitz_support_limit=3, certify_transport=True):
        settings = UTIL.snapshot()

    with mock_util_settings(lipschitz_support_limit=16, certify_transport=False):
        curvature._init_worker(graph, settings)

        assert curvature._GRAPH is graph
        assert UTIL.lipschitz_support_limit == 3
        assert UTIL.certify_transport is True


def test_spawned_workers_see_settings_overrides(monkeypatch: pytest.MonkeyPatch) -> None:
    monkeypatch.setattr(curvature, "Pool", multiprocessing.get_context("spawn").Pool)

    with mock_util_settings(lipschitz_support_limit=3):
        with pytest.raises(InstanceTooLargeError, match="exceeds the Lipschitz limit of 3"):
            all_edge_reports(generators.cycle(5), oracles=("lipschitz",), processes=2)


def test_curvature_is_invariant_under_relabeling() -> None:
    graph = generators.generate_irregular_sharp(1, 2)
    rng = random.Random(5)
    permutation = list(range(graph.vertex_count))
    rng.shuffle(permutation)

    moved = graph.relabel(permutation)

    original = all_edge_curvatures(graph)
    for (u, v), kappa in original.items():
        assert edge_curvature(moved, permutation[u], permutation[v]).kappa == kappa


def test_curvature_is_symmetric_on_every_corpus_edge() -> None:
    for name, graph, u, v in corpus_edges():
        forward = edge_curvature(graph, u, v)
        backward = edge_curvature(graph, v, u)

        assert forward.kappa == backward.kappa, (name, u, v)
        assert forward.coupling.cost == backward.coupling.cost, (name, u, v)


def test_crosscheck_rejects_unknown_oracle() -> None:
    with pytest.raises(CurvatureError, match="oracle must be one of"):
        crosscheck_edge(generators.cycle(5), 0, 1, oracles=("simplex",))


@pytest.mark.parametrize("name,graph", named_graphs(), ids=[name for name, _ in named_graphs()])
def test_oracles_agree_on_named_graphs(name: str, graph: Graph) -> None:
    for u, v in graph.edges():
        report = crosscheck_edge(graph, u, v)
        assert report.lp_kappa == report.kappa
        assert report.lipschitz_kappa == report.kappa
        assert report.ollivier_kappa <= report.kappa
        assert report.slackness is True
        assert report.star_value == report.kappa
        assert report.agrees is True, (name, u, v)


def test_oracles_and_certificates_agree_on_random_graphs() -> None:
    for name, graph in random_graphs():
        for u, v in graph.edges():
            report = crosscheck_edge(graph, u, v)
            assert report.agrees is True, (name, graph.labels[u], graph.labels[v], report.kappa)
            assert report.slackness is True
            assert report.star_value == report.kappa
            assert report.kappa <= report.upper_bound
            assert (report.kappa == report.upper_bound) == report.bound_attained
