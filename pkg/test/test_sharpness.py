from __future__ import annotations

from fractions import Fraction
from itertools import combinations
import random
import unittest

import pytest

from llycurv import generators
from llycurv.graph import Graph
from llycurv.sharpness import (
    CheckResult,
    c3free_checks,
    geodesic_curvature_check,
    hypercube_label,
    interval_fullness,
    level_identity_check,
    level_profile,
    lichnerowicz_certificate,
    pole_necessary_conditions,
    ratio_check,
    sharpness_verdict,
    verify_diameter3_structure,
)
from llycurv.validators import PreconditionError


def _permuted(graph: Graph, seed: int) -> Graph:
    permutation = list(range(graph.vertex_count))
    random.Random(seed).shuffle(permutation)
    return graph.relabel(permutation)


def _is_hypercube_isomorphism(graph: Graph, labels: dict[int, frozenset[int]], dimension: int) -> bool:
    if len(labels) != graph.vertex_count or len(set(labels.values())) != 2 ** dimension:
        return False
    for u, v in combinations(range(graph.vertex_count), 2):
        if graph.has_edge(u, v) != (len(labels[u] ^ labels[v]) == 1):
            return False
    return True


class VerdictTests(unittest.TestCase):
    def test_hypercube_is_sharp(self) -> None:
        verdict = sharpness_verdict(generators.hypercube(4))

        self.assertTrue(verdict.sharp)
        self.assertEqual(4, verdict.diameter)
        self.assertEqual(Fraction(1, 2), verdict.kappa_min)
        self.assertEqual(8, len(verdict.pole_pairs))
        self.assertEqual({}, verdict.checks)

    def test_six_cycle_is_not_sharp(self) -> None:
        verdict = sharpness_verdict(generators.cycle(6))

        self.assertFalse(verdict.sharp)
        self.assertEqual(Fraction(0), verdict.kappa_min)

    def test_path_on_three_vertices(self) -> None:
        verdict = sharpness_verdict(generators.path(3))

        self.assertTrue(verdict.sharp)
        self.assertEqual((2, Fraction(1)), (verdict.diameter, verdict.kappa_min))
        self.assertEqual((0, 1), verdict.witness_edge)

    def test_single_vertex_is_rejected(self) -> None:
        with self.assertRaisesRegex(PreconditionError, "at least one edge"):
            sharpness_verdict(Graph(("a",), ((),)))

    def test_strict_verdict_runs_every_check(self) -> None:
        verdict = sharpness_verdict(generators.hypercube(3), strict=True)

        self.assertTrue(verdict.all_checks_pass)
        self.assertIn("hypercube_rigidity", verdict.checks)
        self.assertIn("transport_direction", verdict.checks)
        self.assertIsNone(verdict.structure)

    def test_anti_poles(self) -> None:
        cube = generators.hypercube(3)

        verdict = sharpness_verdict(cube)

        self.assertEqual((cube.index("111"),), verdict.anti_poles(cube.index("000")))
        self.assertEqual(tuple(range(8)), verdict.poles)


@pytest.mark.parametrize("n", range(2, 7))
def test_hypercubes_are_sharp(n: int) -> None:
    verdict = sharpness_verdict(generators.hypercube(n), strict=True)

    assert verdict.sharp
    assert verdict.kappa_min == Fraction(2, n)
    assert verdict.all_checks_pass, {name: c.witnesses for name, c in verdict.checks.items() if not c.passed}


@pytest.mark.parametrize("n", range(3, 6))
def test_cocktail_party_graphs_are_sharp(n: int) -> None:
    verdict = sharpness_verdict(generators.cocktail(n), strict=True)

    assert verdict.sharp
    assert verdict.kappa_min == 1
    assert verdict.all_checks_pass, {name: c.witnesses for name, c in verdict.checks.items() if not c.passed}


@pytest.mark.parametrize(
    "graph",
    [generators.johnson(6, 3), generators.demicube(6), generators.gosset()],
    ids=["J(6,3)", "demicube(6)", "gosset"],
)
def test_diameter_three_regular_graphs_pass_the_strict_suite(graph: Graph) -> None:
    verdict = sharpness_verdict(graph, strict=True)

    assert verdict.sharp
    assert verdict.diameter == 3
    assert verdict.kappa_min == Fraction(2, 3)
    assert verdict.all_checks_pass, {name: c.witnesses for name, c in verdict.checks.items() if not c.passed}


def test_product_breaking_ratio_condition_is_not_sharp() -> None:
    graph = generators.cartesian(generators.hypercube(2), generators.cocktail(3))

    assert not sharpness_verdict(graph).sharp


@pytest.mark.parametrize("m", (4, 6, 8))
def test_complete_graph_minus_matching_is_sharp(m: int) -> None:
    for k in range(1, m // 2 + 1):
        verdict = sharpness_verdict(generators.complete_minus_matching(m, k), strict=True)
        assert verdict.sharp, (m, k)
        assert (verdict.diameter, verdict.kappa_min) == (2, 1)
        assert verdict.all_checks_pass, (m, k)


@pytest.mark.parametrize("m", (5, 6))
def test_complete_graph_minus_two_edge_path_is_not_sharp(m: int) -> None:
    assert not sharpness_verdict(generators.complete_minus_path(m, 2)).sharp


class IrregularDiameterThreeTests(unittest.TestCase):
    def test_structure_recovers_parameters(self) -> None:
        for r in range(1, 5):
            for t in (1, 2):
                with self.subTest(r=r, t=t):
                    graph = generators.generate_irregular_sharp(r, t)
                    verdict = sharpness_verdict(graph, strict=True)
                    self.assertTrue(verdict.sharp)
                    self.assertEqual(Fraction(2, 3), verdict.kappa_min)
                    self.assertEqual(((graph.index("x"), graph.index("y")),), verdict.pole_pairs)
                    self.assertEqual((r, t), (verdict.structure.r, verdict.structure.t))
                    self.assertTrue(verdict.structure.passed)
                    self.assertTrue(verdict.all_checks_pass)

    def test_direct_structure_call(self) -> None:
        graph = generators.generate_irregular_sharp(2, 1)

        structure = verify_diameter3_structure(graph)

        self.assertEqual((2, 1), (structure.r, structure.t))
        self.assertEqual(
            {"unique_pole_pair", "pole_degrees", "neighborhood_cliques", "middle_regular", "t_range", "neighbor_relation"},
            set(structure.checks),
        )

    def test_regular_graph_is_rejected(self) -> None:
        with self.assertRaisesRegex(PreconditionError, "regular"):
            verify_diameter3_structure(generators.hypercube(3))

    def test_wrong_diameter_is_rejected(self) -> None:
        with self.assertRaisesRegex(PreconditionError, "diameter is 2, not 3"):
            verify_diameter3_structure(generators.path(3))


class PoleCheckTests(unittest.TestCase):
    def test_level_profile_of_hypercube(self) -> None:
        cube = generators.hypercube(4)

        profile = level_profile(cube, 0)

        for row in profile.rows:
            self.assertEqual((4 - row.level, 0, row.level), (row.up, row.flat, row.down))

    def test_level_identity(self) -> None:
        irregular = generators.generate_irregular_sharp(1, 1)

        self.assertTrue(level_identity_check(generators.hypercube(4), 0).passed)
        self.assertTrue(level_identity_check(generators.gosset(), 0).passed)
        self.assertTrue(level_identity_check(irregular, irregular.index("x")).passed)

    def test_ratio(self) -> None:
        self.assertTrue(ratio_check(generators.hypercube(5), 0).passed)
        self.assertTrue(ratio_check(generators.johnson(6, 3), 0).passed)

    def test_checks_refuse_graphs_that_are_not_sharp(self) -> None:
        with self.assertRaisesRegex(PreconditionError, "not Bonnet-Myers sharp"):
            ratio_check(generators.cycle(6), 0)

    def test_non_pole_is_refused(self) -> None:
        graph = generators.generate_irregular_sharp(1, 1)

        with self.assertRaisesRegex(PreconditionError, "u0 is not a pole"):
            level_identity_check(graph, graph.index("u0"))

    def test_interval_fullness(self) -> None:
        cube = generators.hypercube(3)
        irregular = generators.generate_irregular_sharp(2, 1)

        self.assertTrue(interval_fullness(cube, cube.index("000"), cube.index("111")).passed)
        self.assertTrue(interval_fullness(irregular, irregular.index("x"), irregular.index("y")).passed)
        self.assertTrue(interval_fullness(generators.cocktail(3), 0, 1).passed)

    def test_interval_fullness_needs_pole_pair(self) -> None:
        cube = generators.hypercube(3)

        with self.assertRaisesRegex(PreconditionError, "not a pole pair"):
            interval_fullness(cube, cube.index("000"), cube.index("011"))

    def test_pole_necessary_conditions(self) -> None:
        for graph in (generators.hypercube(4), generators.generate_irregular_sharp(3, 2)):
            results = pole_necessary_conditions(graph)
            self.assertEqual(
                {"pole_degree", "degree_bound", "pole_matching", "private_neighbors", "transport_direction"},
                set(results),
            )
            self.assertTrue(all(result.passed for result in results.values()), results)

    def test_pole_necessary_conditions_need_sharp_graph(self) -> None:
        with self.assertRaises(PreconditionError):
            pole_necessary_conditions(generators.cycle(5))

    def test_lichnerowicz_certificate(self) -> None:
        for n in range(2, 7):
            with self.subTest(n=n):
                self.assertTrue(lichnerowicz_certificate(generators.hypercube(n), 0).passed)
        irregular = generators.generate_irregular_sharp(1, 2)
        self.assertTrue(lichnerowicz_certificate(generators.demicube(6), 0).passed)
        self.assertTrue(lichnerowicz_certificate(irregular, irregular.index("x")).passed)

    def test_geodesic_curvature(self) -> None:
        irregular = generators.generate_irregular_sharp(2, 2)

        self.assertTrue(geodesic_curvature_check(generators.hypercube(3), 0).passed)
        self.assertTrue(geodesic_curvature_check(irregular, irregular.index("y")).passed)


class TriangleFreeTests(unittest.TestCase):
    def test_hypercube_five_passes(self) -> None:
        results = c3free_checks(generators.hypercube(5), 0)

        self.assertTrue(all(result.passed for result in results.values()))

    def test_hypercube_three_applies_both_second_level_clauses(self) -> None:
        results = c3free_checks(generators.hypercube(3), 0)

        self.assertTrue(all(result.passed for result in results.values()))
        self.assertTrue(results["second_level_down_degree"].applicable)
        self.assertTrue(results["second_level_distinct_pairs"].applicable)

    def test_triangles_are_refused(self) -> None:
        with self.assertRaisesRegex(PreconditionError, "triangle"):
            c3free_checks(generators.johnson(6, 3), 0)

    def test_hypercube_labeling_recovered_from_every_pole(self) -> None:
        for n, seed in ((3, 11), (4, 12), (5, 13)):
            graph = _permuted(generators.hypercube(n), seed)
            verdict = sharpness_verdict(graph)
            for x in verdict.poles:
                with self.subTest(n=n, pole=x):
                    labeling = hypercube_label(graph, x, verdict)
                    self.assertTrue(labeling.is_isomorphism, labeling.refutation)
                    self.assertEqual(frozenset(), labeling.labels[x])
                    self.assertTrue(_is_hypercube_isomorphism(graph, labeling.labels, n))

    def test_six_cycle_fails_degree_threshold(self) -> None:
        with self.assertRaisesRegex(PreconditionError, r"d_x = 2 is not > 2L/3 = 2"):
            hypercube_label(generators.cycle(6), 0)


def test_check_result_from_violations() -> None:
    assert CheckResult.from_violations([]) == CheckResult(True, (), True)
    assert CheckResult.from_violations(["a b"], applicable=False) == CheckResult(False, ("a b",), False)
