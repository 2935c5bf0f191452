from __future__ import annotations

from fractions import Fraction
import json
import unittest

from llycurv import generators
from llycurv.curvature import all_edge_reports, edge_curvature
from llycurv.report import CurvatureDocument, SharpnessDocument
from llycurv.reportschema import CurvatureReport as CurvatureReportDto
from llycurv.sharpness import sharpness_verdict


class CurvatureDocumentTests(unittest.TestCase):
    def setUp(self) -> None:
        self.graph = generators.lopsided_edge()
        self.document = CurvatureDocument(self.graph, all_edge_reports(self.graph).values())

    def test_text_lists_every_edge_in_order(self) -> None:
        lines = self.document.to_text().splitlines()

        self.assertEqual(7, len(lines))
        self.assertEqual("x y 1/12", lines[0])

    def test_json_rationals_reparse_exactly(self) -> None:
        data = json.loads(self.document.to_json())

        first = data["edges"][0]
        self.assertEqual(["x", "y"], first["edge"])
        self.assertEqual(Fraction(1, 12), Fraction(first["kappa"]["num"], first["kappa"]["den"]))
        self.assertEqual({"num": 3, "den": 4, "approx": "0.75"}, first["upper_bound"])
        self.assertEqual((14, 12), (first["cost"], first["lcm"]))
        self.assertEqual(6, sum(transfer["mass"] for transfer in first["coupling"]))
        self.assertNotIn("oracles", first)

    def test_json_is_deterministic(self) -> None:
        again = CurvatureDocument(self.graph, all_edge_reports(self.graph).values())

        self.assertEqual(self.document.to_json(), again.to_json())

    def test_build_mirrors_reports(self) -> None:
        dto = self.document.build()

        self.assertIsInstance(dto, CurvatureReportDto)
        self.assertEqual(7, len(dto.edge))
        edge = dto.edge[0]
        self.assertEqual(("x", "y", 14), (edge.source, edge.target, edge.cost))
        self.assertEqual((1, 12), (edge.kappa.numerator, edge.kappa.denominator))
        self.assertIsNone(edge.agrees)

    def test_pretty_xml_has_declaration_and_namespace(self) -> None:
        xml = self.document.to_pretty_xml()

        self.assertTrue(xml.startswith('<?xml version="1.0" encoding="UTF-8"?>'))
        self.assertIn('xmlns="urn:llycurv:report:1"', xml)
        self.assertIn('Numerator="1" Denominator="12"', xml)


def test_crosscheck_text_marks_agreement() -> None:
    graph = generators.cycle(5)
    reports = all_edge_reports(graph, oracles=("lp", "lipschitz"))

    text = CurvatureDocument(graph, reports.values()).to_text()

    assert text.splitlines()[0] == "0 1 1/2 lp=1/2 ollivier=0 lipschitz=1/2 star=1/2 ok"


def test_crosscheck_json_carries_oracles_and_slackness() -> None:
    graph = generators.cycle(5)
    reports = all_edge_reports(graph, oracles=("lipschitz",))

    data = CurvatureDocument(graph, reports.values()).to_dict()

    entry = data["edges"][0]
    assert list(entry["oracles"]) == ["lipschitz", "star"]
    assert entry["slackness"] is True
    assert entry["agrees"] is True


def test_single_edge_document() -> None:
    graph = generators.complete(2)

    data = CurvatureDocument(graph, [edge_curvature(graph, 0, 1)]).to_dict()

    assert data["edges"][0]["kappa"] == {"num": 2, "den": 1, "approx": "2"}
    assert data["edges"][0]["coupling"] == []


class SharpnessDocumentTests(unittest.TestCase):
    def test_text_of_strict_hypercube(self) -> None:
        graph = generators.hypercube(3)

        text = SharpnessDocument(graph, sharpness_verdict(graph, strict=True)).to_text()

        lines = text.splitlines()
        self.assertEqual("diameter: 3", lines[0])
        self.assertEqual("kappa_min: 2/3 (000 001)", lines[1])
        self.assertEqual("sharp: true", lines[2])
        self.assertTrue(lines[3].startswith("poles: 000-111, "))
        self.assertIn("check hypercube_rigidity: pass", lines)

    def test_dict_of_irregular_graph_has_structure(self) -> None:
        graph = generators.generate_irregular_sharp(1, 1)

        data = SharpnessDocument(graph, sharpness_verdict(graph, strict=True)).to_dict()

        self.assertEqual(["diameter", "kappa_min", "sharp", "poles", "checks", "structure"], list(data))
        self.assertEqual({"r": 1, "t": 1}, data["structure"])
        self.assertEqual([["x", "y"]], data["poles"])
        self.assertEqual({"pass": True, "witnesses": [], "applicable": True}, data["checks"]["diameter3_t_range"])
        self.assertEqual(Fraction(2, 3), Fraction(data["kappa_min"]["num"], data["kappa_min"]["den"]))

    def test_dict_without_strict_suite(self) -> None:
        graph = generators.cycle(6)

        data = SharpnessDocument(graph, sharpness_verdict(graph)).to_dict()

        self.assertFalse(data["sharp"])
        self.assertEqual({}, data["checks"])
        self.assertNotIn("structure", data)
        self.assertEqual(3, len(data["poles"]))

    def test_build_lists_checks(self) -> None:
        graph = generators.hypercube(2)

        dto = SharpnessDocument(graph, sharpness_verdict(graph, strict=True)).build()

        self.assertTrue(dto.sharp)
        self.assertEqual(2, dto.diameter)
        self.assertIn("lichnerowicz", [check.name for check in dto.check])
        self.assertTrue(all(check.pass_value for check in dto.check))
