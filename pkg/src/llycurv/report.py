"""
Text, JSON and XML renderings of curvature and sharpness results.

Every document is a ``Buildable``: ``build()`` returns the xsdata dataclass of
the report schema, ``to_xml``/``save_xml`` serialize it, and ``to_dict`` gives
the JSON form. Vertices always appear by label and rationals are exact.
"""

import json
from fractions import Fraction
from pathlib import Path
from typing import Any, Iterable
from xml.etree import ElementTree as ET

from xsdata.formats.dataclass.context import XmlContext
from xsdata.formats.dataclass.serializers import XmlSerializer

from llycurv.curvature import CurvatureReport
from llycurv.graph import Graph
from llycurv.reportschema import (
    CheckType,
    CurvatureReport as CurvatureReportDto,
    EdgeType,
    KappaMinType,
    OracleType,
    PolePairType,
    RationalType,
    SharpnessReport as SharpnessReportDto,
    StructureType,
    TransferType,
)
from llycurv.sharpness import SharpnessReport
from llycurv.util import UTIL
from llycurv.validators import FileNameValidator


class Buildable:
    """
    Base class for reports that can produce schema DTOs and XML payloads.
    """
    def build(self) -> Any:
        """
        Create the xsdata dataclass instance that mirrors the report schema
        element for this object.
        """
        return None

    def to_dict(self) -> dict:
        """JSON-ready form with stable key order."""
        return {}

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2)

    def to_text(self) -> str:
        return ""

    def to_xml(self) -> str:
        """
        Serialize the built dataclass to an XML string.
        """
        context = XmlContext()
        serializer = XmlSerializer(context=context)
        return serializer.render(self.build())

    def _indented_root(self) -> ET.Element:
        root = ET.fromstring(self.to_xml())
        if root.tag.startswith("{"):
            namespace = root.tag.split("}", 1)[0][1:]
            ET.register_namespace("", namespace)
        ET.indent(root, space='  ')
        return root

    def to_pretty_xml(self) -> str:
        """Indented XML with a UTF-8 declaration, as written by ``save_xml``."""
        root = self._indented_root()
        return '<?xml version="1.0" encoding="UTF-8"?>\n' + ET.tostring(root, encoding="unicode") + "\n"

    def save_xml(self, destination: str | Path):
        """
        Write the XML representation to disk.

        The file name must end with extension ".xml".

        Raises:
            CurvatureError: If the file name does not end with ".xml".
        """
        destination = Path(destination)
        FileNameValidator.validate_xml_file_name(str(destination))
        destination.write_text(self.to_pretty_xml(), encoding="utf-8", newline="\n")


def _rational_dto(value: Fraction, cls=RationalType, **extra) -> Any:
    value = Fraction(value)
    return cls(
        numerator=value.numerator,
        denominator=value.denominator,
        approx=UTIL.approximate(value),
        **extra,
    )


def _oracle_values(report: CurvatureReport) -> dict[str, Fraction]:
    values = {
        "lp": report.lp_kappa,
        "ollivier": report.ollivier_kappa,
        "lipschitz": report.lipschitz_kappa,
        "star": report.star_value,
    }
    return {name: value for name, value in values.items() if value is not None}


class CurvatureDocument(Buildable):
    """Per-edge curvature listing."""

    def __init__(self, graph: Graph, reports: Iterable[CurvatureReport]) -> None:
        self.graph = graph
        self.reports = list(reports)

    def _transfers(self, report: CurvatureReport) -> list[tuple[str, str, int]]:
        instance = report.instance
        labels = self.graph.labels
        return [
            (labels[instance.sources[i]], labels[instance.targets[j]], mass)
            for i, j, mass in report.coupling.support()
        ]

    def build(self) -> CurvatureReportDto:
        labels = self.graph.labels
        edges = []
        for report in self.reports:
            u, v = report.edge
            edges.append(
                EdgeType(
                    kappa=_rational_dto(report.kappa),
                    upper_bound=_rational_dto(report.upper_bound),
                    oracle=[
                        _rational_dto(value, OracleType, name=name)
                        for name, value in _oracle_values(report).items()
                    ],
                    transfer=[TransferType(from_value=a, to=b, mass=m) for a, b, m in self._transfers(report)],
                    source=labels[u],
                    target=labels[v],
                    cost=report.coupling.cost,
                    bound_attained=report.bound_attained,
                    agrees=report.agrees,
                )
            )
        return CurvatureReportDto(edge=edges)

    def to_dict(self) -> dict:
        labels = self.graph.labels
        edges = []
        for report in self.reports:
            u, v = report.edge
            entry = {
                "edge": [labels[u], labels[v]],
                "kappa": UTIL.rational_to_dict(report.kappa),
                "upper_bound": UTIL.rational_to_dict(report.upper_bound),
                "bound_attained": report.bound_attained,
                "cost": report.coupling.cost,
                "lcm": report.instance.lcm,
                "coupling": [{"from": a, "to": b, "mass": m} for a, b, m in self._transfers(report)],
            }
            oracles = _oracle_values(report)
            if oracles or report.slackness is not None:
                entry["oracles"] = {name: UTIL.rational_to_dict(value) for name, value in oracles.items()}
                entry["slackness"] = report.slackness
                entry["agrees"] = report.agrees
            edges.append(entry)
        return {"edges": edges}

    def to_text(self) -> str:
        labels = self.graph.labels
        lines = []
        for report in self.reports:
            u, v = report.edge
            line = f"{labels[u]} {labels[v]} {UTIL.format_rational(report.kappa)}"
            oracles = _oracle_values(report)
            if oracles:
                line += " " + " ".join(f"{name}={UTIL.format_rational(value)}" for name, value in oracles.items())
                line += " ok" if report.agrees else " MISMATCH"
            lines.append(line)
        return "\n".join(lines) + "\n"


class SharpnessDocument(Buildable):
    """Bonnet-Myers verdict with pole pairs and check results."""

    def __init__(self, graph: Graph, report: SharpnessReport) -> None:
        self.graph = graph
        self.report = report

    def build(self) -> SharpnessReportDto:
        labels = self.graph.labels
        report = self.report
        u, v = report.witness_edge
        structure = None
        if report.structure is not None:
            structure = StructureType(r=report.structure.r, t=report.structure.t)
        return SharpnessReportDto(
            kappa_min=_rational_dto(report.kappa_min, KappaMinType, witness_source=labels[u], witness_target=labels[v]),
            pole_pair=[PolePairType(first=labels[a], second=labels[b]) for a, b in report.pole_pairs],
            check=[
                CheckType(witness=list(check.witnesses), name=name, pass_value=check.passed, applicable=check.applicable)
                for name, check in self._checks().items()
            ],
            structure=structure,
            diameter=report.diameter,
            sharp=report.sharp,
        )

    def _checks(self) -> dict:
        checks = dict(self.report.checks)
        if self.report.structure is not None:
            for name, check in self.report.structure.checks.items():
                checks[f"diameter3_{name}"] = check
        return checks

    def to_dict(self) -> dict:
        labels = self.graph.labels
        report = self.report
        u, v = report.witness_edge
        kappa_min = UTIL.rational_to_dict(report.kappa_min)
        kappa_min["witness_edge"] = [labels[u], labels[v]]
        document = {
            "diameter": report.diameter,
            "kappa_min": kappa_min,
            "sharp": report.sharp,
            "poles": [[labels[a], labels[b]] for a, b in report.pole_pairs],
            "checks": {
                name: {"pass": check.passed, "witnesses": list(check.witnesses), "applicable": check.applicable}
                for name, check in self._checks().items()
            },
        }
        if report.structure is not None:
            document["structure"] = {"r": report.structure.r, "t": report.structure.t}
        return document

    def to_text(self) -> str:
        labels = self.graph.labels
        report = self.report
        u, v = report.witness_edge
        lines = [
            f"diameter: {report.diameter}",
            f"kappa_min: {UTIL.format_rational(report.kappa_min)} ({labels[u]} {labels[v]})",
            f"sharp: {str(report.sharp).lower()}",
            "poles: " + ", ".join(f"{labels[a]}-{labels[b]}" for a, b in report.pole_pairs),
        ]
        for name, check in self._checks().items():
            status = "pass" if check.passed else "FAIL"
            if not check.applicable:
                status += " (not applicable)"
            lines.append(f"check {name}: {status}")
            lines.extend(f"  {witness}" for witness in check.witnesses)
        if report.structure is not None:
            lines.append(f"structure: r={report.structure.r} t={report.structure.t}")
        return "\n".join(lines) + "\n"
