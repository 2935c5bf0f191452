"""
Schema checks for the XML curvature and sharpness reports.

``source`` is either a path to a written report or the report text itself (as
returned by ``Buildable.to_xml``); text is recognised by its leading ``<``.
"""

from dataclasses import dataclass
from functools import lru_cache
from pathlib import Path

import xmlschema

from llycurv.util import UTIL, logger

ReportSource = Path | str


@dataclass(slots=True)
class ReportProblem:
    """One schema violation found in a report."""

    message: str
    reason: str | None = None
    """Short reason given by xmlschema, e.g. ``missing required attribute 'Cost'``."""

    path: str | None = None
    """XPath of the offending element."""

    line: int | None = None
    column: int | None = None

    @classmethod
    def from_error(cls, err: xmlschema.XMLSchemaValidationError) -> "ReportProblem":
        problem = cls(
            message=getattr(err, "message", str(err)),
            reason=getattr(err, "reason", None),
            path=getattr(err, "path", None),
        )
        position = getattr(err, "position", None)
        if position:
            problem.line, problem.column = position
        return problem


def _resource(source: ReportSource) -> str:
    if isinstance(source, str) and source.lstrip().startswith("<"):
        return source
    return str(Path(source).resolve())


def validate_xml(source: ReportSource) -> None:
    """
    Validate a report against ``CurvatureReport.xsd``.

    Args:
        source: Report file or report text.

    Raises:
        xmlschema.XMLSchemaValidationError: On the first violation.
    """
    _load_schema(str(UTIL.schema_path)).validate(_resource(source))


def report_problems(source: ReportSource, limit: int | None = None) -> list[ReportProblem]:
    """Every violation in document order, at most ``limit`` of them."""
    problems = []
    for err in _load_schema(str(UTIL.schema_path)).iter_errors(_resource(source)):
        problems.append(ReportProblem.from_error(err))
        if limit is not None and len(problems) >= limit:
            break
    logger.debug("report schema check: %d problem(s)", len(problems))
    return problems


def validate_xml_safe(source: ReportSource) -> tuple[bool, ReportProblem | None]:
    """``(True, None)`` for a valid report, else ``(False, first_problem)``."""
    problems = report_problems(source, limit=1)
    if problems:
        return False, problems[0]
    return True, None


@lru_cache(maxsize=2)
def _load_schema(schema_path: str) -> xmlschema.XMLSchema:
    logger.debug("loading report schema %s", schema_path)
    return xmlschema.XMLSchema(schema_path)
