"""
Validation utilities and error types for the curvature library.

Every business-rule violation raises a subclass of ``CurvatureError``, which
is itself a ``ValueError`` so callers that only care about bad input can keep
catching ``ValueError``.
"""

from fractions import Fraction
from typing import Iterable


class CurvatureError(ValueError):
    """Base class for every error raised by ``llycurv``."""


class GraphFormatError(CurvatureError):
    """Edge-list text could not be turned into a simple graph."""


class VertexError(CurvatureError):
    """A vertex label or index does not belong to the graph."""


class NotAnEdgeError(CurvatureError):
    """Curvature was requested for a pair of vertices that are not adjacent."""


class DisconnectedGraphError(CurvatureError):
    """The operation needs a connected graph."""


class UnbalancedInstanceError(CurvatureError):
    """Total supply and total demand of a transport problem differ."""


class InstanceTooLargeError(CurvatureError):
    """An exhaustive oracle was asked to enumerate more than it is allowed to."""


class StarCouplingError(CurvatureError):
    """A candidate star coupling breaks one of its defining conditions."""


class PreconditionError(CurvatureError):
    """An analyzer check was run on a graph that does not meet its hypotheses."""


_NON_EDGE_HINT = (
    "curvature is only computed on edges; for a connected graph a lower bound "
    "on every edge is a lower bound for every pair of vertices"
)


def _extract_filename(file_path: str) -> str:
    normalized = file_path.replace("\\", "/")
    return normalized.split("/")[-1]


class FileNameValidator:
    """Validator for report file names."""

    @staticmethod
    def validate_xml_file_name(file_name: str) -> None:
        """
        Validate that an XML report is written to a ``.xml`` file.

        Args:
            file_name: The file name or path to validate.

        Raises:
            CurvatureError: If the file name does not end with ``.xml``.

        Examples:
            >>> FileNameValidator.validate_xml_file_name("reports/q3.xml")
        """
        file_name_only = _extract_filename(file_name)
        if file_name_only == "" or not file_name_only.endswith(".xml"):
            raise CurvatureError(f"Report file name must end with '.xml': {file_name_only}")


class ParameterValidator:
    """Validator for numeric parameters shared by generators and oracles."""

    @staticmethod
    def require_int_at_least(name: str, value: int, minimum: int) -> None:
        """
        Ensure an integer parameter is not below its minimum.

        Raises:
            CurvatureError: If ``value`` is not an integer or is too small.

        Examples:
            >>> ParameterValidator.require_int_at_least("n", 3, 1)
        """
        if isinstance(value, bool) or not isinstance(value, int):
            raise CurvatureError(f"{name} must be an integer, got {value!r}")
        if value < minimum:
            raise CurvatureError(f"{name} must be >= {minimum}, got {value}")

    @staticmethod
    def require_member(name: str, value: int, allowed: Iterable[int]) -> None:
        """Ensure ``value`` is one of ``allowed``."""
        allowed = tuple(allowed)
        if value not in allowed:
            raise CurvatureError(f"{name} must be one of {list(allowed)}, got {value!r}")

    @staticmethod
    def require_idleness(alpha: Fraction) -> Fraction:
        """
        Normalize and check an idleness parameter.

        Args:
            alpha: Idleness of the lazy random walk; ints and Fractions are
                accepted, floats are refused because results must be exact.

        Returns:
            ``alpha`` as a ``Fraction``.

        Raises:
            CurvatureError: If ``alpha`` is a float or lies outside ``[0, 1)``.
        """
        if isinstance(alpha, float):
            raise CurvatureError("alpha must be an exact rational, not a float")
        alpha = Fraction(alpha)
        if not 0 <= alpha < 1:
            raise CurvatureError(f"alpha must satisfy 0 <= alpha < 1, got {alpha}")
        return alpha


class GraphValidator:
    """Validator for vertex and edge arguments."""

    @staticmethod
    def require_vertex(graph, vertex: int) -> None:
        """
        Ensure ``vertex`` is a valid index of ``graph``.

        Raises:
            VertexError: If the index is out of range.
        """
        if isinstance(vertex, bool) or not isinstance(vertex, int):
            raise VertexError(f"vertex index must be an integer, got {vertex!r}")
        if not 0 <= vertex < graph.vertex_count:
            raise VertexError(f"vertex index {vertex} out of range 0..{graph.vertex_count - 1}")

    @staticmethod
    def require_edge(graph, x: int, y: int) -> None:
        """
        Ensure ``xy`` is an edge of ``graph``.

        Raises:
            VertexError: If either endpoint is not a vertex.
            NotAnEdgeError: If ``x`` and ``y`` are not adjacent.
        """
        GraphValidator.require_vertex(graph, x)
        GraphValidator.require_vertex(graph, y)
        if not graph.has_edge(x, y):
            raise NotAnEdgeError(
                f"({graph.labels[x]}, {graph.labels[y]}) is not an edge: {_NON_EDGE_HINT}"
            )

    @staticmethod
    def require_connected(graph) -> None:
        """
        Ensure ``graph`` is connected.

        Raises:
            DisconnectedGraphError: If the graph is empty or has more than one component.
        """
        if not graph.is_connected:
            raise DisconnectedGraphError("graph must be connected")
