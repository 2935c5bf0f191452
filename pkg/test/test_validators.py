from fractions import Fraction

import pytest

from llycurv import generators
from llycurv.graph import Graph
from llycurv.validators import (
    CurvatureError,
    DisconnectedGraphError,
    GraphValidator,
    NotAnEdgeError,
    ParameterValidator,
    VertexError,
)


def test_errors_stay_value_errors() -> None:
    assert issubclass(NotAnEdgeError, CurvatureError)
    assert issubclass(CurvatureError, ValueError)


def test_require_int_at_least() -> None:
    ParameterValidator.require_int_at_least("n", 3, 1)
    with pytest.raises(CurvatureError, match="n must be >= 4, got 3"):
        ParameterValidator.require_int_at_least("n", 3, 4)
    with pytest.raises(CurvatureError, match="must be an integer"):
        ParameterValidator.require_int_at_least("n", True, 0)


def test_require_idleness_normalizes_to_fraction() -> None:
    assert ParameterValidator.require_idleness(0) == Fraction(0)
    assert isinstance(ParameterValidator.require_idleness(Fraction(1, 3)), Fraction)
    with pytest.raises(CurvatureError):
        ParameterValidator.require_idleness(Fraction(-1, 2))


def test_graph_validator() -> None:
    graph = generators.cycle(5)

    GraphValidator.require_edge(graph, 0, 1)
    with pytest.raises(VertexError, match="out of range 0..4"):
        GraphValidator.require_vertex(graph, 5)
    with pytest.raises(NotAnEdgeError, match="only computed on edges"):
        GraphValidator.require_edge(graph, 0, 2)
    with pytest.raises(DisconnectedGraphError):
        GraphValidator.require_connected(Graph.from_edges(["a", "b"], []))
