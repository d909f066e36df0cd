import pytest

from lpalg.errors import ParseError
from lpalg.graph import parse_graph
from lpalg.lpa import LeavittPathAlgebra
from lpalg.rings import parse_ring, rationals

T = LeavittPathAlgebra(parse_graph("vertices: u w\nedge g: u -> u\nedge a: u -> w\n"), rationals())


def test_signs_and_coefficients():
    x = T.parse("-2*a.a^* + 1/2*w - u")
    assert str(x) == "-u + 1/2*w - 2*a.a^*"


def test_bare_coefficient_is_a_multiple_of_one():
    assert T.parse("3") == T.one().scale(3)
    assert str(T.parse("0")) == "0"


def test_product_ring_coefficients():
    alg = LeavittPathAlgebra(T.graph, parse_ring("Z/2 x Q"))
    x = alg.parse("(1,1/2)*a + (0,3)*a")
    assert str(x) == "(1,7/2)*a"
    assert alg.parse(str(x)) == x


@pytest.mark.parametrize(
    "text, column",
    [
        ("a.", 3),
        ("a + ", 5),
        ("a ^ b", 3),
        ("2 a", 3),
        ("a b", 3),
        ("zz", 1),
        ("u^*", 1),
        ("", 1),
    ],
)
def test_errors_point_at_column(text, column):
    with pytest.raises(ParseError) as info:
        T.parse(text)
    assert info.value.line == 1 and info.value.column == column


def test_non_invertible_denominator():
    alg = LeavittPathAlgebra(T.graph, parse_ring("Z/4"))
    with pytest.raises(ParseError, match="not invertible"):
        alg.parse("1/2*a")


def test_vertex_edge_name_clash():
    g = parse_graph("vertices: x y\nedge x: x -> y\n")
    alg = LeavittPathAlgebra(g, rationals())
    with pytest.raises(ParseError, match="both a vertex and an edge"):
        alg.parse("x")
    assert str(alg.parse("x^*")) == "x^*"
