from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from lpalg.linalg import Span, combine
from lpalg.rings import integers, modular, parse_ring, rationals


def test_rational_solve():
    s = Span(rationals(), [{"x": 1, "y": 1}, {"x": 1, "y": -1}])
    sol = s.solve({"x": 3, "y": 1})
    assert sol == [2, 1]
    assert s.rank() == 2


def test_integer_span_respects_lattice():
    s = Span(integers(), [{"x": 2}, {"y": 3}])
    assert s.contains({"x": 4, "y": -3})
    assert not s.contains({"x": 1})


def test_integer_span_uses_gcd():
    # 4 and 6 generate 2Z
    s = Span(integers(), [{"x": 4}, {"x": 6}])
    sol = s.solve({"x": 2})
    assert sol is not None and 4 * sol[0] + 6 * sol[1] == 2
    assert not s.contains({"x": 3})


def test_modular_span_with_zero_divisors():
    R = modular(4)
    s = Span(R, [{"x": 2}])
    assert s.contains({"x": 2}) and s.contains({"x": 0})
    assert not s.contains({"x": 1})
    sol = Span(R, [{"x": 3}]).solve({"x": 1})
    assert sol == [3]


def test_product_ring_splits():
    R = parse_ring("Z/2 x Q")
    s = Span(R, [{"x": (1, 0)}, {"x": (0, 1)}])
    sol = s.solve({"x": (1, Fraction(5, 2))})
    assert sol is not None
    assert combine(R, sol, [{"x": (1, 0)}, {"x": (0, 1)}]) == {"x": (1, Fraction(5, 2))}


def test_empty_span():
    s = Span(rationals(), [])
    assert s.contains({})
    assert not s.contains({"x": 1})


def test_rank_only_over_fields():
    with pytest.raises(ValueError):
        Span(integers(), [{"x": 1}]).rank()
    assert Span(modular(5), [{"x": 1, "y": 2}, {"x": 2, "y": 4}]).rank() == 1


_rings = st.sampled_from([rationals(), integers(), modular(6), modular(7), parse_ring("Z/4 x Q")])


@settings(max_examples=80, deadline=None)
@given(_rings, st.lists(st.lists(st.integers(-4, 4), min_size=3, max_size=3), min_size=1, max_size=4), st.data())
def test_combinations_are_found(R, rows, data):
    gens = [{i: R.coerce(c) for i, c in enumerate(row) if c} for row in rows]
    coeffs = [R.coerce(data.draw(st.integers(-3, 3))) for _ in gens]
    target = combine(R, coeffs, gens)
    sol = Span(R, gens).solve(target)
    assert sol is not None
    assert combine(R, sol, gens) == target
