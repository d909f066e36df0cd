import itertools
from fractions import Fraction
from pathlib import Path

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from lpalg.errors import ParseError, PreconditionError
from lpalg.grading import IntegerGroup, cyclic_group, grading_check, induce_quotient
from lpalg.partial import PartialActionSystem, check_axioms, classify_crossed, crossed_product, parse_partial
from lpalg.rings import integers, rationals

DATA = Path(__file__).resolve().parent.parent / "data"
Q = rationals()


def load(name):
    return parse_partial((DATA / name).read_text())


def test_finite_support_system_passes():
    s = load("q3_partial.pa")
    rep = check_axioms(s)
    assert rep.all_pass, rep.to_dict()
    assert rep.scope == [0, 1, -1, 2, -2]


def test_bad_system_fails_domain_compatibility():
    rep = check_axioms(load("q3_partial_bad.pa"))
    assert not rep.all_pass
    assert rep.first_failure() == ("domain_compatibility", (1, 1))


def test_crossed_product_shape():
    a = crossed_product(load("q3_partial.pa"))
    assert a.basis == ("e1_d0", "e2_d0", "e3_d0", "e1_d1", "e2_dm1")
    assert a.is_associative()
    assert a.identity() == {"e1_d0": 1, "e2_d0": 1, "e3_d0": 1}


def test_crossed_product_grading():
    s = load("q3_partial.pa")
    rep = grading_check(crossed_product(s))
    assert rep.epsilon_strong and rep.symmetric and not rep.strong
    assert rep.epsilon_units[1] == {"e1_d0": 1}
    assert rep.epsilon_units[-1] == {"e2_d0": 1}
    assert rep.epsilon_units[0] == {"e1_d0": 1, "e2_d0": 1, "e3_d0": 1}
    declared = s.epsilon_units()
    for g in (-1, 0, 1):
        assert declared[g] == rep.epsilon_units[g]


def test_crossed_product_identity_law():
    s = load("q3_partial.pa")
    a = crossed_product(s)
    one = s.identity_element()
    for b in a.basis:
        assert a.mul({b: 1}, one) == {b: 1} == a.mul(one, {b: 1})


def test_quotient_grading_is_epsilon_strong():
    a = crossed_product(load("q3_partial.pa"))
    rep = grading_check(induce_quotient(a, 2))
    assert rep.epsilon_strong


def test_crossed_product_refuses_bad_system():
    with pytest.raises(PreconditionError, match="domain_compatibility"):
        crossed_product(load("q3_partial_bad.pa"))
    with pytest.raises(PreconditionError):
        classify_crossed(load("q3_partial_bad.pa"))


def test_group_algebra_from_global_action():
    s = load("z2_global.pa")
    assert check_axioms(s).all_pass
    a = crossed_product(s)
    assert len(a.basis) == 2
    assert grading_check(a).strong
    rep = classify_crossed(s)
    assert rep.noetherian_left == rep.artinian_left == "yes"


def test_global_integer_action_is_not_artinian():
    s = load("z_global_on_z.pa")
    rep = check_axioms(s)
    assert rep.all_pass and rep.windowed
    cls = classify_crossed(s)
    assert cls.noetherian_left == "yes" and cls.artinian_left == "no"
    assert "crossed-artinian-torsion-free" in cls.rules


def test_classify_finite_support_system():
    cls = classify_crossed(load("q3_partial.pa"))
    assert cls.verdicts() == {
        "noetherian_left": "yes",
        "noetherian_right": "yes",
        "artinian_left": "yes",
        "artinian_right": "yes",
        "semisimple": "unknown",
    }
    assert cls.rules[:2] == ["crossed-noetherian", "crossed-artinian-torsion-free"]


def test_twisted_group_algebra_gives_gaussian_rationals():
    # Z/2 acting trivially on Q with w_{1,1} = -1: Q[x]/(x^2 + 1)
    s = PartialActionSystem(cyclic_group(2), Q, 1, {1: (1,)}, {1: {0: (1,)}}, twists={(1, 1): ((-1,), (-1,))})
    assert check_axioms(s).all_pass
    a = crossed_product(s)
    assert a.mul({"e1_d1": 1}, {"e1_d1": 1}) == {"e1_d0": -1}
    assert grading_check(a).strong


def test_non_invertible_twist_detected():
    s = PartialActionSystem(cyclic_group(2), integers(), 1, {1: (1,)}, twists={(1, 1): ((2,), (1,))})
    rep = check_axioms(s)
    assert not rep.verdicts["twists_invertible"]


def test_unnormalized_twist_detected():
    s = PartialActionSystem(cyclic_group(2), Q, 1, {1: (1,)}, twists={(0, 1): ((-1,), (-1,))})
    rep = check_axioms(s)
    assert not rep.verdicts["twist_normalization"]


def test_non_multiplicative_alpha_detected():
    s = PartialActionSystem(cyclic_group(2), Q, 2, {1: (1, 1)}, alpha={1: {0: (1, 1), 1: (0, 1)}})
    assert not check_axioms(s).verdicts["maps_are_isomorphisms"]


def test_alpha_composition_failure():
    # alpha_1 and alpha_2 are the same swap, so alpha_1 alpha_1 = id differs from alpha_2
    G = cyclic_group(3)
    s = PartialActionSystem(G, Q, 3, {1: (1, 1, 1), 2: (1, 1, 1)},
                            alpha={1: {0: (0, 1, 0), 1: (1, 0, 0), 2: (0, 0, 1)},
                                   2: {0: (0, 1, 0), 1: (1, 0, 0), 2: (0, 0, 1)}})
    rep = check_axioms(s)
    assert not rep.verdicts["composition"]


# -- random global actions ---------------------------------------------------------


def _perm_power(p, k):
    out = list(range(len(p)))
    for _ in range(k):
        out = [p[i] for i in out]
    return out


@settings(max_examples=40, deadline=None)
@given(st.integers(1, 4), st.integers(1, 3), st.data())
def test_permutation_actions_pass(n, dim, data):
    perms = [p for p in itertools.permutations(range(dim)) if _perm_power(p, n) == list(range(dim))]
    p = data.draw(st.sampled_from(perms))
    G = cyclic_group(n)
    units = {g: (1,) * dim for g in G.elements}
    alpha = {
        g: {i: tuple(1 if j == _perm_power(p, g)[i] else 0 for j in range(dim)) for i in range(dim)}
        for g in G.elements
    }
    s = PartialActionSystem(G, Q, dim, units, alpha)
    assert check_axioms(s).all_pass
    a = crossed_product(s)
    assert a.is_associative()
    rep = grading_check(a)
    assert rep.strong and rep.epsilon_strong


@pytest.mark.parametrize("k", [2, 3, 4])
def test_shift_action_on_interval(k):
    # Z acting on Q^3 by the partial shift e_i -> e_{i+1} cut down to an interval
    dim = 3
    units = {1: (0, 1, 1), -1: (1, 1, 0)}
    alpha = {1: {0: (0, 1, 0), 1: (0, 0, 1)}, -1: {1: (1, 0, 0), 2: (0, 1, 0)}}
    units[2] = (0, 0, 1)
    units[-2] = (1, 0, 0)
    alpha[2] = {0: (0, 0, 1)}
    alpha[-2] = {2: (1, 0, 0)}
    s = PartialActionSystem(IntegerGroup(), Q, dim, units, alpha)
    rep = check_axioms(s)
    assert rep.all_pass, rep.to_dict()
    a = crossed_product(s)
    assert a.is_associative()
    assert grading_check(a).epsilon_strong
    # the partial shift on three points gives the 3x3 matrices
    assert grading_check(induce_quotient(a, k)).epsilon_strong


# -- file format -----------------------------------------------------------------------


@pytest.mark.parametrize(
    "body, line",
    [
        ("ring: Q\ngroup: Z\nunit 1 = (1,0)\n", 3),
        ("ring: Q x Q\ngroup: Z\nunit 1 = (2,0)\n", 3),
        ("ring: Q x Q\ngroup: Z\nalpha 1: f1 -> (1,0)\n", 3),
        ("ring: Q x Q\ngroup: Z\nalpha 1: e3 -> (1,0)\n", 3),
        ("ring: Q x Q\ngroup: Z\ntwist 1 1 = (1,0)\n", 3),
        ("ring: Q x Q\ngroup: Z\nwhatever\n", 3),
    ],
)
def test_parse_errors(body, line):
    with pytest.raises(ParseError) as info:
        parse_partial(body)
    assert info.value.line == line


def test_mixed_ring_rejected():
    with pytest.raises(ParseError, match="power of a single ring"):
        parse_partial("ring: Q x Z\ngroup: Z\n")


def test_fraction_images_are_exact():
    s = parse_partial("ring: Q x Q\ngroup: Z/2\nunit 1 = (1,1)\nalpha 1: e1 -> (0,1), e2 -> (1,0)\n")
    assert s.alpha_image(1, 0) == (Fraction(0), Fraction(1))
    assert check_axioms(s).all_pass
