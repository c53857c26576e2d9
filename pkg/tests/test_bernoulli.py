from fractions import Fraction as F

import pytest
from hypothesis import given
from hypothesis import strategies as st

from oracles import rhs_value, telescoping_bernoulli
from shibasis.bernoulli import (
    BernoulliKey,
    Family,
    UniPoly,
    bernoulli,
    embed,
    expected_degree,
    homogenize,
    keys,
    restrict_z0,
    rhs,
    solve_difference,
)
from shibasis.poly import Poly, substitute

ALL_KEYS = keys(13, 6)


def U(*coeffs):
    return UniPoly(tuple(coeffs))


@pytest.mark.parametrize(
    "family, r, s, expected",
    [
        ("B", 1, 0, U(1)),
        ("B", 3, 0, U(1, 1, 1)),
        ("B", 1, 1, U(0, -1, -1)),
        ("C", 1, 0, U(2)),
    ],
)
def test_rhs_examples(family, r, s, expected):
    assert rhs(BernoulliKey(family, r, s)) == expected


@pytest.mark.parametrize(
    "g, expected",
    [
        (U(1), U(0, 1)),
        (U(1, 1, 1), U(0, F(2, 3), 0, F(1, 3))),
        (U(0, -1, -1), U(0, F(1, 3), 0, F(-1, 3))),
    ],
)
def test_solve_difference_examples(g, expected):
    assert solve_difference(g) == expected


@given(st.lists(st.fractions(min_value=-9, max_value=9, max_denominator=5), max_size=8))
def test_solve_difference_solves(cs):
    g = UniPoly(tuple(cs))
    f = solve_difference(g)
    assert f.compose_linear(1, 1) - f == g
    assert f(0) == 0


@pytest.mark.parametrize(
    "family, r, s, expected",
    [
        ("B", 3, 0, U(0, F(2, 3), 0, F(1, 3))),
        ("B", 2, 0, U(0, 1)),
        ("C", 3, 0, U(0, F(1, 3), 0, F(2, 3))),
        ("C", 1, 0, U(0, 2)),
    ],
)
def test_bernoulli_examples(family, r, s, expected):
    b = bernoulli(BernoulliKey(family, r, s))
    assert b == expected
    assert list(b.coeffs) == telescoping_bernoulli(family, r, s)
    for x in range(3):
        assert b(x + 1) - b(x) == rhs_value(family, r, s, x)


def test_homogenize_examples():
    x, z = Poly.var(2, 0), Poly.var(2, 1)
    assert homogenize(BernoulliKey("B", 2, 0)) == x * z
    assert homogenize(BernoulliKey("B", 3, 0)) == x**3 * F(1, 3) + x * z * z * F(2, 3)


def test_homogenize_slot_in_larger_ring():
    x2, z = Poly.var(4, 1), Poly.var(4, 3)
    assert homogenize(BernoulliKey("C", 3, 0), 4, 1) == x2**3 * F(2, 3) + x2 * z * z * F(1, 3)
    with pytest.raises(ValueError):
        homogenize(BernoulliKey("B", 1, 0), 4, 3)


def test_restrict_z0_examples():
    assert restrict_z0(BernoulliKey("B", 3, 0)) == U(0, 0, 0, F(1, 3))
    assert restrict_z0(BernoulliKey("B", 2, 5)) == U()
    assert restrict_z0(BernoulliKey("C", 1, 1)) == U(0, 0, 0, F(-2, 3))


def test_key_validation():
    with pytest.raises(ValueError):
        BernoulliKey("B", 0, 0)
    with pytest.raises(ValueError):
        BernoulliKey("C", 1, -1)
    with pytest.raises(ValueError):
        BernoulliKey("D", 1, 0)
    assert BernoulliKey("c", 1, 0).family is Family.C


@pytest.mark.parametrize("key", ALL_KEYS, ids=lambda k: f"{k.family}{k.r},{k.s}")
def test_invariants(key):
    b = bernoulli(key)
    # oddness
    assert b.compose_linear(-1, 0) == -b
    # difference equation, as a polynomial identity
    assert b.compose_linear(1, 1) - b - rhs(key) == UniPoly()
    assert b(0) == 0
    assert b.degree == expected_degree(key)
    # telescoping at the integers
    partial = 0
    for n in range(9):
        assert b(n) == partial
        partial += rhs_value(key.family.value, key.r, key.s, n)
    # homogenization
    h = homogenize(key)
    assert h.is_homogeneous(key.weight)
    assert substitute(h, {1: Poly.const(2, 1)}) == embed(b)
    assert substitute(h, {1: Poly.zero(2)}) == embed(restrict_z0(key))


def test_unipoly_json_round_trip():
    b = bernoulli(BernoulliKey("B", 3, 1))
    assert UniPoly.from_json(b.to_json()) == b
    assert str(bernoulli(BernoulliKey("B", 3, 0))) == "x^3/3 + 2x/3"
