"""S-unit points: exponent-lattice arithmetic, heights, and the
random-evaluation membership oracle."""

import random

import pytest

from pdml.funcfield import Poly, RatFunc, QuotientRing
from pdml.sunit import (
    GeneratorBasis,
    LaurentEquation,
    NotMember,
    ProbablyMember,
    SUnitPoint,
    coordinate_heights,
    eval_mod,
    exact_value,
    membership_test,
    sample_modulus,
)


@pytest.fixture
def basis5():
    return GeneratorBasis(5, [Poly.t(5), Poly.parse(5, "t+1")])


def test_point_equality_and_mul(basis5):
    a = SUnitPoint(basis5, [1, 2], [[1, 0], [0, 2]])
    b = SUnitPoint(basis5, [1, 2], [[1, 0], [0, 2]])
    assert a == b
    prod = a.mul(a)
    assert prod.exps == ((2, 0), (0, 4))
    assert prod.units == (1, 4)


def test_exact_value_round_trip(basis5):
    # coordinates: 2 t^3 (t+1)^-1 and 3 (t+1)^2
    pt = SUnitPoint(basis5, [2, 3], [[3, -1], [0, 2]])
    vals = exact_value(pt)
    assert vals[0] == RatFunc.parse(5, "(2*t^3)/(t+1)")
    assert vals[1] == RatFunc.parse(5, "3*t^2 + t + 3")  # 3(t+1)^2


def test_coordinate_heights_match_ratfunc(basis5):
    pt = SUnitPoint(basis5, [2, 3], [[3, -1], [-2, 5]])
    hs = coordinate_heights(pt)
    vals = exact_value(pt)
    assert hs == [v.height() for v in vals]


def test_eval_mod_matches_exact_value(basis5):
    pt = SUnitPoint(basis5, [2, 1], [[2, 1], [0, -3]])
    rng = random.Random(0)
    m = sample_modulus(basis5, 7, rng)
    ring = QuotientRing(5, m)
    coords = eval_mod(pt, ring)
    for c, v in zip(coords, exact_value(pt)):
        num = ring.from_poly(v.num % m)
        den = ring.from_poly(v.den % m)
        assert ring.equal(ring.mul(c, den), num)


def test_sample_modulus_avoids_generators(basis5):
    rng = random.Random(1)
    for _ in range(5):
        m = sample_modulus(basis5, 3, rng)
        assert m.degree == 3
        for g in basis5.generators:
            assert not (g % m).is_zero()


def test_membership_oracle_member_side(basis5):
    # point satisfying x1 - x2 = 0 exactly
    pt = SUnitPoint(basis5, [3, 3], [[2, 1], [2, 1]])
    eq = LaurentEquation.linear(5, {0: 1, 1: -1}, 0, 2)
    v = membership_test(pt, [eq], d=13, trials=2, seed=0)
    assert isinstance(v, ProbablyMember)
    assert v.error_bound_log2 < -40


def test_membership_oracle_notmember_sound(basis5):
    # x1 - x2 = t^2 - (t+1) is nonzero, so the verdict must be certain
    pt = SUnitPoint(basis5, [1, 1], [[2, 0], [0, 1]])
    eq = LaurentEquation.linear(5, {0: 1, 1: -1}, 0, 2)
    v = membership_test(pt, [eq], d=13, trials=2, seed=0)
    assert isinstance(v, NotMember)


def test_membership_oracle_constant_term(basis5):
    # (t+1) - t = 1, so x2 - x1 - 1 = 0
    pt = SUnitPoint(basis5, [1, 1], [[1, 0], [0, 1]])
    eq = LaurentEquation.linear(5, {0: -1, 1: 1}, -1, 2)
    v = membership_test(pt, [eq], d=13, trials=3, seed=4)
    assert isinstance(v, ProbablyMember)


def test_degree_bound_dominates_laurent_degrees(basis5):
    # the cleared-denominator degree bound must dominate the true degree
    pt = SUnitPoint(basis5, [1, 2], [[4, -2], [-1, 3]])
    eq = LaurentEquation.linear(5, {0: 2, 1: 3}, 1, 2)
    hs = coordinate_heights(pt)
    vals = exact_value(pt)
    expr = (
        vals[0] * RatFunc.constant(5, 2)
        + vals[1] * RatFunc.constant(5, 3)
        + RatFunc.one(5)
    )
    true_deg = max(expr.num.degree, expr.den.degree)
    assert eq.degree_bound(hs) >= true_deg


def test_basis_embed(basis5):
    big = basis5.extended([Poly.parse(5, "t+4")])
    pt = SUnitPoint(basis5, [2], [[1, -1]])
    emb = pt.embed(big)
    assert emb.exps == ((1, -1, 0),)
    assert exact_value(emb) == exact_value(pt)
