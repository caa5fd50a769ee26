"""Places, valuations, the product formula, heights, and Northcott."""

import random

from hypothesis import given, settings, strategies as st

from pdml.funcfield import (
    Poly,
    RatFunc,
    Place,
    valuation,
    places_of,
    product_formula_check,
    height,
    height_projective,
    northcott_enumerate,
)


def _random_ratfunc(rng, p, max_deg=4):
    while True:
        num = Poly(p, [rng.randrange(p) for _ in range(rng.randrange(max_deg + 1) + 1)])
        den = Poly(p, [rng.randrange(p) for _ in range(rng.randrange(max_deg + 1) + 1)])
        if not num.is_zero() and not den.is_zero():
            return RatFunc(num, den)


def test_valuation_examples():
    p = 5
    x = RatFunc.parse(p, "(t^2) / (t+1)")
    t = Place.finite(Poly.t(p))
    t1 = Place.finite(Poly.parse(p, "t+1"))
    assert valuation(x, t) == 2
    assert valuation(x, t1) == -1
    assert valuation(x, Place.infinite(p)) == -1


def test_product_formula_examples():
    for p, s in [(5, "(t^2+1)/t"), (2, "t^3+t+1"), (11, "(t+1)/(t^2+3)")]:
        assert product_formula_check(RatFunc.parse(p, s)) == 0


def test_product_formula_random():
    rng = random.Random(0)
    for p in (2, 5, 11):
        for _ in range(100):
            assert product_formula_check(_random_ratfunc(rng, p)) == 0


def test_height_equals_places_definition():
    # h(x) = sum over places of deg(v) * max(0, -v(x))
    rng = random.Random(1)
    for p in (2, 5, 11):
        for _ in range(50):
            x = _random_ratfunc(rng, p)
            if x.is_zero():
                continue
            via_places = sum(
                pl.degree * (-v) for pl, v in places_of(x) if v < 0
            )
            assert height(x) == via_places


def test_height_inequalities_examples():
    p = 5
    x = RatFunc.parse(p, "(t^2+1)/t")
    y = RatFunc.parse(p, "t+2")
    assert (x + y).height() <= x.height() + y.height()
    assert (x * y).height() <= x.height() + y.height()


def test_projective_scaling_invariance():
    rng = random.Random(2)
    for p in (2, 5, 11):
        for _ in range(50):
            coords = [_random_ratfunc(rng, p) for _ in range(3)]
            lam = _random_ratfunc(rng, p)
            scaled = [c * lam for c in coords]
            assert height_projective(coords) == height_projective(scaled)


def test_projective_height_of_affine_point():
    # h([x : 1]) = h(x)
    rng = random.Random(3)
    for p in (2, 5, 11):
        for _ in range(30):
            x = _random_ratfunc(rng, p)
            assert height_projective([x, RatFunc.one(p)]) == height(x)


def _northcott_bruteforce(p: int, A: int) -> int:
    """Independent count of {x in F_p(t) : h(x) <= A} via raw pairs."""
    import itertools

    polys = []
    for deg in range(-1, A + 1):
        if deg == -1:
            polys.append(Poly.zero(p))
            continue
        for lead in range(1, p):
            for rest in itertools.product(range(p), repeat=deg):
                polys.append(Poly(p, list(rest) + [lead]))
    seen = set()
    for num in polys:
        for den in polys:
            if den.is_zero():
                continue
            x = RatFunc(num, den)
            if x.height() <= A:
                seen.add((tuple(x.num.c), tuple(x.den.c)))
    return len(seen)


def test_northcott_count_p2_A1():
    xs = northcott_enumerate(2, 1)
    assert len(xs) == 8
    assert len(xs) == _northcott_bruteforce(2, 1)


def test_northcott_count_p5_A1():
    xs = northcott_enumerate(5, 1)
    assert len(xs) == _northcott_bruteforce(5, 1)
    assert all(x.height() <= 1 for x in xs)
    keys = {(tuple(x.num.c), tuple(x.den.c)) for x in xs}
    assert len(keys) == len(xs)


@settings(max_examples=40, deadline=None)
@given(
    st.sampled_from([2, 5, 11]),
    st.integers(min_value=0, max_value=2**30),
)
def test_height_properties_random(p, seed):
    rng = random.Random(seed)
    x = _random_ratfunc(rng, p)
    y = _random_ratfunc(rng, p)
    bound = x.height() + y.height()
    assert (x + y).height() <= bound
    assert (x - y).height() <= bound
    assert (x * y).height() <= bound
    assert height(x) >= 0
