"""Exact arithmetic over F_p[t] and F_p(t), checked against sympy."""

import sympy
from hypothesis import given, settings, strategies as st

from pdml.funcfield import Poly, RatFunc, QuotientRing
from pdml.funcfield.polyz import BiPoly

_T = sympy.Symbol("t")


def _to_sympy(f: Poly):
    return sympy.Poly(list(reversed(f.c)) or [0], _T, modulus=f.p)


def _poly_strategy(p):
    return st.lists(
        st.integers(min_value=0, max_value=p - 1), min_size=0, max_size=6
    ).map(lambda cs: Poly(p, cs))


class TestPolyAgainstSympy:
    @settings(max_examples=60, deadline=None)
    @given(st.sampled_from([2, 5, 11]), st.data())
    def test_mul_matches_sympy(self, p, data):
        a = data.draw(_poly_strategy(p))
        b = data.draw(_poly_strategy(p))
        assert _to_sympy(a * b) == _to_sympy(a) * _to_sympy(b)

    @settings(max_examples=60, deadline=None)
    @given(st.sampled_from([2, 5, 11]), st.data())
    def test_divmod_matches_sympy(self, p, data):
        a = data.draw(_poly_strategy(p))
        b = data.draw(_poly_strategy(p))
        if b.is_zero():
            return
        q, r = divmod(a, b)
        assert q * b + r == a
        assert r.is_zero() or r.degree < b.degree

    @settings(max_examples=40, deadline=None)
    @given(st.sampled_from([2, 5, 11]), st.data())
    def test_gcd_divides_both(self, p, data):
        a = data.draw(_poly_strategy(p))
        b = data.draw(_poly_strategy(p))
        g = a.gcd(b)
        if g.is_zero():
            assert a.is_zero() and b.is_zero()
            return
        assert (a % g).is_zero() and (b % g).is_zero()

    def test_parse_round_trip(self):
        for p, s in [(5, "t^2 + 3*t + 1"), (2, "t^3 + t"), (11, "7")]:
            f = Poly.parse(p, s)
            assert Poly.parse(p, str(f)) == f


class TestRatFunc:
    def test_field_axioms_sample(self):
        p = 5
        x = RatFunc.parse(p, "(t^2+1)/t")
        y = RatFunc.parse(p, "(t+2)/(t+1)")
        assert (x + y) - y == x
        assert (x * y) / y == x
        assert x * x.inverse() == RatFunc.one(p)

    def test_height_examples(self):
        # frozen values: h in degree units
        assert RatFunc.parse(5, "t").height() == 1
        assert RatFunc.parse(5, "(t^2+1)/t").height() == 2
        assert RatFunc.parse(5, "3").height() == 0
        assert RatFunc.parse(2, "1/(t^3+t+1)").height() == 3

    def test_normalization(self):
        p = 5
        a = RatFunc.parse(p, "(t^2+4)/(t+1)")  # (t-1)(t+1)/(t+1) -> t-1
        assert a == RatFunc.parse(p, "t+4")


class TestQuotientRing:
    def test_matches_poly_mod(self):
        p = 5
        m = Poly.parse(p, "t^3 + t + 1")
        ring = QuotientRing(p, m)
        a = Poly.parse(p, "t^2 + 2")
        b = Poly.parse(p, "3*t^2 + t")
        ra, rb = ring.from_poly(a), ring.from_poly(b)
        assert ring.to_poly(ring.mul(ra, rb)) == (a * b) % m
        assert ring.to_poly(ring.add(ra, rb)) == (a + b) % m

    def test_inverse(self):
        p = 11
        ring = QuotientRing(p, Poly.parse(p, "t^2 + 1"))
        a = ring.from_poly(Poly.parse(p, "t + 3"))
        assert ring.equal(ring.mul(a, ring.inv(a)), ring.one())

    def test_frobenius_is_pth_power(self):
        p = 5
        ring = QuotientRing(p, Poly.parse(p, "t^3 + t + 1"))
        a = ring.from_poly(Poly.parse(p, "2*t^2 + t + 4"))
        assert ring.equal(ring.frobenius(a), ring.pow(a, p))

    def test_pow_fast_matches_pow(self):
        p = 5
        ring = QuotientRing(p, Poly.parse(p, "t^4 + t + 2"))
        a = ring.from_poly(Poly.t(p))
        for e in (0, 1, 7, 125, 126, 5**4):
            assert ring.equal(ring.pow_fast(a, e), ring.pow(a, e))


class TestBiPoly:
    def test_z_coefficient_against_sympy(self):
        y, z = sympy.symbols("y z")
        m = 4
        # (z+1)^m * (y^2 - 1) expanded by sympy as the oracle
        ours = BiPoly.z_plus_const_pow(1, m) * BiPoly.y_poly((-1, 0, 1))
        ref = sympy.expand((z + 1) ** m * (y**2 - 1))
        for k in range(m + 1):
            assert sympy.simplify(
                ours.z_coefficient(k) - ref.coeff(z, k)
            ) == 0

    def test_square_matches_mul(self):
        a = BiPoly.z_plus_const_pow(-1, 3) * BiPoly.y_poly((0, 1))
        sq, mm = a.square(), a * a
        for k in range(7):
            assert sympy.simplify(
                sq.z_coefficient(k) - mm.z_coefficient(k)
            ) == 0
