"""Growth classification and the two envelope fitters."""

from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from pdml.growth import (
    ample_gap_lower_check,
    classify_growth,
    diff_sequence,
    ksm_upper_check,
)


def _family(P, a, Q, b, N):
    """x_n = P(n) a^n + Q(n) b^n as exact fractions."""

    def ev(coeffs, n):
        return sum(Fraction(c) * n**k for k, c in enumerate(coeffs))

    a, b = Fraction(a), Fraction(b)
    return [ev(P, n) * a**n + ev(Q, n) * b**n for n in range(N + 1)]


class TestDiff:
    def test_kills_pure_exponential(self):
        xs = [Fraction(3) * 2**n for n in range(10)]
        assert all(v == 0 for v in diff_sequence(xs, 2)[1:])

    def test_lowers_polynomial_degree(self):
        xs = [Fraction(n * n) * 2**n for n in range(12)]
        once = diff_sequence(xs, 2)
        # (n^2 - (n-1)^2) 2^n has linear polynomial part; a second pass
        # leaves a constant, a third kills it
        thrice = diff_sequence(xs, 2, order=3)
        assert all(v == 0 for v in thrice[3:])

    def test_order_zero_is_identity(self):
        xs = [1, 2, 3]
        assert diff_sequence(xs, 5, order=0) == [1, 2, 3]

    def test_negative_order_rejected(self):
        with pytest.raises(ValueError):
            diff_sequence([1, 2, 3], 2, order=-1)


class TestClassify:
    def test_case_i_orders_and_limits(self):
        for P, a, Q, b in [
            ([3], 2, [1], 1),
            ([5, 0, 2], 2, [7], -1),
            ([0, 1], 3, [1, 1], 2),
            ([1, 0, 0, 4], Fraction(5, 2), [2], 1),
        ]:
            xs = _family(P, a, Q, b, 200)
            g = classify_growth(xs, a, m=5)
            assert g.case == "i"
            assert g.order == len(P) - 1
            # limit is the leading coefficient of P
            lead = Fraction(P[-1])
            assert abs(g.limit - lead) <= abs(lead) / 100

    def test_case_ii(self):
        xs = _family([2, 1], 1, [1], Fraction(1, 2), 60)
        g = classify_growth(xs, 1, m=2)
        assert g.case == "ii"
        assert g.envelope_constant is not None
        assert all(
            abs(x) <= g.envelope_constant * max(n, 1) ** 2
            for n, x in enumerate(xs)
        )

    def test_case_iii(self):
        xs = _family([3], Fraction(1, 2), [1], Fraction(1, 3), 60)
        g = classify_growth(xs, Fraction(1, 2), m=2)
        assert g.case == "iii"
        assert all(abs(x) <= g.envelope_constant for x in xs)

    def test_short_window_rejected(self):
        with pytest.raises(ValueError):
            classify_growth([1] * 5, 2, 2)


class TestEnvelopes:
    def test_ksm_passes_polynomial_under_exponential(self):
        xs = [n * n + 1 for n in range(60)]
        rep = ksm_upper_check(xs, 1, Fraction(1, 2))
        assert rep.passed and rep.witness_index is None

    def test_ksm_fails_with_witness(self):
        xs = [2**n for n in range(40)]
        rep = ksm_upper_check(xs, 1, Fraction(1, 2))
        assert not rep.passed
        assert rep.witness_index is not None and rep.witness_index >= 20

    def test_gap_passes_exponential(self):
        xs = [3**n for n in range(30)]
        rep = ample_gap_lower_check(xs, 2, 1)
        assert rep.passed and rep.constant == 1

    def test_gap_fails_slow_sequence(self):
        xs = [n * n + 1 for n in range(40)]
        rep = ample_gap_lower_check(xs, Fraction(3, 2), Fraction(0))
        assert not rep.passed

    def test_gap_rejects_zero_start(self):
        xs = [0] + [2**n for n in range(1, 20)]
        rep = ample_gap_lower_check(xs, 1, Fraction(1, 2))
        assert not rep.passed  # C0 must be strictly positive

    @settings(max_examples=40, deadline=None)
    @given(
        st.lists(st.integers(min_value=0, max_value=1000), min_size=8, max_size=40),
        st.fractions(min_value=Fraction(1, 4), max_value=Fraction(4)),
    )
    def test_ksm_reported_constant_bounds_window(self, xs, rate):
        rep = ksm_upper_check(xs, rate, Fraction(1, 10))
        for n, h in enumerate(xs):
            assert Fraction(h) <= rep.constant * rep.rate**n
