"""Shifted monomial dynamics: orbits, return sets, twists, products."""

from pdml.funcfield import Poly, RatFunc
from pdml.sunit import (
    GeneratorBasis,
    LaurentEquation,
    SUnitPoint,
    exact_value,
)
from pdml.torusdyn import (
    Factor,
    NoRepeatWithin,
    OracleParams,
    Preperiodic,
    ShiftedMonomialMap,
    compute_orbit,
    preperiodicity_check,
    return_set,
)
from pdml.experiments import power_tower_system


def _basis(p=5):
    return GeneratorBasis(p, [Poly.t(p)])


class TestMonomialAffine:
    def test_squaring_orbit(self):
        basis = _basis()
        f = ShiftedMonomialMap.monomial_affine(basis, [[2]], [1], [[0]])
        pt = SUnitPoint(basis, [1], [[1]])  # x = t
        orbit = compute_orbit(f, pt, 5)
        # t^(2^n): heights 1, 2, 4, 8, 16, 32
        assert [rec.heights[0] for rec in orbit] == [1, 2, 4, 8, 16, 32]

    def test_exponent_matrix_round_trip(self):
        basis = _basis()
        A = [[1, 2], [0, 1]]
        f = ShiftedMonomialMap.monomial_affine(
            basis, A, [1, 1], [[0], [0]]
        )
        assert f.is_monomial_affine()
        assert f.exponent_matrix() == A

    def test_translation(self):
        basis = _basis()
        # x -> t * x
        f = ShiftedMonomialMap.monomial_affine(basis, [[1]], [1], [[1]])
        pt = SUnitPoint(basis, [1], [[0]])  # x = 1
        orbit = compute_orbit(f, pt, 4)
        assert [rec.heights[0] for rec in orbit] == [0, 1, 2, 3, 4]


class TestShiftedOrbit:
    def test_power_tower_closed_form(self):
        # y_n = (t+1)^(n p^n), z_n = t^(n p^n) for the power-tower system
        p = 5
        f, start, _ = power_tower_system(p)
        orbit = compute_orbit(f, start, 4)
        for n, rec in enumerate(orbit):
            assert rec.heights[1] == n * p**n
            assert rec.heights[2] == n * p**n
            assert rec.heights[0] == p**n

    def test_shift_value_example(self):
        # f(x) = (x + 1)^2 applied to x = t gives (t+1)^2
        p = 5
        basis = GeneratorBasis(p, [Poly.t(p), Poly.parse(p, "t+1")])
        f = ShiftedMonomialMap(
            1, basis, [1], [[0, 0]], [[Factor(0, RatFunc.constant(p, 1), 2)]]
        )
        pt = SUnitPoint(basis, [1], [[1, 0]])
        img = f.apply(pt)
        assert exact_value(img)[0] == RatFunc.parse(p, "t^2 + 2*t + 1")


class TestReturnSet:
    def test_power_tower_small_window(self):
        p = 5
        f, start, eqs = power_tower_system(p)
        oracle = OracleParams(degree=53, trials=2, seed=0)
        rep = return_set(f, start, eqs, 30, oracle)
        assert rep.members() == [1, 5, 25]
        for e in rep.entries:
            if e.verdict == "NotMember":
                assert e.certainty == "Certain"
            elif e.verdict == "ProbablyMember":
                assert e.error_bound_log2 < -80

    def test_verdicts_deterministic_in_seed(self):
        p = 5
        f, start, eqs = power_tower_system(p)
        oracle = OracleParams(degree=53, trials=2, seed=9)
        a = return_set(f, start, eqs, 20, oracle)
        b = return_set(f, start, eqs, 20, oracle)
        assert a.to_json_dict() == b.to_json_dict()

    def test_unknown_when_degree_bound_too_big(self):
        p = 5
        f, start, eqs = power_tower_system(p)
        oracle = OracleParams(degree=3, trials=1, seed=0)
        rep = return_set(f, start, eqs, 12, oracle)
        assert any(e.verdict == "Unknown" for e in rep.entries)
        # sound side never degrades: NotMember entries stay certain
        for e in rep.entries:
            if e.verdict == "NotMember":
                assert e.certainty == "Certain"


class TestFrobeniusTwist:
    def test_twist_of_squaring(self):
        basis = _basis()
        f = ShiftedMonomialMap.monomial_affine(basis, [[2]], [1], [[0]])
        g = f.frobenius_twist(5)
        pt = SUnitPoint(basis, [1], [[1]])
        assert g.apply(pt).exps == ((10,),)

    def test_isotriviality_guard(self):
        p = 5
        f, _, _ = power_tower_system(p)
        assert f.is_isotrivial()
        basis = GeneratorBasis(p, [Poly.t(p)])
        g = ShiftedMonomialMap(
            1, basis, [1], [[1]], [[Factor(0, RatFunc.zero(p), 2)]]
        )
        # translation by t is not defined over the prime field
        assert not g.is_isotrivial()


class TestSplitProduct:
    def test_product_orbit_is_componentwise(self):
        basis = _basis()
        slow = ShiftedMonomialMap.monomial_affine(
            basis, [[1, 0], [1, 1]], [1, 1], [[0], [0]]
        )
        fast = ShiftedMonomialMap.monomial_affine(basis, [[2]], [1], [[0]])
        prod = slow.split_product(fast)
        a = SUnitPoint(basis, [1, 1], [[1], [1]])
        b = SUnitPoint(basis, [1], [[1]])
        merged = prod.merge_point(a, b)
        for n in (1, 2, 3):
            lhs = merged
            for _ in range(n):
                lhs = prod.apply(lhs)
            sa, sb = a, b
            for _ in range(n):
                sa, sb = slow.apply(sa), fast.apply(sb)
            assert lhs.exps[:2] == sa.exps
            assert lhs.exps[2:] == sb.exps


class TestPreperiodicity:
    def test_periodic_point(self):
        basis = _basis()
        # x -> x^-1 has period 2 away from fixed points
        f = ShiftedMonomialMap.monomial_affine(basis, [[-1]], [1], [[0]])
        pt = SUnitPoint(basis, [1], [[1]])
        v = preperiodicity_check(f, pt, 10)
        assert isinstance(v, Preperiodic)
        assert v.period == 2

    def test_non_preperiodic(self):
        basis = _basis()
        f = ShiftedMonomialMap.monomial_affine(basis, [[2]], [1], [[0]])
        pt = SUnitPoint(basis, [1], [[1]])
        v = preperiodicity_check(f, pt, 10)
        assert isinstance(v, NoRepeatWithin)


class TestJsonRoundTrip:
    def test_map_round_trip(self):
        p = 5
        f, start, eqs = power_tower_system(p)
        doc = f.to_json_dict()
        g = ShiftedMonomialMap.from_json_dict(f.basis, doc)
        assert g == f
        pt_doc = start.to_json_dict()
        start2 = SUnitPoint.from_json_dict(f.basis, pt_doc)
        assert start2 == start
        eq_doc = eqs[0].to_json_dict()
        eq2 = LaurentEquation.from_json_dict(p, eq_doc)
        assert eq2.to_json_dict() == eq_doc
