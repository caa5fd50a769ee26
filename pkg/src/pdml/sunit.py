"""S-unit representation of torus points and the probabilistic
membership oracle.

Points of G_m^n whose coordinates live in the multiplicative group
generated by fixed monic irreducibles (and constants) are stored as a
unit in F_p^* plus an integer exponent vector per coordinate.  This keeps
orbit points with coordinate degrees beyond 10^18 as finite data.
Membership in a subvariety is tested by evaluating the defining Laurent
equations in random finite-field quotients F_p[t]/(m): a nonzero value
certifies non-membership, while all-zero evaluations give a quantified
error bound computed from exponent magnitudes alone.
"""

from __future__ import annotations

import json
import math
import random
from dataclasses import dataclass, field

from .funcfield import Poly, RatFunc, QuotientRing, factor, is_irreducible
from .funcfield.factor import random_irreducible


class NotRepresentable(Exception):
    pass


class DegreeCapExceeded(Exception):
    pass


class BadParameters(Exception):
    pass


class BadModulus(Exception):
    pass


class GeneratorBasis:
    """Multiplicative basis: distinct monic irreducible polynomials.

    Distinct monic irreducibles are automatically multiplicatively
    independent modulo constants (their valuation vectors are distinct
    unit vectors), so independence reduces to a distinctness check.
    """

    __slots__ = ("p", "generators", "_index")

    def __init__(self, p: int, generators: list[Poly]):
        seen = set()
        for g in generators:
            if g.p != p:
                raise ValueError("prime mismatch in generator basis")
            if not g.is_monic() or not is_irreducible(g):
                raise ValueError(f"generator {g} is not a monic irreducible")
            if g in seen:
                raise ValueError(f"duplicate generator {g}")
            seen.add(g)
        self.p = p
        self.generators = tuple(generators)
        self._index = {g: i for i, g in enumerate(self.generators)}

    def __len__(self) -> int:
        return len(self.generators)

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, GeneratorBasis)
            and self.p == other.p
            and self.generators == other.generators
        )

    def __hash__(self):
        return hash((self.p, self.generators))

    def index_of(self, g: Poly) -> int | None:
        return self._index.get(g)

    def extended(self, new_gens: list[Poly]) -> "GeneratorBasis":
        fresh = [g for g in new_gens if g not in self._index]
        return GeneratorBasis(self.p, list(self.generators) + fresh)

    def extends(self, other: "GeneratorBasis") -> bool:
        """True if self's generators start with other's (prefix embed)."""
        return (
            self.p == other.p
            and self.generators[: len(other.generators)] == other.generators
        )

    @property
    def bad_places(self) -> tuple[Poly, ...]:
        """Finite places where some generator has nonzero valuation
        (the infinite place is always bad for nonconstant generators)."""
        return self.generators

    @classmethod
    def parse(cls, p: int, names: list[str]) -> "GeneratorBasis":
        return cls(p, [Poly.parse(p, s) for s in names])

    def __str__(self) -> str:
        return f"<{', '.join(str(g) for g in self.generators)}>"


class SUnitPoint:
    """Point of G_m^n: coordinate i is units[i] * prod_j g_j^{exps[i][j]}."""

    __slots__ = ("basis", "units", "exps")

    def __init__(self, basis: GeneratorBasis, units, exps):
        r = len(basis)
        units = tuple(int(u) % basis.p for u in units)
        exps = tuple(tuple(int(e) for e in row) for row in exps)
        if len(units) != len(exps):
            raise ValueError("units/exponents length mismatch")
        for u in units:
            if u == 0:
                raise ValueError("coordinate unit must be nonzero")
        for row in exps:
            if len(row) != r:
                raise ValueError("exponent vector length != basis size")
        self.basis = basis
        self.units = units
        self.exps = exps

    @property
    def dimension(self) -> int:
        return len(self.units)

    @property
    def p(self) -> int:
        return self.basis.p

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, SUnitPoint)
            and self.basis == other.basis
            and self.units == other.units
            and self.exps == other.exps
        )

    def __hash__(self):
        return hash((self.basis, self.units, self.exps))

    @classmethod
    def identity(cls, basis: GeneratorBasis, n: int) -> "SUnitPoint":
        return cls(basis, [1] * n, [[0] * len(basis)] * n)

    @classmethod
    def from_ratfuncs(
        cls, basis: GeneratorBasis, coords: list[RatFunc]
    ) -> "SUnitPoint":
        units, exps = [], []
        for x in coords:
            u, e = _represent(basis, x)
            units.append(u)
            exps.append(e)
        return cls(basis, units, exps)

    def embed(self, basis: GeneratorBasis) -> "SUnitPoint":
        """Re-express over a basis extending this point's basis."""
        if basis == self.basis:
            return self
        if not basis.extends(self.basis):
            raise ValueError("target basis does not extend point basis")
        pad = len(basis) - len(self.basis)
        return SUnitPoint(
            basis, self.units, [list(e) + [0] * pad for e in self.exps]
        )

    # -- group operations (coordinatewise) ----------------------------

    def mul(self, other: "SUnitPoint") -> "SUnitPoint":
        a, b = _common_basis(self, other)
        p = a.p
        units = [(x * y) % p for x, y in zip(a.units, b.units)]
        exps = [
            [x + y for x, y in zip(ea, eb)] for ea, eb in zip(a.exps, b.exps)
        ]
        return SUnitPoint(a.basis, units, exps)

    def inverse(self) -> "SUnitPoint":
        p = self.p
        units = [pow(u, p - 2, p) for u in self.units]
        exps = [[-e for e in row] for row in self.exps]
        return SUnitPoint(self.basis, units, exps)

    def power(self, k: int) -> "SUnitPoint":
        p = self.p
        units = [pow(u, k % (p - 1) if p > 2 else 0, p) for u in self.units]
        exps = [[k * e for e in row] for row in self.exps]
        return SUnitPoint(self.basis, units, exps)

    def coordinate_power(self, i: int, k: int) -> tuple[int, tuple[int, ...]]:
        p = self.p
        u = pow(self.units[i], k % (p - 1) if p > 2 else 0, p)
        return u, tuple(k * e for e in self.exps[i])

    def replace_coordinate(self, i, unit, exps) -> "SUnitPoint":
        units = list(self.units)
        rows = [list(r) for r in self.exps]
        units[i] = unit
        rows[i] = list(exps)
        return SUnitPoint(self.basis, units, rows)

    # -- serialization -------------------------------------------------

    def to_json_dict(self) -> dict:
        return {
            "units": list(self.units),
            "exponents": [[str(e) for e in row] for row in self.exps],
        }

    @classmethod
    def from_json_dict(cls, basis: GeneratorBasis, d: dict) -> "SUnitPoint":
        return cls(
            basis,
            d["units"],
            [[int(e) for e in row] for row in d["exponents"]],
        )


def basis_points_to_json(basis: GeneratorBasis, points: list[SUnitPoint]):
    return {
        "p": basis.p,
        "generators": [str(g) for g in basis.generators],
        "points": [pt.to_json_dict() for pt in points],
    }


def basis_points_from_json(doc) -> tuple[GeneratorBasis, list[SUnitPoint]]:
    basis = GeneratorBasis.parse(doc["p"], doc["generators"])
    pts = [SUnitPoint.from_json_dict(basis, d) for d in doc["points"]]
    return basis, pts


def _common_basis(a: SUnitPoint, b: SUnitPoint):
    if a.basis == b.basis:
        return a, b
    if a.basis.extends(b.basis):
        return a, b.embed(a.basis)
    if b.basis.extends(a.basis):
        return a.embed(b.basis), b
    raise ValueError("points live over incompatible bases")


def _represent(basis: GeneratorBasis, x: RatFunc) -> tuple[int, list[int]]:
    """Write a nonzero S-unit RatFunc over the basis; raise if impossible."""
    if x.is_zero():
        raise NotRepresentable("zero is not a torus coordinate")
    exps = [0] * len(basis)
    unit = 1
    p = x.p
    for poly, sign in ((x.num, 1), (x.den, -1)):
        if poly.is_constant():
            c = poly.c[0] if poly.c else 0
            unit = (unit * pow(c, sign if sign > 0 else p - 2, p)) % p
            continue
        u, factors = factor(poly)
        unit = (unit * pow(u, sign if sign > 0 else p - 2, p)) % p
        for pi, mult in factors:
            idx = basis.index_of(pi)
            if idx is None:
                raise NotRepresentable(f"factor {pi} outside basis")
            exps[idx] += sign * mult
    return unit, exps


# -- exact values and heights -----------------------------------------


def exact_value(point: SUnitPoint, degree_cap: int = 10_000):
    """Exact RatFunc coordinates; error if represented degrees blow up."""
    out = []
    gens = point.basis.generators
    p = point.p
    for u, row in zip(point.units, point.exps):
        total = sum(abs(e) * g.degree for e, g in zip(row, gens))
        if total > degree_cap:
            raise DegreeCapExceeded(
                f"coordinate degree {total} exceeds cap {degree_cap}"
            )
        num = Poly.constant(p, u)
        den = Poly.one(p)
        for e, g in zip(row, gens):
            if e > 0:
                num = num * g**e
            elif e < 0:
                den = den * g ** (-e)
        out.append(RatFunc(num, den))
    return out


def coordinate_height(basis: GeneratorBasis, exps) -> int:
    """h of unit * prod g^e computed from exponents only."""
    degs = [g.degree for g in basis.generators]
    neg = sum(d * max(0, -e) for d, e in zip(degs, exps))
    inf = max(0, sum(d * e for d, e in zip(degs, exps)))
    return neg + inf


def height_of(point: SUnitPoint, model: str = "per-coordinate-sum") -> int:
    """Exact height in degree units, straight from the exponent lattice."""
    basis = point.basis
    if model == "per-coordinate-sum":
        return sum(coordinate_height(basis, row) for row in point.exps)
    if model == "projective":
        # embed (1 : x_1 : ... : x_n); h = sum_v deg(v) * (-min(0, v))
        degs = [g.degree for g in basis.generators]
        total = 0
        for j, d in enumerate(degs):
            vmin = min(0, min(row[j] for row in point.exps))
            total += d * (-vmin)
        vinf_min = min(
            0,
            min(
                -sum(d * e for d, e in zip(degs, row)) for row in point.exps
            ),
        )
        total += -vinf_min
        return total
    raise ValueError(f"unknown height model {model!r}")


def coordinate_heights(point: SUnitPoint) -> list[int]:
    return [coordinate_height(point.basis, row) for row in point.exps]


# -- Frobenius descent ------------------------------------------------


def _unit_root(u: int, p: int) -> int:
    # Frobenius is the identity on F_p, so u^(1/p) = u
    return u


def add_constant(
    point: SUnitPoint,
    i: int,
    beta: RatFunc,
    basis_extension: str = "allowed",
    degree_cap: int = 512,
) -> SUnitPoint:
    """Replace coordinate i by (value + beta), staying in S-unit form.

    Frobenius descent: with p^k the largest p-power dividing every
    exponent of the coordinate, the p^k-th root u is computed exactly,
    u + beta^(1/p^k) is factored, and the result is raised back.
    """
    p = point.p
    row = point.exps[i]
    nonzero = [e for e in row if e]
    k = 0
    if nonzero:
        k = min(_vp(abs(e), p) for e in nonzero)
    # beta must also admit a p^k-th root; lower k until it does
    broot = None
    while k >= 0:
        broot = _ratfunc_frobenius_root(beta, k)
        if broot is not None:
            break
        k -= 1
    assert broot is not None and k >= 0
    q = p**k
    u_unit = _unit_root(point.units[i], p)
    root_exps = [e // q for e in row]
    root_pt = SUnitPoint(point.basis, [u_unit], [root_exps])
    u_val = exact_value(root_pt, degree_cap)[0]
    w = u_val + broot
    if w.is_zero():
        raise NotRepresentable("shift lands on zero (outside G_m)")
    new_unit = 1
    new_exps = dict()
    basis = point.basis
    fresh: list[Poly] = []
    for poly, sign in ((w.num, 1), (w.den, -1)):
        if poly.is_constant():
            c = poly.c[0]
            new_unit = (new_unit * pow(c, 1 if sign > 0 else p - 2, p)) % p
            continue
        un, factors = factor(poly)
        new_unit = (new_unit * pow(un, 1 if sign > 0 else p - 2, p)) % p
        for pi, mult in factors:
            idx = basis.index_of(pi)
            if idx is None and pi not in fresh:
                if basis_extension != "allowed":
                    raise NotRepresentable(
                        f"new factor {pi} with basis extension forbidden"
                    )
                fresh.append(pi)
            new_exps[pi] = new_exps.get(pi, 0) + sign * mult
    if fresh:
        basis = basis.extended(fresh)
        point = point.embed(basis)
    out_exps = [q * new_exps.get(g, 0) for g in basis.generators]
    # (u + beta^(1/q))^q = value + beta; units of F_p are Frobenius-fixed
    return point.replace_coordinate(i, new_unit, out_exps)


def _vp(n: int, p: int) -> int:
    k = 0
    while n % p == 0:
        n //= p
        k += 1
    return k


def _ratfunc_frobenius_root(x: RatFunc, k: int) -> RatFunc | None:
    if k == 0:
        return x
    num = x.num.frobenius_root(k)
    den = x.den.frobenius_root(k)
    if num is None or den is None:
        return None
    return RatFunc(num, den)


# -- Laurent equations and evaluation ---------------------------------


@dataclass(frozen=True)
class LaurentEquation:
    """Sum of terms coeff * prod_i x_i^{k_i} with RatFunc coefficients."""

    terms: tuple  # tuple of (RatFunc, tuple[int, ...])

    def __post_init__(self):
        if not self.terms:
            raise ValueError("equation needs at least one term")
        seen = set()
        for coeff, mono in self.terms:
            if coeff.is_zero():
                raise ValueError("zero coefficient term")
            if mono in seen:
                raise ValueError("duplicate monomial")
            seen.add(mono)

    @classmethod
    def build(cls, terms) -> "LaurentEquation":
        return cls(tuple((c, tuple(m)) for c, m in terms))

    @classmethod
    def linear(cls, p: int, coeffs: dict[int, int], const: int, n: int):
        """sum coeffs[i]*x_i + const = 0 convenience constructor."""
        terms = []
        for i, c in sorted(coeffs.items()):
            mono = [0] * n
            mono[i] = 1
            terms.append((RatFunc.constant(p, c), tuple(mono)))
        if const % p:
            terms.append((RatFunc.constant(p, const), (0,) * n))
        return cls(tuple(terms))

    def degree_bound(self, coord_heights: list[int]) -> int:
        """Bound on max(deg num, deg den) of the evaluated expression."""
        total = 0
        for coeff, mono in self.terms:
            total += coeff.height() + sum(
                abs(k) * h for k, h in zip(mono, coord_heights)
            )
        return total

    def to_json_dict(self):
        return [
            {"coeff": str(c), "monomial": list(m)} for c, m in self.terms
        ]

    @classmethod
    def from_json_dict(cls, p: int, doc) -> "LaurentEquation":
        return cls(
            tuple(
                (RatFunc.parse(p, t["coeff"]), tuple(t["monomial"]))
                for t in doc
            )
        )


def eval_mod(point: SUnitPoint, ring: QuotientRing):
    """Reduce every coordinate in F_p[t]/(m); exact group homomorphism."""
    p = point.p
    order = p**ring.d - 1
    gens = []
    for g in point.basis.generators:
        res = ring.from_poly(g)
        if ring.is_zero(res):
            raise BadModulus(f"modulus divides generator {g}")
        gens.append(res)
    out = []
    for u, row in zip(point.units, point.exps):
        acc = ring.from_int(u)
        for e, gres in zip(row, gens):
            e %= order
            if e:
                acc = ring.mul(acc, ring.pow(gres, e))
        out.append(acc)
    return out


def eval_equation(ring: QuotientRing, eq: LaurentEquation, coords):
    """Evaluate one Laurent equation at reduced coordinates."""
    total = ring.zero()
    inv_cache: dict[int, object] = {}
    for coeff, mono in eq.terms:
        num = ring.from_poly(coeff.num)
        den = ring.from_poly(coeff.den)
        if ring.is_zero(den):
            raise BadModulus("modulus divides a coefficient denominator")
        term = ring.mul(num, ring.inv(den)) if not coeff.is_poly() else num
        for i, k in enumerate(mono):
            if k == 0:
                continue
            base = coords[i]
            if k < 0:
                if i not in inv_cache:
                    inv_cache[i] = ring.inv(base)
                base = inv_cache[i]
                k = -k
            term = ring.mul(term, ring.pow(base, k))
        total = ring.add(total, term)
    return total


# -- membership oracle -------------------------------------------------


@dataclass(frozen=True)
class NotMember:
    equation_index: int
    trial_index: int
    modulus: Poly

    tag = "NotMember"
    certainty = "Certain"


@dataclass(frozen=True)
class ProbablyMember:
    error_bound_log2: float
    trials: int
    moduli: tuple

    tag = "ProbablyMember"
    certainty = "Probabilistic"


def log2_int(x: int) -> float:
    """log2 for arbitrary-precision positive integers."""
    if x <= 0:
        return 0.0
    bl = x.bit_length()
    if bl <= 500:
        return math.log2(x)
    return (bl - 60) + math.log2(x >> (bl - 60))


def oracle_error_bound_log2(
    p: int, d: int, trials: int, degree_bound: int
) -> float:
    """log2 of (D_max * d / p^d)^trials."""
    if degree_bound <= 0:
        degree_bound = 1
    per_trial = (
        log2_int(degree_bound) + math.log2(d) - d * math.log2(p)
    )
    return trials * per_trial


def sample_modulus(
    basis: GeneratorBasis, d: int, rng: random.Random
) -> Poly:
    """Fresh irreducible modulus of degree d avoiding the bad places."""
    while True:
        m = random_irreducible(basis.p, d, rng)
        if all((g % m) for g in basis.generators if g.degree >= d):
            if m not in basis.generators:
                return m


def membership_test(
    point: SUnitPoint,
    equations: list[LaurentEquation],
    d: int,
    trials: int,
    seed: int,
):
    """Probabilistic membership verdict for the variety cut out by the
    equations.

    Sound on the NotMember side; ProbablyMember carries the error bound
    (D_max*d/p^d)^trials computed from exponent magnitudes.
    """
    p = point.p
    hs = coordinate_heights(point)
    dmax = max(
        (eq.degree_bound(hs) for eq in equations), default=1
    )
    if d < 1 or trials < 1:
        raise BadParameters("need d >= 1 and trials >= 1")
    # meaningful bound requires p^d/d > D_max
    if d * max(dmax, 1) >= p**d:
        raise BadParameters(
            f"p^d/d does not exceed the degree bound {dmax}"
        )
    rng = random.Random(seed)
    moduli = []
    for trial in range(trials):
        trial_rng = random.Random(rng.getrandbits(64))
        m = sample_modulus(point.basis, d, trial_rng)
        moduli.append(m)
        ring = QuotientRing(p, m)
        coords = eval_mod(point, ring)
        for ei, eq in enumerate(equations):
            if not ring.is_zero(eval_equation(ring, eq, coords)):
                return NotMember(ei, trial, m)
    bound = oracle_error_bound_log2(p, d, trials, dmax)
    return ProbablyMember(bound, trials, tuple(moduli))
