"""Places of F_p(t), valuations, the product formula, and heights.

The places are the monic irreducible polynomials (finite places, degree =
deg pi) together with the place at infinity (degree 1, v = deg den - deg
num).  Heights are measured in degree units, so every height of an
F_p(t) element is a nonnegative integer.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field

from .poly import Poly
from .ratfunc import RatFunc
from .factor import factor, is_irreducible

INFINITY = "infinity"


@dataclass(frozen=True)
class Place:
    p: int
    pi: Poly | None = None  # None encodes the place at infinity

    def __post_init__(self):
        if self.pi is not None:
            if not self.pi.is_monic() or not is_irreducible(self.pi):
                raise ValueError("finite place must be a monic irreducible")

    @property
    def is_infinite(self) -> bool:
        return self.pi is None

    @property
    def degree(self) -> int:
        return 1 if self.pi is None else self.pi.degree

    @classmethod
    def infinite(cls, p: int) -> "Place":
        return cls(p, None)

    @classmethod
    def finite(cls, pi: Poly) -> "Place":
        return cls(pi.p, pi)

    def __str__(self) -> str:
        return "infinity" if self.pi is None else str(self.pi)


def _multiplicity(f: Poly, pi: Poly) -> int:
    k = 0
    while True:
        q, r = divmod(f, pi)
        if not r.is_zero():
            return k
        f = q
        k += 1


def valuation(x: RatFunc, v: Place) -> int | float:
    """v(x); +inf sentinel for x = 0."""
    if x.is_zero():
        return float("inf")
    if v.is_infinite:
        return x.den.degree - x.num.degree
    return _multiplicity(x.num, v.pi) - _multiplicity(x.den, v.pi)


def places_of(x: RatFunc) -> list[tuple[Place, int]]:
    """All places with nonzero valuation, finite places via factorization."""
    if x.is_zero():
        raise ValueError("zero has no divisor")
    out = []
    seen = set()
    for poly in (x.num, x.den):
        if poly.is_constant():
            continue
        _, factors = factor(poly)
        for pi, _ in factors:
            if pi not in seen:
                seen.add(pi)
                pl = Place.finite(pi)
                out.append((pl, valuation(x, pl)))
    vinf = x.den.degree - x.num.degree
    if vinf:
        out.append((Place.infinite(x.p), vinf))
    return [(pl, v) for pl, v in out if v]


def product_formula_check(x: RatFunc) -> int:
    """Sum of deg(v) * v(x) over all places; always 0."""
    if x.is_zero():
        raise ValueError("product formula undefined for 0")
    return sum(pl.degree * v for pl, v in places_of(x))


def height(x: RatFunc) -> int:
    return x.height()


def height_projective(coords: list[RatFunc]) -> int:
    """h([x_0 : ... : x_N]) = sum_v deg(v) * (-min_i v(x_i)).

    Computed by clearing denominators and using
    h = max_i deg(a_i) - deg gcd(a_i); no factorization needed.
    """
    coords = [c for c in coords]
    if not coords or all(c.is_zero() for c in coords):
        raise ValueError("projective point needs a nonzero coordinate")
    p = coords[0].p
    den_lcm = Poly.one(p)
    for c in coords:
        if not c.is_zero():
            den_lcm = (den_lcm * c.den) // den_lcm.gcd(c.den)
    cleared = [
        c.num * (den_lcm // c.den) if not c.is_zero() else Poly.zero(p)
        for c in coords
    ]
    g = Poly.zero(p)
    for a in cleared:
        g = g.gcd(a)
    return max(a.degree for a in cleared if not a.is_zero()) - g.degree


def height_inequality_check(x: RatFunc, y: RatFunc) -> bool:
    """max(h(x+y), h(xy)) <= h(x) + h(y)."""
    bound = x.height() + y.height()
    return (x + y).height() <= bound and (x * y).height() <= bound


def _all_polys(p: int, max_deg: int):
    """All polynomials of degree <= max_deg (including 0)."""
    for deg in range(-1, max_deg + 1):
        if deg == -1:
            yield Poly.zero(p)
            continue
        for lead in range(1, p):
            for rest in itertools.product(range(p), repeat=deg):
                yield Poly(p, list(rest) + [lead])


def _monic_polys(p: int, max_deg: int):
    for deg in range(max_deg + 1):
        for rest in itertools.product(range(p), repeat=deg):
            yield Poly(p, list(rest) + [1])


def northcott_enumerate(p: int, A: int) -> list[RatFunc]:
    """All x in F_p(t) with h(x) <= A, without duplicates."""
    if A < 0:
        raise ValueError("height bound must be >= 0")
    out = []
    for den in _monic_polys(p, A):
        for num in _all_polys(p, A):
            if num.is_zero() and not den.is_one():
                continue
            if num.gcd(den).is_one() or (num.is_zero() and den.is_one()):
                out.append(RatFunc(num, den))
    return out
