"""Rational functions over F_p in reduced canonical form."""

from __future__ import annotations

from .poly import Poly


class RatFunc:
    """num/den with gcd(num, den) = 1 and den monic."""

    __slots__ = ("num", "den")

    def __init__(self, num: Poly, den: Poly | None = None):
        if den is None:
            den = Poly.one(num.p)
        if num.p != den.p:
            raise ValueError("prime mismatch")
        if den.is_zero():
            raise ZeroDivisionError("zero denominator")
        if num.is_zero():
            den = Poly.one(num.p)
        else:
            g = num.gcd(den)
            if not g.is_one():
                num = num // g
                den = den // g
            if not den.is_monic():
                u = pow(den.lead, den.p - 2, den.p)
                num = num.scale(u)
                den = den.scale(u)
        object.__setattr__(self, "num", num)
        object.__setattr__(self, "den", den)

    def __setattr__(self, name, value):
        raise AttributeError("RatFunc is immutable")

    @property
    def p(self) -> int:
        return self.num.p

    @classmethod
    def zero(cls, p: int) -> "RatFunc":
        return cls(Poly.zero(p))

    @classmethod
    def one(cls, p: int) -> "RatFunc":
        return cls(Poly.one(p))

    @classmethod
    def t(cls, p: int) -> "RatFunc":
        return cls(Poly.t(p))

    @classmethod
    def constant(cls, p: int, a: int) -> "RatFunc":
        return cls(Poly.constant(p, a))

    @classmethod
    def from_poly(cls, f: Poly) -> "RatFunc":
        return cls(f)

    def is_zero(self) -> bool:
        return self.num.is_zero()

    def is_one(self) -> bool:
        return self.num.is_one() and self.den.is_one()

    def is_constant(self) -> bool:
        return self.num.is_constant() and self.den.is_one()

    def is_poly(self) -> bool:
        return self.den.is_one()

    def __bool__(self) -> bool:
        return not self.num.is_zero()

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, RatFunc)
            and self.num == other.num
            and self.den == other.den
        )

    def __hash__(self) -> int:
        return hash((self.num, self.den))

    def __add__(self, other: "RatFunc") -> "RatFunc":
        return RatFunc(
            self.num * other.den + other.num * self.den, self.den * other.den
        )

    def __neg__(self) -> "RatFunc":
        return RatFunc(-self.num, self.den)

    def __sub__(self, other: "RatFunc") -> "RatFunc":
        return self + (-other)

    def __mul__(self, other: "RatFunc") -> "RatFunc":
        return RatFunc(self.num * other.num, self.den * other.den)

    def __truediv__(self, other: "RatFunc") -> "RatFunc":
        if other.is_zero():
            raise ZeroDivisionError("division by zero rational function")
        return RatFunc(self.num * other.den, self.den * other.num)

    def inverse(self) -> "RatFunc":
        if self.is_zero():
            raise ZeroDivisionError("inverse of zero")
        return RatFunc(self.den, self.num)

    def __pow__(self, e: int) -> "RatFunc":
        if e < 0:
            return self.inverse() ** (-e)
        return RatFunc(self.num**e, self.den**e)

    def height(self) -> int:
        """Naive height in degree units: max(deg num, deg den)."""
        if self.is_zero():
            return 0
        return max(self.num.degree, self.den.degree)

    @classmethod
    def parse(cls, p: int, s: str) -> "RatFunc":
        """Parse "num / den" (den optional); either side may be
        parenthesized."""
        if "/" in s:
            num_s, den_s = s.split("/", 1)
        else:
            num_s, den_s = s, None

        def strip_parens(u: str) -> str:
            u = u.strip()
            if u.startswith("(") and u.endswith(")"):
                u = u[1:-1]
            return u

        num = Poly.parse(p, strip_parens(num_s))
        den = Poly.parse(p, strip_parens(den_s)) if den_s else Poly.one(p)
        return cls(num, den)

    def __str__(self) -> str:
        if self.den.is_one():
            return str(self.num)
        num_s = str(self.num)
        den_s = str(self.den)
        if " " in num_s:
            num_s = f"({num_s})"
        if " " in den_s:
            den_s = f"({den_s})"
        return f"{num_s} / {den_s}"

    def __repr__(self) -> str:
        return f"RatFunc(p={self.p}, {self})"
