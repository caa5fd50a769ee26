"""Polynomials in z whose coefficients are rational functions of y.

This is the one multivariate tower the workbench needs: expressions built
from generators like (z+1)^m/(y+1) and z^m/y, multiplied out exactly over
the rationals, with single z-coefficients extracted at the end.  Elements
are stored z-major: a list of integer y-polynomials over one common
integer y-polynomial denominator.  No gcd normalization happens during
arithmetic (denominator degrees stay small for the expressions in scope);
extraction reduces with sympy.
"""

from __future__ import annotations

import math

import sympy

Y = sympy.Symbol("y")


class DegreeCapExceeded(Exception):
    pass


def y_trim(a: tuple[int, ...]) -> tuple[int, ...]:
    n = len(a)
    while n and a[n - 1] == 0:
        n -= 1
    return a[:n]


def y_add(a, b):
    if len(a) < len(b):
        a, b = b, a
    out = list(a)
    for i, x in enumerate(b):
        out[i] += x
    return y_trim(tuple(out))


def y_neg(a):
    return tuple(-x for x in a)

def y_sub(a, b):
    return y_add(a, y_neg(b))


def y_scale(a, c: int):
    if c == 0:
        return ()
    return tuple(c * x for x in a)


def y_mul(a, b):
    if not a or not b:
        return ()
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, yv in enumerate(b):
                out[i + j] += x * yv
    return y_trim(tuple(out))


def y_to_expr(a) -> sympy.Expr:
    return sympy.Add(*(c * Y**i for i, c in enumerate(a)))


Y_ONE = (1,)


class BiPoly:
    """(sum_k coeffs[k] z^k) / den with integer y-polynomial entries."""

    __slots__ = ("coeffs", "den")

    z_degree_cap = 4096

    def __init__(self, coeffs, den=Y_ONE):
        while coeffs and not coeffs[-1]:
            coeffs.pop()
        if len(coeffs) - 1 > self.z_degree_cap:
            raise DegreeCapExceeded(
                f"z-degree {len(coeffs) - 1} exceeds cap {self.z_degree_cap}"
            )
        self.coeffs = coeffs
        self.den = y_trim(tuple(den))
        if not self.den:
            raise ZeroDivisionError("zero denominator")

    # -- constructors --------------------------------------------------

    @classmethod
    def zero(cls) -> "BiPoly":
        return cls([])

    @classmethod
    def const(cls, c: int) -> "BiPoly":
        return cls([(c,)]) if c else cls([])

    @classmethod
    def y_poly(cls, a, den=Y_ONE) -> "BiPoly":
        return cls([y_trim(tuple(a))], den)

    @classmethod
    def z_plus_const_pow(cls, c: int, m: int, den=Y_ONE) -> "BiPoly":
        """(z + c)^m over the given y-denominator."""
        coeffs = [(math.comb(m, k) * c ** (m - k),) for k in range(m + 1)]
        return cls(coeffs, den)

    @property
    def z_degree(self) -> int:
        return len(self.coeffs) - 1

    # -- arithmetic ----------------------------------------------------

    def __add__(self, other: "BiPoly") -> "BiPoly":
        a, b = self.coeffs, other.coeffs
        da, db = self.den, other.den
        n = max(len(a), len(b))
        out = []
        for k in range(n):
            xa = y_mul(a[k], db) if k < len(a) else ()
            xb = y_mul(b[k], da) if k < len(b) else ()
            out.append(y_add(xa, xb))
        return BiPoly(out, y_mul(da, db))

    def __neg__(self) -> "BiPoly":
        return BiPoly([y_neg(c) for c in self.coeffs], self.den)

    def __sub__(self, other: "BiPoly") -> "BiPoly":
        return self + (-other)

    def __mul__(self, other: "BiPoly") -> "BiPoly":
        a, b = self.coeffs, other.coeffs
        if not a or not b:
            return BiPoly.zero()
        if len(a) + len(b) - 2 > self.z_degree_cap:
            raise DegreeCapExceeded(
                f"product z-degree {len(a) + len(b) - 2} exceeds cap"
            )
        out = [()] * (len(a) + len(b) - 1)
        for i, x in enumerate(a):
            if x:
                for j, yv in enumerate(b):
                    if yv:
                        out[i + j] = y_add(out[i + j], y_mul(x, yv))
        return BiPoly(out, y_mul(self.den, other.den))

    def scale(self, c: int) -> "BiPoly":
        return BiPoly([y_scale(a, c) for a in self.coeffs], self.den)

    def scale_frac(self, num: int, den: int) -> "BiPoly":
        return BiPoly(
            [y_scale(a, num) for a in self.coeffs], y_scale(self.den, den)
        )

    def square(self) -> "BiPoly":
        return self * self

    # -- extraction ----------------------------------------------------

    def z_coefficient_raw(self, k: int):
        """(num y-poly, den y-poly), unreduced."""
        num = self.coeffs[k] if 0 <= k < len(self.coeffs) else ()
        return num, self.den

    def z_coefficient(self, k: int) -> sympy.Expr:
        """Coefficient of z^k as a reduced rational function of y."""
        num, den = self.z_coefficient_raw(k)
        return sympy.cancel(y_to_expr(num) / y_to_expr(den))


def polyz_coefficient(expr: BiPoly, k: int) -> sympy.Expr:
    return expr.z_coefficient(k)
