"""Dense univariate polynomials over a prime field F_p.

Coefficients are stored lowest-degree first as a trimmed tuple of ints in
[0, p).  The zero polynomial is the empty tuple and has degree -1 by
convention.  All operations are pure; instances are immutable and hashable.
"""

from __future__ import annotations

import re
from typing import Iterable, Iterator


def _trim(coeffs: list[int]) -> tuple[int, ...]:
    while coeffs and coeffs[-1] == 0:
        coeffs.pop()
    return tuple(coeffs)


class Poly:
    """Element of F_p[t] in canonical (trimmed) form."""

    __slots__ = ("p", "c")

    def __init__(self, p: int, coeffs: Iterable[int] = ()):
        if p < 2:
            raise ValueError("p must be a prime >= 2")
        object.__setattr__(self, "p", p)
        object.__setattr__(self, "c", _trim([x % p for x in coeffs]))

    def __setattr__(self, name, value):
        raise AttributeError("Poly is immutable")

    # -- constructors -------------------------------------------------

    @classmethod
    def zero(cls, p: int) -> "Poly":
        return cls(p, ())

    @classmethod
    def one(cls, p: int) -> "Poly":
        return cls(p, (1,))

    @classmethod
    def t(cls, p: int) -> "Poly":
        return cls(p, (0, 1))

    @classmethod
    def constant(cls, p: int, a: int) -> "Poly":
        return cls(p, (a,))

    @classmethod
    def monomial(cls, p: int, k: int, a: int = 1) -> "Poly":
        return cls(p, [0] * k + [a])

    # -- basic queries ------------------------------------------------

    @property
    def degree(self) -> int:
        return len(self.c) - 1

    @property
    def lead(self) -> int:
        if not self.c:
            raise ValueError("zero polynomial has no leading coefficient")
        return self.c[-1]

    def is_zero(self) -> bool:
        return not self.c

    def is_one(self) -> bool:
        return self.c == (1,)

    def is_monic(self) -> bool:
        return bool(self.c) and self.c[-1] == 1

    def is_constant(self) -> bool:
        return len(self.c) <= 1

    def __bool__(self) -> bool:
        return bool(self.c)

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, Poly) and self.p == other.p and self.c == other.c
        )

    def __hash__(self) -> int:
        return hash((self.p, self.c))

    def __iter__(self) -> Iterator[int]:
        return iter(self.c)

    def coeff(self, k: int) -> int:
        return self.c[k] if 0 <= k < len(self.c) else 0

    # -- ring operations ----------------------------------------------

    def __add__(self, other: "Poly") -> "Poly":
        self._check(other)
        a, b = self.c, other.c
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        p = self.p
        for i, x in enumerate(b):
            out[i] = (out[i] + x) % p
        return Poly(p, out)

    def __neg__(self) -> "Poly":
        p = self.p
        return Poly(p, [(-x) % p for x in self.c])

    def __sub__(self, other: "Poly") -> "Poly":
        return self + (-other)

    def __mul__(self, other: "Poly") -> "Poly":
        self._check(other)
        a, b = self.c, other.c
        if not a or not b:
            return Poly.zero(self.p)
        p = self.p
        out = [0] * (len(a) + len(b) - 1)
        for i, x in enumerate(a):
            if x:
                for j, y in enumerate(b):
                    out[i + j] += x * y
        return Poly(p, [x % p for x in out])

    def scale(self, a: int) -> "Poly":
        p = self.p
        a %= p
        return Poly(p, [(a * x) % p for x in self.c])

    def shift(self, k: int) -> "Poly":
        """Multiply by t^k."""
        if not self.c:
            return self
        return Poly(self.p, (0,) * k + self.c)

    def __divmod__(self, other: "Poly") -> tuple["Poly", "Poly"]:
        self._check(other)
        if not other.c:
            raise ZeroDivisionError("polynomial division by zero")
        p = self.p
        r = list(self.c)
        b = other.c
        db = len(b) - 1
        inv_lead = pow(b[-1], p - 2, p)
        q = [0] * max(0, len(r) - db)
        for i in range(len(r) - 1, db - 1, -1):
            coef = r[i] % p
            if coef:
                coef = (coef * inv_lead) % p
                q[i - db] = coef
                for j, y in enumerate(b):
                    r[i - db + j] = (r[i - db + j] - coef * y) % p
        return Poly(p, q), Poly(p, r[:db])

    def __floordiv__(self, other: "Poly") -> "Poly":
        return divmod(self, other)[0]

    def __mod__(self, other: "Poly") -> "Poly":
        return divmod(self, other)[1]

    def __pow__(self, e: int) -> "Poly":
        if e < 0:
            raise ValueError("negative exponent for Poly")
        result = Poly.one(self.p)
        base = self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def pow_mod(self, e: int, modulus: "Poly") -> "Poly":
        if e < 0:
            raise ValueError("negative exponent for Poly")
        result = Poly.one(self.p) % modulus
        base = self % modulus
        while e:
            if e & 1:
                result = (result * base) % modulus
            base = (base * base) % modulus
            e >>= 1
        return result

    def monic(self) -> "Poly":
        if not self.c:
            return self
        return self.scale(pow(self.c[-1], self.p - 2, self.p))

    def gcd(self, other: "Poly") -> "Poly":
        a, b = self, other
        while b:
            a, b = b, a % b
        return a.monic() if a else a

    def derivative(self) -> "Poly":
        p = self.p
        return Poly(p, [(k * x) % p for k, x in enumerate(self.c)][1:])

    def evaluate(self, a: int) -> int:
        """Horner evaluation at a in F_p."""
        p = self.p
        acc = 0
        for x in reversed(self.c):
            acc = (acc * a + x) % p
        return acc

    def compose(self, other: "Poly") -> "Poly":
        self._check(other)
        acc = Poly.zero(self.p)
        for x in reversed(self.c):
            acc = acc * other + Poly.constant(self.p, x)
        return acc

    def frobenius_root(self, k: int = 1) -> "Poly | None":
        """The p^k-th root, if self is a p^k-th power, else None.

        In F_p[t] the p-th power map sends sum a_i t^i to sum a_i t^{pi}
        (a^p = a on constants), so the root exists iff only exponents
        divisible by p^k carry nonzero coefficients.
        """
        q = self.p**k
        out = []
        for i, x in enumerate(self.c):
            if i % q == 0:
                out.append(x)
            elif x:
                return None
        return Poly(self.p, out)

    # -- parsing / printing -------------------------------------------

    _TERM_RE = re.compile(
        r"^\s*(?:(\d+)\s*\*\s*t\s*(?:\^\s*(\d+))?"  # c*t or c*t^k
        r"|t\s*(?:\^\s*(\d+))?"  # t or t^k
        r"|(\d+))\s*$"  # constant
    )

    @classmethod
    def parse(cls, p: int, s: str) -> "Poly":
        """Parse a sparse string like "3*t^4 + t + 2"."""
        s = s.strip()
        if not s:
            raise ValueError("empty polynomial string")
        # split on + and - while keeping signs
        terms = re.split(r"(?=[+-])", s.replace(" ", ""))
        coeffs: dict[int, int] = {}
        for term in terms:
            if not term:
                continue
            sign = 1
            if term[0] == "+":
                term = term[1:]
            elif term[0] == "-":
                sign = -1
                term = term[1:]
            m = cls._TERM_RE.match(term)
            if not m:
                raise ValueError(f"cannot parse polynomial term {term!r}")
            if m.group(4) is not None:
                c, k = int(m.group(4)), 0
            elif m.group(1) is not None:
                c = int(m.group(1))
                k = int(m.group(2)) if m.group(2) else 1
            else:
                c = 1
                k = int(m.group(3)) if m.group(3) else 1
            coeffs[k] = coeffs.get(k, 0) + sign * c
        deg = max(coeffs)
        return cls(p, [coeffs.get(i, 0) for i in range(deg + 1)])

    def __str__(self) -> str:
        if not self.c:
            return "0"
        parts = []
        for k in range(len(self.c) - 1, -1, -1):
            x = self.c[k]
            if not x:
                continue
            if k == 0:
                parts.append(str(x))
            elif k == 1:
                parts.append("t" if x == 1 else f"{x}*t")
            else:
                parts.append(f"t^{k}" if x == 1 else f"{x}*t^{k}")
        return " + ".join(parts)

    def __repr__(self) -> str:
        return f"Poly(p={self.p}, {self})"

    def _check(self, other: "Poly") -> None:
        if self.p != other.p:
            raise ValueError(f"prime mismatch: {self.p} vs {other.p}")
