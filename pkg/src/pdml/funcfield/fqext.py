"""Fast arithmetic in F_p[t]/(m) for large-degree moduli.

Elements are numpy int64 coefficient arrays of length d = deg m (lowest
degree first, reduced mod p).  Multiplication uses Kronecker substitution:
coefficient arrays are packed into machine integers (gmpy2.mpz), multiplied
as integers, and unpacked; reduction mod m uses a precomputed Newton
inverse of the reversed modulus, so one modular multiplication costs three
integer multiplications.  This is what makes degree-700 moduli usable in
the membership oracle.
"""

from __future__ import annotations

import numpy as np
import gmpy2

from .poly import Poly


def _slot_bytes(p: int, d: int) -> int:
    # product coefficients are bounded by d*(p-1)^2; pick a slot width
    # that cannot overflow
    bound = d * (p - 1) * (p - 1)
    return 4 if bound < (1 << 32) else 8


class QuotientRing:
    """The ring F_p[t]/(m) with m monic of degree d >= 1.

    When m is irreducible this is the field F_{p^d}; nothing here assumes
    irreducibility except callers that invert.
    """

    def __init__(self, p: int, modulus):
        if isinstance(modulus, Poly):
            m = np.array(modulus.c, dtype=np.int64)
        else:
            m = np.asarray(modulus, dtype=np.int64) % p
        if m.size < 2 or m[-1] != 1:
            raise ValueError("modulus must be monic of degree >= 1")
        self.p = p
        self.d = int(m.size - 1)
        self.m = m
        self._w = _slot_bytes(p, m.size)
        self._dtype = "<u4" if self._w == 4 else "<u8"
        self._m_packed = self._pack(m)
        # Newton inverse of reverse(m) mod t^d, used for fast reduction
        self._rinv = self._newton_inverse(m[::-1].copy(), self.d)
        self._rinv_packed = self._pack(self._rinv)
        self._frob = None  # lazy Frobenius matrix

    # -- packing -------------------------------------------------------

    def _pack(self, a: np.ndarray):
        if a.size == 0:
            return gmpy2.mpz(0)
        return gmpy2.mpz(
            int.from_bytes(a.astype(self._dtype).tobytes(), "little")
        )

    def _unpack(self, x, n: int) -> np.ndarray:
        w = self._w
        buf = int(x).to_bytes(n * w, "little")
        arr = np.frombuffer(buf, dtype=self._dtype).astype(np.int64)
        return arr % self.p

    def _kmul(self, xa, xb, na: int, nb: int, nout: int) -> np.ndarray:
        """Multiply packed polys of na/nb coefficients; return nout coeffs."""
        prod = xa * xb
        n = na + nb - 1
        arr = self._unpack(prod, max(n, nout))
        return arr[:nout]

    def _newton_inverse(self, f: np.ndarray, n: int) -> np.ndarray:
        """Inverse of f (constant coeff 1) mod t^n by Newton iteration."""
        g = np.array([1], dtype=np.int64)
        k = 1
        while k < n:
            k = min(2 * k, n)
            fk = f[:k]
            fg = self._kmul(self._pack(fk), self._pack(g), k, g.size, k)
            # g <- g*(2 - f*g) mod t^k
            corr = (-fg) % self.p
            corr[0] = (corr[0] + 2) % self.p
            g = self._kmul(self._pack(corr), self._pack(g), k, g.size, k)
        return g

    # -- element constructors -----------------------------------------

    def zero(self) -> np.ndarray:
        return np.zeros(self.d, dtype=np.int64)

    def one(self) -> np.ndarray:
        e = np.zeros(self.d, dtype=np.int64)
        e[0] = 1
        return e

    def from_int(self, a: int) -> np.ndarray:
        e = np.zeros(self.d, dtype=np.int64)
        e[0] = a % self.p
        return e

    def from_poly(self, f: Poly) -> np.ndarray:
        if f.p != self.p:
            raise ValueError("prime mismatch")
        arr = np.array(f.c, dtype=np.int64)
        return self.reduce(arr)

    def to_poly(self, a: np.ndarray) -> Poly:
        return Poly(self.p, [int(x) for x in a])

    def reduce(self, arr: np.ndarray) -> np.ndarray:
        """Reduce an arbitrary-length coefficient array mod m."""
        arr = np.asarray(arr, dtype=np.int64) % self.p
        while arr.size and arr[-1] == 0:
            arr = arr[:-1]
        if arr.size <= self.d:
            out = np.zeros(self.d, dtype=np.int64)
            out[: arr.size] = arr
            return out
        if arr.size <= 2 * self.d - 1:
            return self._reduce_prod(arr)
        # fall back to repeated halving for very long inputs
        q = Poly(self.p, [int(x) for x in arr]) % self.to_poly_modulus()
        return self.from_poly(q)

    def to_poly_modulus(self) -> Poly:
        return Poly(self.p, [int(x) for x in self.m])

    # -- core arithmetic ----------------------------------------------

    def _extend_rinv(self, n: int) -> None:
        """Grow the Newton inverse of reverse(m) to precision n."""
        f = self.m[::-1]
        g = self._rinv
        k = g.size
        while k < n:
            k = min(2 * k, n)
            fk = f[: min(k, f.size)]
            fg = self._kmul(
                self._pack(fk), self._pack(g), fk.size, g.size, k
            )
            corr = (-fg) % self.p
            corr[0] = (corr[0] + 2) % self.p
            g = self._kmul(self._pack(corr), self._pack(g), k, g.size, k)
        self._rinv = g
        self._rinv_packed = self._pack(g)

    def _reduce_prod(self, c: np.ndarray) -> np.ndarray:
        """Barrett reduction of c (any length) via the Newton inverse."""
        d = self.d
        n1 = c.size - d  # number of quotient coefficients
        if n1 <= 0:
            out = np.zeros(d, dtype=np.int64)
            out[: c.size] = c
            return out
        if n1 > self._rinv.size:
            slot_cap = (1 << 32) if self._w == 4 else (1 << 63)
            if n1 * (self.p - 1) ** 2 >= slot_cap:
                # packed convolution would overflow its slots
                q = Poly(self.p, [int(x) for x in c]) % self.to_poly_modulus()
                return self.from_poly(q)
            self._extend_rinv(n1)
        top = c[::-1][:n1]  # reversed leading coefficients
        qrev = self._kmul(
            self._pack(top), self._rinv_packed, n1, self._rinv.size, n1
        )
        q = qrev[::-1].copy()
        qm = self._kmul(self._pack(q), self._m_packed, n1, self.m.size, d)
        out = np.zeros(d, dtype=np.int64)
        out[: min(d, c.size)] = c[: min(d, c.size)]
        return (out - qm) % self.p

    def add(self, a: np.ndarray, b: np.ndarray) -> np.ndarray:
        return (a + b) % self.p

    def sub(self, a: np.ndarray, b: np.ndarray) -> np.ndarray:
        return (a - b) % self.p

    def neg(self, a: np.ndarray) -> np.ndarray:
        return (-a) % self.p

    def mul(self, a: np.ndarray, b: np.ndarray) -> np.ndarray:
        c = self._kmul(
            self._pack(a), self._pack(b), self.d, self.d, 2 * self.d - 1
        )
        return self._reduce_prod(c)

    def square(self, a: np.ndarray) -> np.ndarray:
        xa = self._pack(a)
        c = self._kmul(xa, xa, self.d, self.d, 2 * self.d - 1)
        return self._reduce_prod(c)

    def scale(self, a: np.ndarray, c: int) -> np.ndarray:
        return (a * (c % self.p)) % self.p

    def pow(self, a: np.ndarray, e: int) -> np.ndarray:
        if e < 0:
            return self.pow(self.inv(a), -e)
        if e == 0:
            return self.one()
        result = None
        base = a
        while True:
            if e & 1:
                result = base if result is None else self.mul(result, base)
            e >>= 1
            if not e:
                return result
            base = self.square(base)

    def frobenius_matrix(self) -> np.ndarray:
        """Matrix of the p-th power map.  Entries are the residues mod p,
        stored in float32 when matvec sums fit 24 bits (else float64), so
        BLAS matvecs against it are exact integer arithmetic."""
        if self._frob is None:
            d, p = self.d, self.p
            ftype = (
                np.float32 if d * (p - 1) ** 2 < (1 << 24) else np.float64
            )
            if p >= d:
                cols = np.empty((d, d), dtype=ftype)
                tp = self.pow(self.reduce(np.array([0, 1], np.int64)), p)
                cur = self.one()
                for i in range(d):
                    cols[:, i] = cur
                    if i + 1 < d:
                        cur = self.mul(cur, tp)
                self._frob = cols
                return self._frob
            # t^{d+j} mod m for j = 0..p-1, via the shift recurrence
            # t^{d+j+1} = t * t^{d+j}; no ring multiplications needed
            red = np.empty((p, d), dtype=np.int64)
            cur = (-self.m[:d]) % p  # t^d mod m (m is monic)
            red[0] = cur
            for j in range(1, p):
                top = int(cur[d - 1])
                nxt = np.empty(d, dtype=np.int64)
                nxt[0] = 0
                nxt[1:] = cur[: d - 1]
                if top:
                    nxt = (nxt + top * red[0]) % p
                red[j] = nxt
                cur = nxt
            # column i is t^{p*i} mod m; step: multiply by t^p = shift by
            # p positions, fold the p overflow coefficients through red.
            # Entries grow by a factor <= 1 + p(p-1) per step, so the
            # mod-p reduction can be deferred for several steps without
            # overflowing int64.
            growth = 1 + p * (p - 1)
            defer = 1
            bound = (p - 1) * growth
            while defer < 16 and bound * growth < (1 << 62):
                defer += 1
                bound *= growth
            work = np.empty((d, d), dtype=np.int64)
            work[0, 0] = 1
            work[0, 1:] = 0
            col = work[0]
            nxt = np.empty(d, dtype=np.int64)
            for i in range(1, d):
                nxt[:p] = 0
                nxt[p:] = col[: d - p]
                nxt += col[d - p :] @ red
                if i % defer == 0:
                    np.remainder(nxt, p, out=nxt)
                work[i] = nxt
                col = work[i]
            np.remainder(work, p, out=work)
            self._frob = work.T.astype(ftype)
        return self._frob

    def frobenius(self, a: np.ndarray, k: int = 1) -> np.ndarray:
        """a^(p^k) via the linear Frobenius action (fast for large d)."""
        if self.d * (self.p - 1) ** 2 >= (1 << 52):
            out = a
            for _ in range(k):
                out = self.pow(out, self.p)
            return out
        F = self.frobenius_matrix()
        out = np.asarray(a, dtype=F.dtype)
        for _ in range(k):
            out = F @ out
            np.remainder(out, self.p, out=out)
        return out.astype(np.int64)

    def frobenius_spread(self, a: np.ndarray) -> np.ndarray:
        """a^p computed as a(t^p): spread coefficients to stride p, then
        one Barrett reduction.  Unlike frobenius() this needs no matrix,
        so it is the cheap choice for a few powers in a throwaway ring."""
        p, d = self.p, self.d
        n = (d - 1) * p + 1
        if n <= d:
            return a.copy()
        c = np.zeros(n, dtype=np.int64)
        c[::p] = a
        return self._reduce_prod(c)

    def pow_fast(self, a: np.ndarray, e: int) -> np.ndarray:
        """Power using Frobenius decomposition e = p^k * r; the matrix
        pays off when many powers are taken in the same ring."""
        if e <= 0 or self.d < 64:
            return self.pow(a, e)
        k = 0
        while e % self.p == 0:
            e //= self.p
            k += 1
        if k == 0:
            return self.pow(a, e)
        return self.pow(self.frobenius(a, k), e)

    def is_zero(self, a: np.ndarray) -> bool:
        return not a.any()

    def equal(self, a: np.ndarray, b: np.ndarray) -> bool:
        return bool(((a - b) % self.p == 0).all())

    def inv(self, a: np.ndarray) -> np.ndarray:
        """Inverse via extended Euclid (requires gcd(a, m) = 1)."""
        g, u = _np_half_xgcd(self.m, a.copy(), self.p)
        if g.size != 1:
            raise ZeroDivisionError("element not invertible in quotient ring")
        ginv = pow(int(g[0]), self.p - 2, self.p)
        out = np.zeros(self.d, dtype=np.int64)
        u = (u * ginv) % self.p
        out[: u.size] = u
        return out


# -- numpy polynomial helpers (used by the irreducibility sieve too) ----


def _np_trim(a: np.ndarray) -> np.ndarray:
    n = a.size
    while n > 0 and a[n - 1] == 0:
        n -= 1
    return a[:n]


def _np_divmod(a: np.ndarray, b: np.ndarray, p: int):
    """Quotient/remainder of coefficient arrays over F_p."""
    a = _np_trim(a % p).astype(np.int64)
    b = _np_trim(b % p).astype(np.int64)
    if b.size == 0:
        raise ZeroDivisionError
    db = b.size - 1
    if a.size - 1 < db:
        return np.zeros(0, dtype=np.int64), a
    inv_lead = pow(int(b[-1]), p - 2, p)
    r = a.copy()
    q = np.zeros(a.size - db, dtype=np.int64)
    for i in range(a.size - 1, db - 1, -1):
        coef = r[i] % p
        if coef:
            coef = (coef * inv_lead) % p
            q[i - db] = coef
            r[i - db : i + 1] = (r[i - db : i + 1] - coef * b) % p
    return q, _np_trim(r)


def np_gcd(a: np.ndarray, b: np.ndarray, p: int) -> np.ndarray:
    """Monic gcd of coefficient arrays over F_p.

    In-place Euclidean elimination tuned for the irreducibility sieve,
    where this runs on degree-600+ operands many times per generated
    modulus.
    """
    inv = [0] + [pow(i, p - 2, p) for i in range(1, p)] if p <= 256 else None
    a = np.asarray(a, dtype=np.int64) % p
    b = np.asarray(b, dtype=np.int64) % p
    da, db = _deg(a), _deg(b)
    if da < db:
        a, b, da, db = b, a, db, da
    while db >= 0:
        # reduce a by b in place
        lead_inv = inv[b[db]] if inv else pow(int(b[db]), p - 2, p)
        bv = b[: db + 1]
        while da >= db:
            coef = a[da]
            if coef:
                coef = (coef * lead_inv) % p
                sl = a[da - db : da + 1]
                sl -= coef * bv
                sl %= p
            da -= 1
        while da >= 0 and not a[da]:
            da -= 1
        a, b, da, db = b, a, db, da
    if da < 0:
        return np.zeros(0, dtype=np.int64)
    out = a[: da + 1].copy()
    out = (out * (inv[out[da]] if inv else pow(int(out[da]), p - 2, p))) % p
    return out


def _deg(a: np.ndarray) -> int:
    n = a.size - 1
    while n >= 0 and not a[n]:
        n -= 1
    return n


def _np_half_xgcd(m: np.ndarray, a: np.ndarray, p: int):
    """Return (g, u) with u*a = g mod m, g = gcd(a, m)."""
    r0, r1 = _np_trim(m % p), _np_trim(a % p)
    u0 = np.zeros(0, dtype=np.int64)
    u1 = np.array([1], dtype=np.int64)
    while r1.size:
        q, r = _np_divmod(r0, r1, p)
        r0, r1 = r1, r
        if q.size:
            qu = np.convolve(q, u1) % p if u1.size else np.zeros(0, np.int64)
        else:
            qu = np.zeros(0, dtype=np.int64)
        n = max(u0.size, qu.size)
        new = np.zeros(n, dtype=np.int64)
        new[: u0.size] += u0
        new[: qu.size] -= qu
        u0, u1 = u1, _np_trim(new % p)
    return r0, u0
