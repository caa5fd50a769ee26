"""Factorization over F_p[t] and irreducible-polynomial generation.

The factoring pipeline is the classic one: squarefree decomposition
(char-p aware), distinct-degree splitting, then randomized equal-degree
(Cantor-Zassenhaus) splitting.  Irreducibility of large-degree candidates
is certified by the distinct-degree criterion gcd(t^{p^k} - t, f); for the
membership-oracle moduli (degrees in the hundreds) a sieved rejection
sampler keeps generation fast while staying uniform over monic
irreducibles.
"""

from __future__ import annotations

import random

import numpy as np

from .poly import Poly
from .fqext import QuotientRing, np_gcd


def squarefree_decomposition(f: Poly) -> list[tuple[Poly, int]]:
    """Monic squarefree parts with multiplicities; product recovers f/lc."""
    f = f.monic()
    out: dict[Poly, int] = {}
    _squarefree_rec(f, 1, out)
    return sorted(out.items(), key=lambda kv: (kv[0].degree, kv[0].c))


def _squarefree_rec(f: Poly, mult: int, out: dict[Poly, int]) -> None:
    if f.is_one():
        return
    df = f.derivative()
    if df.is_zero():
        # f is a p-th power
        root = f.frobenius_root(1)
        assert root is not None
        _squarefree_rec(root.monic(), mult * f.p, out)
        return
    c = f.gcd(df)
    w = f // c
    i = 1
    while not w.is_one():
        y = w.gcd(c)
        z = w // y
        if not z.is_one():
            out[z] = out.get(z, 0) + mult * i
        i += 1
        w = y
        c = c // y
    if not c.is_one():
        root = c.frobenius_root(1)
        assert root is not None
        _squarefree_rec(root.monic(), mult * f.p, out)


def distinct_degree(f: Poly) -> list[tuple[Poly, int]]:
    """Split monic squarefree f into (product of degree-k irreducibles, k)."""
    p = f.p
    out = []
    h = Poly.t(p) % f
    g = f
    k = 0
    while g.degree >= 2 * (k + 1):
        k += 1
        h = h.pow_mod(p, g)
        d = (h - Poly.t(p)).gcd(g)
        if not d.is_one():
            out.append((d, k))
            g = g // d
            h = h % g
    if not g.is_one():
        out.append((g, g.degree))
    return out


def equal_degree_split(f: Poly, k: int, rng: random.Random) -> list[Poly]:
    """Cantor-Zassenhaus: split a product of degree-k irreducibles."""
    p = f.p
    if f.degree == k:
        return [f.monic()]
    while True:
        r = Poly(p, [rng.randrange(p) for _ in range(f.degree)])
        if r.degree < 1:
            continue
        if p == 2:
            # trace map over F_{2^k}
            s = Poly.zero(p)
            u = r % f
            for _ in range(k):
                s = (s + u) % f
                u = (u * u) % f
        else:
            s = r.pow_mod((p**k - 1) // 2, f) - Poly.one(p)
        g = s.gcd(f)
        if not g.is_one() and g.degree < f.degree:
            return equal_degree_split(g, k, rng) + equal_degree_split(
                f // g, k, rng
            )


def factor(f: Poly, seed: int = 0) -> tuple[int, list[tuple[Poly, int]]]:
    """Full factorization: (unit constant, [(monic irreducible, mult)])."""
    if f.is_zero():
        raise ValueError("cannot factor the zero polynomial")
    unit = f.lead
    if f.is_constant():
        return unit, []
    rng = random.Random(seed ^ hash(f.c))
    out: list[tuple[Poly, int]] = []
    for sqf, mult in squarefree_decomposition(f):
        for prod, k in distinct_degree(sqf):
            for irr in equal_degree_split(prod, k, rng):
                out.append((irr, mult))
    out.sort(key=lambda fm: (fm[0].degree, fm[0].c))
    return unit, out


def is_irreducible(f: Poly) -> bool:
    """Distinct-degree criterion: no factor of degree <= deg(f)/2."""
    if f.degree < 1:
        return False
    if f.degree == 1:
        return True
    p = f.p
    d = f.degree
    if d >= _LADDER_THRESHOLD:
        return _is_irreducible_large(f)
    h = Poly.t(p) % f
    for _ in range(d // 2):
        h = h.pow_mod(p, f)
        if not (h - Poly.t(p)).gcd(f).is_one():
            return False
    return True


_LADDER_THRESHOLD = 48


def _is_prime_int(n: int) -> bool:
    if n < 2:
        return False
    k = 2
    while k * k <= n:
        if n % k == 0:
            return False
        k += 1
    return True


def _is_irreducible_large(f: Poly, small_max: int = 0) -> bool:
    """Frobenius-ladder test in F_p[t]/(f) with batched gcd checkpoints.

    Degrees 1..small_max may be skipped by callers that have already ruled
    out factors of those degrees.  If deg f is prime, a composite f must
    have a factor of degree <= d/2, so the ladder stops there; otherwise a
    final t^{p^d} = t check covers factor degrees dividing d.
    """
    p = f.p
    d = f.degree
    ring = QuotientRing(p, f)
    m_arr = ring.m
    t_elem = ring.reduce(np.array([0, 1], dtype=np.int64))
    h = t_elem
    acc = ring.one()
    pending = 0
    prime_d = _is_prime_int(d)
    top = d // 2 if prime_d else d - 1
    checkpoint = small_max + 16
    for k in range(1, top + 1):
        h = ring.frobenius(h)
        if k <= small_max:
            continue
        diff = ring.sub(h, t_elem)
        if ring.is_zero(diff):
            return False  # f | t^{p^k} - t with k < d
        acc = ring.mul(acc, diff)
        pending += 1
        if k >= checkpoint:
            if np_gcd(acc, m_arr, p).size != 1:
                return False
            acc = ring.one()
            pending = 0
            checkpoint = k + max(16, k)  # geometric checkpoint spacing
    if pending and np_gcd(acc, m_arr, p).size != 1:
        return False
    if prime_d:
        return True
    # remaining possibility: factor degrees in (d/2, d) were covered by
    # the loop above (top = d-1); confirm all roots live in F_{p^d}
    for _ in range(top + 1, d + 1):
        h = ring.frobenius(h)
    return ring.equal(h, t_elem)


def _small_irreducibles(p: int, max_count: int = 700) -> list[Poly]:
    """All monic irreducibles of degree e for each e with p^e <= max_count."""
    out = []
    e = 1
    while p**e <= max_count:
        for idx in range(p**e):
            coeffs = []
            v = idx
            for _ in range(e):
                coeffs.append(v % p)
                v //= p
            f = Poly(p, coeffs + [1])
            if is_irreducible(f):
                out.append(f)
        e += 1
    return out


_SIEVE_CACHE: dict[tuple[int, int], tuple[np.ndarray, list[int]]] = {}


def _sieve_matrix(p: int, d: int) -> tuple[np.ndarray, list[int]]:
    """Stacked residue matrices: column blocks are t^k mod q for small
    irreducibles q, so candidate @ M gives all small residues at once."""
    key = (p, d)
    if key in _SIEVE_CACHE:
        return _SIEVE_CACHE[key]
    blocks = []
    sizes = []
    for q in _small_irreducibles(p):
        e = q.degree
        if e >= d:
            continue
        rows = []
        rem = [1] + [0] * (e - 1)
        qv = q.c[:-1]  # q monic: low coefficients
        for _ in range(d + 1):
            rows.append(rem)
            # rem <- t*rem mod q
            top = rem[-1]
            rem = [0] + rem[:-1]
            if top:
                rem = [(x - top * qc) % p for x, qc in zip(rem, qv)]
        blocks.append(np.array(rows, dtype=np.int64))
        sizes.append(e)
    if blocks:
        M = np.concatenate(blocks, axis=1)
    else:
        M = np.zeros((d + 1, 0), dtype=np.int64)
    _SIEVE_CACHE[key] = (M, sizes)
    return M, sizes


def _uniform_coeff_block(rng: random.Random, n: int, p: int) -> np.ndarray:
    """n uniform values in [0, p) from rng, bias-free via 16-bit rejection."""
    limit = (65536 // p) * p
    out = np.empty(n, dtype=np.int64)
    filled = 0
    while filled < n:
        need = n - filled
        raw = np.frombuffer(rng.randbytes(2 * need), dtype="<u2").astype(
            np.int64
        )
        good = raw[raw < limit] % p
        take = min(good.size, need)
        out[filled : filled + take] = good[:take]
        filled += take
    return out


def random_irreducible(p: int, d: int, seed) -> Poly:
    """Uniformly random monic irreducible of degree d.

    Rejection sampling on uniform monic polynomials; every early-out below
    is an exact reducibility certificate (a small-degree factor found by
    residue sieving, or a ladder gcd), so the accepted polynomial is
    uniform over monic irreducibles of degree d.
    """
    if d < 1:
        raise ValueError("degree must be >= 1")
    if p >= 65536:
        raise ValueError("prime too large for the coefficient sampler")
    rng = seed if isinstance(seed, random.Random) else random.Random(seed)
    if d == 1:
        return Poly(p, [rng.randrange(p), 1])
    use_ladder = d >= _LADDER_THRESHOLD
    if not use_ladder:
        while True:
            coeffs = [rng.randrange(p) for _ in range(d)] + [1]
            f = Poly(p, coeffs)
            if f.degree == d and is_irreducible(f):
                return f
    M, sizes = _sieve_matrix(p, d)
    small_max = max(sizes) if sizes else 0
    bounds = np.cumsum([0] + sizes)
    nblocks = len(sizes)
    # small residues via one BLAS matmul per candidate batch; entries stay
    # below 2^53 so float64 arithmetic is exact
    use_float = (d + 1) * p * p < 2**53
    Mf = M.astype(np.float64) if use_float else M
    batch = 32
    while True:
        coeffs = _uniform_coeff_block(rng, batch * d, p).reshape(batch, d)
        cand = np.ones((batch, d + 1), dtype=np.int64)
        cand[:, :d] = coeffs
        if use_float:
            res = (cand.astype(np.float64) @ Mf).astype(np.int64) % p
        else:
            res = cand @ M % p
        for row in range(batch):
            if cand[row, 0] == 0:
                continue  # divisible by t
            ok = True
            for b in range(nblocks):
                if not res[row, bounds[b] : bounds[b + 1]].any():
                    ok = False
                    break
            if not ok:
                continue
            f = Poly(p, cand[row].tolist())
            if _is_irreducible_large(f, small_max=small_max):
                return f
