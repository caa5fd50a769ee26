"""Shifted-monomial endomorphisms of G_m^n and their orbit machinery.

A map coordinate is a translation (an S-unit coordinate) times a product
of factors (x_j + beta)^m; beta = 0 gives pure monomial factors, and the
all-monomial case is the affine form x -> c (.) x^A.  Orbits stay in
S-unit form via Frobenius descent, so iteration never expands
polynomials.  Return-set scans re-run the map inside random finite-field
quotients, which costs a handful of modular multiplications per step
instead of exponent-sized work.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field

from .funcfield import Poly, RatFunc, QuotientRing
from . import sunit
from .sunit import (
    GeneratorBasis,
    SUnitPoint,
    LaurentEquation,
    NotMember,
    ProbablyMember,
    BadParameters,
    add_constant,
    coordinate_heights,
    eval_equation,
    eval_mod,
    oracle_error_bound_log2,
    sample_modulus,
)

SCHEMA_VERSION = 1


@dataclass(frozen=True)
class Factor:
    """(x_source + shift)^exponent; shift zero means a pure power."""

    source: int
    shift: RatFunc
    exponent: int


class ShiftedMonomialMap:
    __slots__ = ("n", "basis", "trans_units", "trans_exps", "factors")

    def __init__(self, n, basis, trans_units, trans_exps, factors):
        self.n = n
        self.basis = basis
        self.trans_units = tuple(int(u) % basis.p for u in trans_units)
        self.trans_exps = tuple(
            tuple(int(e) for e in row) for row in trans_exps
        )
        self.factors = tuple(tuple(fs) for fs in factors)
        if len(self.trans_units) != n or len(self.factors) != n:
            raise ValueError("coordinate count mismatch")
        for fs in self.factors:
            for f in fs:
                if not 0 <= f.source < n:
                    raise ValueError("factor source out of range")
        if self.is_monomial_affine():
            A = self.exponent_matrix()
            if _det_int(A) == 0:
                raise ValueError(
                    "monomial-affine map must have det A != 0"
                )

    @property
    def p(self) -> int:
        return self.basis.p

    def is_monomial_affine(self) -> bool:
        return all(
            f.shift.is_zero() for fs in self.factors for f in fs
        )

    def exponent_matrix(self) -> list[list[int]]:
        A = [[0] * self.n for _ in range(self.n)]
        for i, fs in enumerate(self.factors):
            for f in fs:
                A[i][f.source] += f.exponent
        return A

    def is_isotrivial(self) -> bool:
        """Map data defined over F_p: constant translations and shifts."""
        return all(
            all(e == 0 for e in row) for row in self.trans_exps
        ) and all(
            f.shift.is_constant() or f.shift.is_zero()
            for fs in self.factors
            for f in fs
        )

    # -- constructors --------------------------------------------------

    @classmethod
    def monomial_affine(cls, basis, A, trans_units, trans_exps):
        n = len(A)
        zero = RatFunc.zero(basis.p)
        factors = [
            [
                Factor(j, zero, A[i][j])
                for j in range(n)
                if A[i][j]
            ]
            for i in range(n)
        ]
        return cls(n, basis, trans_units, trans_exps, factors)

    @classmethod
    def identity(cls, basis, n):
        return cls.monomial_affine(
            basis,
            [[1 if i == j else 0 for j in range(n)] for i in range(n)],
            [1] * n,
            [[0] * len(basis)] * n,
        )

    # -- semantics -----------------------------------------------------

    def apply(self, point: SUnitPoint) -> SUnitPoint:
        """f(point) exactly; shifted factors route through Frobenius
        descent and may extend the working basis."""
        if point.dimension != self.n:
            raise ValueError("dimension mismatch")
        basis = point.basis
        if not basis.extends(self.basis) and basis != self.basis:
            raise ValueError("point basis does not extend map basis")
        p = self.p
        out_units = []
        out_exps = []
        for i in range(self.n):
            u = self.trans_units[i]
            acc = list(self.trans_exps[i]) + [0] * (
                len(basis) - len(self.basis)
            )
            for f in self.factors[i]:
                if f.shift.is_zero():
                    fu, fe = point.coordinate_power(f.source, f.exponent)
                else:
                    temp = SUnitPoint(
                        basis,
                        [point.units[f.source]],
                        [point.exps[f.source]],
                    )
                    shifted = add_constant(temp, 0, f.shift)
                    if shifted.basis != basis:
                        # basis grew: pad everything accumulated so far
                        pad = len(shifted.basis) - len(basis)
                        basis = shifted.basis
                        point = point.embed(basis)
                        acc = acc + [0] * pad
                        out_exps = [row + [0] * pad for row in out_exps]
                    fu, fe = shifted.coordinate_power(0, f.exponent)
                u = (u * fu) % p
                acc = [a + b for a, b in zip(acc, fe)]
            out_units.append(u)
            out_exps.append(acc)
        return SUnitPoint(basis, out_units, out_exps)

    def iterate(
        self, point: SUnitPoint, n: int, mode: str = "auto"
    ) -> SUnitPoint:
        """f^n(point); closed form (block-matrix powering) for
        monomial-affine maps, stepwise otherwise."""
        if n < 0:
            raise ValueError("iteration count must be >= 0")
        if mode == "closed" and not self.is_monomial_affine():
            raise ValueError("closed form requires a monomial-affine map")
        use_closed = mode == "closed" or (
            mode == "auto" and self.is_monomial_affine()
        )
        if not use_closed:
            for _ in range(n):
                point = self.apply(point)
            return point
        if point.basis != self.basis and not point.basis.extends(
            self.basis
        ):
            raise ValueError("point basis does not extend map basis")
        if n == 0:
            return point
        A = self.exponent_matrix()
        An, S = _affine_power(A, n)  # A^n and I + A + ... + A^{n-1}
        r = len(point.basis)
        pad = r - len(self.basis)
        t_exps = [list(row) + [0] * pad for row in self.trans_exps]
        new_exps = []
        for i in range(self.n):
            row = [0] * r
            for j in range(self.n):
                aij, sij = An[i][j], S[i][j]
                if aij:
                    for k in range(r):
                        row[k] += aij * point.exps[j][k]
                if sij:
                    for k in range(r):
                        row[k] += sij * t_exps[j][k]
            new_exps.append(row)
        # units evolve by the same affine recursion on discrete logs
        p = self.p
        new_units = _unit_evolution(
            p, An, S, point.units, self.trans_units
        )
        return SUnitPoint(point.basis, new_units, new_exps)

    # -- constructions on maps ----------------------------------------

    def frobenius_twist(self, q: int) -> "ShiftedMonomialMap":
        """Frob_q o f: every coordinate raised to the q-th power."""
        p = self.p
        e = 0
        qq = q
        while qq % p == 0:
            qq //= p
            e += 1
        if qq != 1 or e < 1:
            raise ValueError("q must be a positive power of p")
        factors = [
            [Factor(f.source, f.shift, f.exponent * q) for f in fs]
            for fs in self.factors
        ]
        units = [pow(u, q, p) for u in self.trans_units]
        exps = [[q * x for x in row] for row in self.trans_exps]
        return ShiftedMonomialMap(self.n, self.basis, units, exps, factors)

    def split_product(
        self, other: "ShiftedMonomialMap"
    ) -> "ShiftedMonomialMap":
        """Block-diagonal product map on G_m^{n1+n2} over a merged basis."""
        if self.p != other.p:
            raise ValueError("prime mismatch")
        merged = self.basis.extended(list(other.basis.generators))
        remap = [
            merged.index_of(g) for g in other.basis.generators
        ]
        n1, n2 = self.n, other.n
        r = len(merged)

        def lift_self(row):
            return list(row) + [0] * (r - len(self.basis))

        def lift_other(row):
            out = [0] * r
            for k, e in enumerate(row):
                out[remap[k]] += e
            return out

        units = list(self.trans_units) + list(other.trans_units)
        exps = [lift_self(row) for row in self.trans_exps] + [
            lift_other(row) for row in other.trans_exps
        ]
        factors = [list(fs) for fs in self.factors] + [
            [Factor(f.source + n1, f.shift, f.exponent) for f in fs]
            for fs in other.factors
        ]
        return ShiftedMonomialMap(n1 + n2, merged, units, exps, factors)

    def merge_point(
        self, a: SUnitPoint, b: SUnitPoint
    ) -> SUnitPoint:
        """Pair points of the two factor systems into the product system
        (self must be a split_product result whose basis extends both)."""
        basis = self.basis
        ea = a.embed(basis) if a.basis != basis else a
        # b's basis may map into merged positions non-prefix; rebuild
        remap = [basis.index_of(g) for g in b.basis.generators]
        if any(i is None for i in remap):
            raise ValueError("incompatible bases")
        rows = []
        for row in b.exps:
            out = [0] * len(basis)
            for k, e in enumerate(row):
                out[remap[k]] += e
            rows.append(out)
        return SUnitPoint(
            basis,
            list(ea.units) + list(b.units),
            [list(r) for r in ea.exps] + rows,
        )

    # -- serialization -------------------------------------------------

    def to_json_dict(self) -> dict:
        return {
            "n": self.n,
            "translationUnits": list(self.trans_units),
            "translationExponents": [
                [str(e) for e in row] for row in self.trans_exps
            ],
            "factors": [
                [
                    {
                        "source": f.source,
                        "shift": str(f.shift),
                        "exponent": str(f.exponent),
                    }
                    for f in fs
                ]
                for fs in self.factors
            ],
        }

    @classmethod
    def from_json_dict(cls, basis: GeneratorBasis, doc) -> "ShiftedMonomialMap":
        p = basis.p
        factors = [
            [
                Factor(
                    f["source"],
                    RatFunc.parse(p, f["shift"]),
                    int(f["exponent"]),
                )
                for f in fs
            ]
            for fs in doc["factors"]
        ]
        return cls(
            doc["n"],
            basis,
            doc["translationUnits"],
            [[int(e) for e in row] for row in doc["translationExponents"]],
            factors,
        )

    def __eq__(self, other):
        return (
            isinstance(other, ShiftedMonomialMap)
            and self.basis == other.basis
            and self.trans_units == other.trans_units
            and self.trans_exps == other.trans_exps
            and self.factors == other.factors
        )


def _det_int(A: list[list[int]]) -> int:
    """Integer determinant by fraction-free Gaussian elimination."""
    from fractions import Fraction

    n = len(A)
    M = [[Fraction(x) for x in row] for row in A]
    det = Fraction(1)
    for col in range(n):
        piv = next(
            (r for r in range(col, n) if M[r][col]), None
        )
        if piv is None:
            return 0
        if piv != col:
            M[col], M[piv] = M[piv], M[col]
            det = -det
        det *= M[col][col]
        inv = 1 / M[col][col]
        for r in range(col + 1, n):
            factor = M[r][col] * inv
            if factor:
                M[r] = [
                    a - factor * b for a, b in zip(M[r], M[col])
                ]
    assert det.denominator == 1
    return int(det)


def _mat_mul(A, B):
    n = len(A)
    m = len(B[0])
    k = len(B)
    return [
        [sum(A[i][t] * B[t][j] for t in range(k)) for j in range(m)]
        for i in range(n)
    ]


def _affine_power(A: list[list[int]], n: int):
    """(A^n, I + A + ... + A^{n-1}) by powering [[A, I], [0, I]]."""
    size = len(A)
    big = [
        [A[i][j] if j < size else (1 if j - size == i else 0)
         for j in range(2 * size)]
        for i in range(size)
    ] + [
        [0] * size + [1 if j == i else 0 for j in range(size)]
        for i in range(size)
    ]
    result = [
        [1 if i == j else 0 for j in range(2 * size)]
        for i in range(2 * size)
    ]
    base = big
    e = n
    while e:
        if e & 1:
            result = _mat_mul(result, base)
        base = _mat_mul(base, base)
        e >>= 1
    An = [row[:size] for row in result[:size]]
    S = [row[size:] for row in result[:size]]
    return An, S


def _unit_evolution(p, An, S, units, trans_units):
    """Push units through the affine exponent action via discrete logs."""
    if p == 2:
        return [1] * len(units)
    # p is small; brute-force logs against a primitive root
    g = _primitive_root(p)
    log = {}
    acc = 1
    for k in range(p - 1):
        log[acc] = k
        acc = (acc * g) % p
    lu = [log[u] for u in units]
    lc = [log[u] for u in trans_units]
    out = []
    size = len(An)
    for i in range(size):
        v = sum(An[i][j] * lu[j] + S[i][j] * lc[j] for j in range(size))
        out.append(pow(g, v % (p - 1), p))
    return out


def _primitive_root(p: int) -> int:
    order = p - 1
    fac = []
    m = order
    d = 2
    while d * d <= m:
        if m % d == 0:
            fac.append(d)
            while m % d == 0:
                m //= d
        d += 1
    if m > 1:
        fac.append(m)
    for g in range(2, p):
        if all(pow(g, order // q, p) != 1 for q in fac):
            return g
    raise ValueError("no primitive root found")


# -- orbit records and return sets -------------------------------------


@dataclass(frozen=True)
class OrbitRecord:
    index: int
    point: SUnitPoint
    heights: tuple  # per-coordinate exact heights


@dataclass(frozen=True)
class OracleParams:
    degree: int
    trials: int = 2
    seed: int = 0


@dataclass(frozen=True)
class Preperiodic:
    tail: int
    period: int


@dataclass(frozen=True)
class NoRepeatWithin:
    bound: int


@dataclass
class ReturnSetEntry:
    n: int
    verdict: str  # Member-ish tag: "ProbablyMember" | "NotMember" | "Unknown"
    certainty: str  # "Certain" | "Probabilistic" | "Unknown"
    error_bound_log2: float | None = None
    witness: dict | None = None

    def to_json_dict(self):
        out = {
            "n": self.n,
            "verdict": self.verdict,
            "certainty": self.certainty,
        }
        if self.error_bound_log2 is not None:
            out["errorBoundLog2"] = self.error_bound_log2
        if self.witness is not None:
            out["witness"] = self.witness
        return out


@dataclass
class ReturnSetReport:
    window: int
    entries: list
    oracle: OracleParams
    moduli: list
    basis: GeneratorBasis

    def members(self) -> list[int]:
        return [
            e.n
            for e in self.entries
            if e.verdict == "ProbablyMember"
        ]

    def to_json_dict(self):
        return {
            "schemaVersion": SCHEMA_VERSION,
            "window": self.window,
            "oracle": {
                "degree": self.oracle.degree,
                "trials": self.oracle.trials,
                "seed": self.oracle.seed,
            },
            "moduli": [str(m) for m in self.moduli],
            "generators": [str(g) for g in self.basis.generators],
            "entries": [e.to_json_dict() for e in self.entries],
        }


def compute_orbit(
    map_: ShiftedMonomialMap, start: SUnitPoint, N: int
) -> list[OrbitRecord]:
    """Exact S-unit orbit records for n = 0..N (sequential)."""
    records = []
    pt = start
    for n in range(N + 1):
        records.append(
            OrbitRecord(n, pt, tuple(coordinate_heights(pt)))
        )
        if n < N:
            pt = map_.apply(pt)
    return records


def _reduced_map_step(ring, map_, coords, trans_res, shift_res):
    """One application of the map inside F_p[t]/(m).

    Powered factors are cached per step (the same x_j^e often feeds
    several coordinates) and p-power exponents ride the linear Frobenius
    action, so one step costs a few modular multiplications."""
    out = []
    cache = {}
    for i in range(map_.n):
        acc = trans_res[i]
        for f in map_.factors[i]:
            skey = None if f.shift.is_zero() else str(f.shift)
            key = (f.source, skey, f.exponent)
            val = cache.get(key)
            if val is None:
                base = coords[f.source]
                if skey is not None:
                    base = ring.add(base, shift_res[skey])
                val = ring.pow_fast(base, f.exponent)
                cache[key] = val
            acc = ring.mul(acc, val)
        out.append(acc)
    return out


def _compile_equation(ring, eq: LaurentEquation):
    """Pre-reduce coefficients; constants stay scalars."""
    compiled = []
    for coeff, mono in eq.terms:
        if coeff.is_constant():
            compiled.append((int(coeff.num.c[0]), mono))
        else:
            num = ring.from_poly(coeff.num)
            den = ring.from_poly(coeff.den)
            if ring.is_zero(den):
                raise sunit.BadModulus(
                    "modulus divides a coefficient denominator"
                )
            res = num if coeff.is_poly() else ring.mul(num, ring.inv(den))
            compiled.append((res, mono))
    return compiled


def _eval_compiled(ring, compiled, coords):
    total = ring.zero()
    cache = {}
    for coeff, mono in compiled:
        term = None
        for i, k in enumerate(mono):
            if k == 0:
                continue
            key = (i, k)
            val = cache.get(key)
            if val is None:
                val = ring.pow_fast(coords[i], k)
                cache[key] = val
            term = val if term is None else ring.mul(term, val)
        if term is None:
            term = ring.one()
        if isinstance(coeff, int):
            term = ring.scale(term, coeff)
        else:
            term = ring.mul(term, coeff)
        total = ring.add(total, term)
    return total


def return_set(
    map_: ShiftedMonomialMap,
    start: SUnitPoint,
    equations: list[LaurentEquation],
    N: int,
    oracle: OracleParams,
    orbit: list[OrbitRecord] | None = None,
) -> ReturnSetReport:
    """Membership verdict of f^n(start) against the equations for every
    n in [0, N].

    The scan replays the reduced map inside each trial quotient field
    (reduction commutes with the map away from the basis bad places), so
    verdicts agree with membership_test on the stored orbit points while
    costing only a few modular multiplications per step.
    """
    if orbit is None:
        orbit = compute_orbit(map_, start, N)
    basis = orbit[-1].point.basis  # final (largest) basis
    p = map_.p
    d, trials, seed = oracle.degree, oracle.trials, oracle.seed
    if d < 1 or trials < 1:
        raise BadParameters("oracle needs degree >= 1 and trials >= 1")
    # per-index degree bounds
    dbounds = [
        max(
            (eq.degree_bound(list(rec.heights)) for eq in equations),
            default=1,
        )
        for rec in orbit
    ]
    log_pd = d * _log2(p) - _log2(d)
    rng = random.Random(seed)
    moduli = []
    zero_flags = [[] for _ in range(N + 1)]  # per n: list of per-trial zero?
    witness = [None] * (N + 1)
    for trial in range(trials):
        trial_rng = random.Random(rng.getrandbits(64))
        m = sample_modulus(basis, d, trial_rng)
        moduli.append(m)
        ring = QuotientRing(p, m)
        trans_res = [
            _reduce_sunit_coord(
                ring, basis, map_.trans_units[i],
                list(map_.trans_exps[i])
                + [0] * (len(basis) - len(map_.basis)),
            )
            for i in range(map_.n)
        ]
        shift_res = {}
        for fs in map_.factors:
            for f in fs:
                if not f.shift.is_zero():
                    key = str(f.shift)
                    if key in shift_res:
                        continue
                    num = ring.from_poly(f.shift.num)
                    den = ring.from_poly(f.shift.den)
                    val = (
                        num
                        if f.shift.is_poly()
                        else ring.mul(num, ring.inv(den))
                    )
                    shift_res[key] = val
        compiled = [_compile_equation(ring, eq) for eq in equations]
        coords = eval_mod(start.embed(basis), ring)
        for n in range(N + 1):
            all_zero = True
            for ei, ceq in enumerate(compiled):
                if not ring.is_zero(_eval_compiled(ring, ceq, coords)):
                    all_zero = False
                    if witness[n] is None:
                        witness[n] = {
                            "equation": ei,
                            "trial": trial,
                            "modulus": str(m),
                        }
                    break
            zero_flags[n].append(all_zero)
            if n < N:
                coords = _reduced_map_step(
                    ring, map_, coords, trans_res, shift_res
                )
    entries = []
    for n in range(N + 1):
        if not all(zero_flags[n]):
            entries.append(
                ReturnSetEntry(n, "NotMember", "Certain", None, witness[n])
            )
        else:
            bound_ok = _log2(max(dbounds[n], 1)) < log_pd
            if bound_ok:
                entries.append(
                    ReturnSetEntry(
                        n,
                        "ProbablyMember",
                        "Probabilistic",
                        oracle_error_bound_log2(p, d, trials, dbounds[n]),
                    )
                )
            else:
                entries.append(
                    ReturnSetEntry(
                        n,
                        "Unknown",
                        "Unknown",
                        None,
                        {"reason": "degree bound exceeds oracle range"},
                    )
                )
    return ReturnSetReport(N, entries, oracle, moduli, basis)


def _reduce_sunit_coord(ring, basis, unit, exps):
    pt = SUnitPoint(basis, [unit], [exps])
    return eval_mod(pt, ring)[0]


def _log2(x: int) -> float:
    import math

    if x <= 0:
        return 0.0
    bl = x.bit_length()
    if bl <= 500:
        return math.log2(x)
    return (bl - 60) + math.log2(x >> (bl - 60))


def preperiodicity_check(
    map_: ShiftedMonomialMap, point: SUnitPoint, bound: int
):
    """Detect exact repetition of representations within bound steps."""
    seen = {}
    pt = point
    for n in range(bound + 1):
        key = (pt.units, pt.exps, len(pt.basis))
        if key in seen:
            tail = seen[key]
            return Preperiodic(tail, n - tail)
        seen[key] = n
        pt = map_.apply(pt)
    return NoRepeatWithin(bound)
