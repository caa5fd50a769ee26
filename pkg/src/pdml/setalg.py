"""Symbolic set algebra for return-set classification.

Three shapes of subsets of N (or Z) appear in the experiments:

* arithmetic progressions {m*k + l : k in N},
* exponential-sum sets S_{q,d,r}(c0; c_ij) = {c0 + sum_{i<=d, j<=r}
  c_ij * q^(2^j * n_i) : n_1..n_d in N} with exact rational coefficients,
* finite adjustments (elements added or removed).

A SetDescriptor bundles finitely many of each.  Membership in an
exponential-sum set is decided by depth-first search over the exponent
vector; the search is *complete* (NotMember is a proof) exactly when the
dominant coefficients share a sign, which makes every partial sum
monotone enough to bound the exponents.  Mixed-sign instances get an
honest Unknown carrying the search cap, since nothing here (or in the
literature this follows) settles their decidability.
"""

from __future__ import annotations

import itertools
import json
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Optional, Union


class BadDescriptor(ValueError):
    """Raised when a descriptor violates its declared-type invariants."""


# -- verdicts ----------------------------------------------------------


@dataclass(frozen=True)
class Member:
    """n is in the set; witness maps each ExpSumSet variable index to its
    exponent (None for AP / finite-adjust memberships)."""

    witness: Optional[tuple[int, ...]] = None
    source: str = ""
    certainty: str = "Certain"


@dataclass(frozen=True)
class NotMember:
    certainty: str = "Certain"


@dataclass(frozen=True)
class Unknown:
    """Search was capped; neither membership nor its negation is proved."""

    search_bound: int = 0
    certainty: str = "Unknown"


Verdict = Union[Member, NotMember, Unknown]


# -- arithmetic progressions ------------------------------------------


@dataclass(frozen=True)
class ArithProgression:
    """{m*k + l : k in N}; m = 0 encodes the singleton {l}."""

    m: int
    l: int
    ambient: str = "N"

    def __post_init__(self):
        if self.m < 0:
            raise BadDescriptor("step must be >= 0")
        if self.ambient not in ("N", "Z"):
            raise BadDescriptor("ambient must be 'N' or 'Z'")
        if self.ambient == "N" and self.l < 0:
            raise BadDescriptor("offset must be >= 0 in ambient N")

    def contains(self, n: int) -> bool:
        if self.m == 0:
            return n == self.l
        return n >= self.l and (n - self.l) % self.m == 0

    def window(self, N: int) -> list[int]:
        if self.m == 0:
            return [self.l] if 0 <= self.l <= N else []
        return list(range(max(self.l, 0), N + 1, self.m)) if self.l <= N else []

    def to_json_dict(self) -> dict:
        d = {"m": self.m, "l": self.l}
        if self.ambient != "N":
            d["ambient"] = self.ambient
        return d

    @staticmethod
    def from_json_dict(d: dict) -> "ArithProgression":
        return ArithProgression(d["m"], d["l"], d.get("ambient", "N"))


def intersect_progressions(
    a: ArithProgression, b: ArithProgression
) -> Optional[ArithProgression]:
    """AP intersection over the shared ambient: empty (None) or one AP."""
    ambient = "Z" if "Z" in (a.ambient, b.ambient) else "N"
    if a.m == 0:
        return a if b.contains(a.l) else None
    if b.m == 0:
        return b if a.contains(b.l) else None
    import math

    g = math.gcd(a.m, b.m)
    if (b.l - a.l) % g != 0:
        return None
    lcm = a.m // g * b.m
    # one solution of x = a.l mod a.m, x = b.l mod b.m
    t = ((b.l - a.l) // g * pow(a.m // g, -1, b.m // g)) % (b.m // g)
    x0 = a.l + a.m * t
    lo = max(a.l, b.l)
    if x0 < lo:
        x0 += ((lo - x0 + lcm - 1) // lcm) * lcm
    return ArithProgression(lcm, x0, ambient)


# -- exponential-sum sets ---------------------------------------------


def _radical(q: int) -> int:
    """The prime p with q = p^e, or raise."""
    if q < 2:
        raise BadDescriptor("q must be >= 2")
    n = q
    p = None
    for c in range(2, q + 1):
        if c * c > n:
            if n > 1:
                p = n if p is None else p
                if n != p:
                    raise BadDescriptor("q must be a prime power")
            break
        if n % c == 0:
            p = c
            while n % c == 0:
                n //= c
            if n != 1:
                raise BadDescriptor("q must be a prime power")
            break
    if p is None:
        p = q
    return p


@dataclass(frozen=True)
class ExpSumSet:
    """S_{q,d,r}(c0; c_ij): values c0 + sum c_ij q^(2^j n_i), n_i in N.

    Coefficients are exact Fractions; cij is a d-tuple of (r+1)-tuples.
    """

    q: int
    d: int
    r: int
    c0: Fraction
    cij: tuple[tuple[Fraction, ...], ...]

    def __post_init__(self):
        _radical(self.q)  # validates prime power
        if self.d < 1 or self.r < 0:
            raise BadDescriptor("need d >= 1 and r >= 0")
        if len(self.cij) != self.d or any(
            len(row) != self.r + 1 for row in self.cij
        ):
            raise BadDescriptor("coefficient table must be d x (r+1)")
        object.__setattr__(self, "c0", Fraction(self.c0))
        object.__setattr__(
            self,
            "cij",
            tuple(tuple(Fraction(c) for c in row) for row in self.cij),
        )

    @property
    def p(self) -> int:
        return _radical(self.q)

    @staticmethod
    def build(q: int, c0, rows: Iterable[Iterable]) -> "ExpSumSet":
        rows = tuple(tuple(Fraction(c) for c in row) for row in rows)
        if not rows:
            raise BadDescriptor("need at least one variable")
        r = len(rows[0]) - 1
        return ExpSumSet(q, len(rows), r, Fraction(c0), rows)

    # -- structure ----------------------------------------------------

    def effective_r(self, i: int) -> int:
        """Largest j with c_ij != 0 (-1 if the variable is unused)."""
        row = self.cij[i]
        for j in range(len(row) - 1, -1, -1):
            if row[j] != 0:
                return j
        return -1

    def dominant_sign(self) -> int:
        """+1/-1 if every used variable's outermost coefficient shares
        that sign (complete search possible), else 0."""
        sign = 0
        for i in range(self.d):
            j = self.effective_r(i)
            if j < 0:
                continue
            s = 1 if self.cij[i][j] > 0 else -1
            if sign == 0:
                sign = s
            elif sign != s:
                return 0
        return sign if sign else 1

    def is_complete_searchable(self) -> bool:
        return self.dominant_sign() != 0

    def variable_value(self, i: int, n: int) -> Fraction:
        q = self.q
        return sum(
            (c * q ** ((1 << j) * n) for j, c in enumerate(self.cij[i]) if c),
            Fraction(0),
        )

    def _value_lower_bound(self, i: int, n: int):
        """(lower, final): `lower` bounds variable i's value at n from
        below; once `final` is true the bound is increasing in n, so
        lower > B proves the value exceeds B for every n' >= n.

        Needs a positive outermost coefficient.  The inner terms are
        bounded by cinner * q^(2^(jmax-1) n); the bound turns increasing
        as soon as the dominant term outruns that.
        """
        jmax = self.effective_r(i)
        cdom = self.cij[i][jmax]
        if jmax == 0:
            return cdom * self.q**n, True
        cinner = sum(abs(c) for c in self.cij[i][:jmax])
        half = 1 << (jmax - 1)
        paren = cdom * self.q ** (((1 << jmax) - half) * n) - cinner
        return self.q ** (half * n) * paren, paren > 0

    def _variable_floor(self, i: int) -> tuple[Fraction, int]:
        """(min over n of variable i's value, n achieving it)."""
        jmax = self.effective_r(i)
        if jmax < 0:
            return Fraction(0), 0
        assert self.cij[i][jmax] > 0
        best, best_n = self.variable_value(i, 0), 0
        n = 1
        while True:
            v = self.variable_value(i, n)
            if v < best:
                best, best_n = v, n
            lower, final = self._value_lower_bound(i, n)
            if final and lower > best:
                return best, best_n
            n += 1

    # -- membership ---------------------------------------------------

    def contains(self, n, cap: int = 40) -> Verdict:
        target = Fraction(n) - self.c0
        sign = self.dominant_sign()
        used = [i for i in range(self.d) if self.effective_r(i) >= 0]
        if not used:
            return Member(witness=(0,) * self.d) if target == 0 else NotMember()
        if sign == 0:
            found = self._dfs_capped(target, used, cap)
            if found is not None:
                return Member(witness=found)
            return Unknown(search_bound=cap)
        if sign < 0:
            flip = ExpSumSet(
                self.q,
                self.d,
                self.r,
                Fraction(0),
                tuple(tuple(-c for c in row) for row in self.cij),
            )
            return flip._contains_positive(-target)
        return self._contains_positive(target)

    def _contains_positive(self, target: Fraction) -> Verdict:
        used = [i for i in range(self.d) if self.effective_r(i) >= 0]
        floors = {i: self._variable_floor(i)[0] for i in used}
        witness = [0] * self.d
        if self._dfs_complete(target, used, floors, witness):
            return Member(witness=tuple(witness))
        return NotMember()

    def _dfs_complete(self, target, used, floors, witness) -> bool:
        if not used:
            return target == 0
        i, rest = used[0], used[1:]
        bound = target - sum(floors[k] for k in rest)
        n = 0
        while True:
            v = self.variable_value(i, n)
            if v <= bound:
                witness[i] = n
                if self._dfs_complete(target - v, rest, floors, witness):
                    return True
            # stop once the value provably stays above the bound
            lower, final = self._value_lower_bound(i, n)
            if final and lower > bound:
                return False
            n += 1

    def _dfs_capped(self, target, used, cap) -> Optional[tuple[int, ...]]:
        witness = [0] * self.d
        def rec(target, idx):
            if idx == len(used):
                return target == 0
            i = used[idx]
            for n in range(cap + 1):
                witness[i] = n
                if rec(target - self.variable_value(i, n), idx + 1):
                    return True
            return False
        return tuple(witness) if rec(target, 0) else None

    def enumerate_window(self, N: int) -> list[int]:
        """All integer members in [0, N]; requires complete search."""
        if not self.is_complete_searchable():
            raise BadDescriptor("window enumeration needs single-sign strata")
        sign = self.dominant_sign()
        out = set()
        used = [i for i in range(self.d) if self.effective_r(i) >= 0]
        if not used:
            v = self.c0
            if v.denominator == 1 and 0 <= v <= N:
                out.add(int(v))
            return sorted(out)
        work = self if sign > 0 else ExpSumSet(
            self.q, self.d, self.r, Fraction(0),
            tuple(tuple(-c for c in row) for row in self.cij),
        )
        floors = {i: work._variable_floor(i)[0] for i in used}
        # `work` has positive dominant coefficients; its achievable sums s
        # correspond to values c0 + s (sign > 0) or c0 - s (sign < 0)
        if sign > 0:
            smin, smax = -self.c0, Fraction(N) - self.c0
        else:
            smin, smax = self.c0 - Fraction(N), self.c0
        sums = set()
        def rec(acc, idx):
            if idx == len(used):
                if smin <= acc <= smax:
                    sums.add(acc)
                return
            i = used[idx]
            tail_min = sum(floors[k] for k in used[idx + 1:])
            n = 0
            while True:
                v = work.variable_value(i, n)
                if acc + v + tail_min <= smax:
                    rec(acc + v, idx + 1)
                lower, final = work._value_lower_bound(i, n)
                if final and acc + lower + tail_min > smax:
                    break
                n += 1
        rec(Fraction(0), 0)
        for s in sums:
            v = self.c0 + s if sign > 0 else self.c0 - s
            if v.denominator == 1 and 0 <= v <= N:
                out.add(int(v))
        return sorted(out)

    # -- serialization ------------------------------------------------

    def to_json_dict(self) -> dict:
        return {
            "q": self.q,
            "d": self.d,
            "r": self.r,
            "c0": str(self.c0),
            "c": [[str(c) for c in row] for row in self.cij],
        }

    @staticmethod
    def from_json_dict(dd: dict) -> "ExpSumSet":
        return ExpSumSet(
            dd["q"],
            dd["d"],
            dd["r"],
            Fraction(dd["c0"]),
            tuple(tuple(Fraction(c) for c in row) for row in dd["c"]),
        )


def is_p_normal_admissible(s: ExpSumSet) -> tuple[bool, str]:
    """Check the normalized representation S_{q,d,0}(C0/(q-1); Ci/(q-1))
    with integer Ci and q-1 | C0 + sum Ci."""
    if s.r != 0:
        return False, "r > 0: not a candidate for the r = 0 normal form"
    q1 = s.q - 1
    big = [s.c0 * q1] + [row[0] * q1 for row in s.cij]
    for c in big:
        if c.denominator != 1:
            return False, f"coefficient {c / q1} is not of the form C/(q-1)"
    total = sum(int(c) for c in big)
    if total % q1 != 0:
        return False, f"q-1 = {q1} does not divide C0 + sum Ci = {total}"
    return True, f"q-1 = {q1} divides C0 + sum Ci = {total}"


# -- descriptors -------------------------------------------------------


@dataclass(frozen=True)
class SetDescriptor:
    """(progressions u expSums u added) \\ removed, with a declared type:
    0 = finite u APs, 1 = additionally r=0 admissible exp-sums, 2 = any."""

    progressions: tuple[ArithProgression, ...] = ()
    exp_sums: tuple[ExpSumSet, ...] = ()
    added: frozenset = frozenset()
    removed: frozenset = frozenset()
    declared_type: int = 2

    def __post_init__(self):
        object.__setattr__(self, "progressions", tuple(self.progressions))
        object.__setattr__(self, "exp_sums", tuple(self.exp_sums))
        object.__setattr__(self, "added", frozenset(self.added))
        object.__setattr__(self, "removed", frozenset(self.removed))
        if self.added & self.removed:
            raise BadDescriptor("added and removed must be disjoint")
        if self.declared_type not in (0, 1, 2):
            raise BadDescriptor("declared type must be 0, 1 or 2")
        if self.declared_type == 0 and self.exp_sums:
            raise BadDescriptor("type 0 admits no exponential strata")
        if self.declared_type == 1:
            for s in self.exp_sums:
                if s.r != 0:
                    raise BadDescriptor("type 1 requires r = 0 strata")
                ok, why = is_p_normal_admissible(s)
                if not ok:
                    raise BadDescriptor(f"type 1 stratum not admissible: {why}")

    @property
    def p(self) -> Optional[int]:
        return self.exp_sums[0].p if self.exp_sums else None

    def contains(self, n: int, cap: int = 40) -> Verdict:
        if n in self.removed:
            return NotMember()
        if n in self.added:
            return Member(source="added")
        for k, ap in enumerate(self.progressions):
            if ap.contains(n):
                return Member(source=f"progression[{k}]")
        unknown = None
        for k, s in enumerate(self.exp_sums):
            v = s.contains(n, cap=cap)
            if isinstance(v, Member):
                return Member(witness=v.witness, source=f"expsum[{k}]")
            if isinstance(v, Unknown):
                unknown = v
        return unknown if unknown is not None else NotMember()

    def is_complete(self) -> bool:
        return all(s.is_complete_searchable() for s in self.exp_sums)

    def window(self, N: int, cap: int = 40) -> "WindowResult":
        """Members in [0, N]; per-element Unknowns listed separately."""
        if self.is_complete():
            members = set()
            for ap in self.progressions:
                members.update(ap.window(N))
            for s in self.exp_sums:
                members.update(s.enumerate_window(N))
            members |= {a for a in self.added if 0 <= a <= N}
            members -= self.removed
            return WindowResult(sorted(members), [])
        members, unknowns = [], []
        for n in range(N + 1):
            v = self.contains(n, cap=cap)
            if isinstance(v, Member):
                members.append(n)
            elif isinstance(v, Unknown):
                unknowns.append(n)
        return WindowResult(members, unknowns)

    def to_json_dict(self) -> dict:
        return {
            "type": self.declared_type,
            "progressions": [a.to_json_dict() for a in self.progressions],
            "expSums": [s.to_json_dict() for s in self.exp_sums],
            "add": sorted(self.added),
            "remove": sorted(self.removed),
        }

    def to_json(self) -> str:
        return json.dumps(self.to_json_dict(), sort_keys=True)

    @staticmethod
    def from_json_dict(d: dict) -> "SetDescriptor":
        return SetDescriptor(
            tuple(
                ArithProgression.from_json_dict(a) for a in d["progressions"]
            ),
            tuple(ExpSumSet.from_json_dict(s) for s in d["expSums"]),
            frozenset(d.get("add", ())),
            frozenset(d.get("remove", ())),
            d.get("type", 2),
        )

    @staticmethod
    def from_json(text: str) -> "SetDescriptor":
        return SetDescriptor.from_json_dict(json.loads(text))


@dataclass(frozen=True)
class WindowResult:
    members: list
    unknown: list


# -- closure operations ------------------------------------------------


def union(a: SetDescriptor, b: SetDescriptor) -> SetDescriptor:
    """Concatenation; the declared type is the max (matching closure of
    each type class under finite unions)."""
    if a.p is not None and b.p is not None and a.p != b.p:
        raise BadDescriptor("cannot union descriptors over different primes")
    added = a.added | b.added
    removed = set()
    for x in a.removed:
        if isinstance(b.contains(x), NotMember):
            removed.add(x)
    for x in b.removed:
        if isinstance(a.contains(x), NotMember):
            removed.add(x)
    removed -= added
    return SetDescriptor(
        a.progressions + b.progressions,
        a.exp_sums + b.exp_sums,
        added,
        frozenset(removed),
        max(a.declared_type, b.declared_type),
    )


@dataclass(frozen=True)
class WindowedOnly:
    """Lazy conjunction of two descriptors: membership and windows only.

    Symbolically closing an intersection that involves exponential
    strata is not attempted; this handle answers pointwise instead.
    """

    a: SetDescriptor
    b: SetDescriptor

    def contains(self, n: int, cap: int = 40) -> Verdict:
        va = self.a.contains(n, cap=cap)
        vb = self.b.contains(n, cap=cap)
        if isinstance(va, NotMember) or isinstance(vb, NotMember):
            return NotMember()
        if isinstance(va, Member) and isinstance(vb, Member):
            return Member(source="intersection")
        return Unknown(search_bound=cap)

    def window(self, N: int, cap: int = 40) -> WindowResult:
        wa = self.a.window(N, cap=cap)
        wb = self.b.window(N, cap=cap)
        ma, mb = set(wa.members), set(wb.members)
        ua, ub = set(wa.unknown), set(wb.unknown)
        members = sorted(ma & mb)
        unknown = sorted(((ua | ub) & (ma | ua) & (mb | ub)) - set(members))
        return WindowResult(members, unknown)


def intersect(
    a: SetDescriptor, b: SetDescriptor
) -> Union[SetDescriptor, WindowedOnly]:
    """Exact CRT intersection for AP-and-finite descriptors; a lazy
    WindowedOnly handle as soon as exponential strata are involved."""
    if a.exp_sums or b.exp_sums:
        return WindowedOnly(a, b)
    progs = []
    for pa in a.progressions:
        for pb in b.progressions:
            c = intersect_progressions(pa, pb)
            if c is not None:
                progs.append(c)
    added = set()
    for x in a.added:
        if isinstance(b.contains(x), Member):
            added.add(x)
    for x in b.added:
        if isinstance(a.contains(x), Member):
            added.add(x)
    removed = set()
    for x in a.removed | b.removed:
        if any(pr.contains(x) for pr in progs) and x not in added:
            removed.add(x)
    return SetDescriptor(tuple(progs), (), added, frozenset(removed), 0)


def equal_up_to_finite(
    a, b, N: int, cap: int = 40
) -> dict:
    """Windowed symmetric-difference report.  'finite_on_window' means no
    difference appears in [N/2, N] -- a heuristic signal, not a proof."""
    wa, wb = a.window(N, cap=cap), b.window(N, cap=cap)
    if wa.unknown or wb.unknown:
        raise BadDescriptor("symmetric difference needs definite windows")
    sa, sb = set(wa.members), set(wb.members)
    delta = sorted(sa ^ sb)
    upper = [x for x in delta if x >= N // 2]
    return {
        "difference_size": len(delta),
        "sample": delta[:20],
        "finite_on_window": not upper,
        "upper_half_count": len(upper),
        "window": N,
    }


def complexity_measure(desc: SetDescriptor) -> int:
    """max over strata of d_eff + sum r_i_eff + #{i : r_i_eff > 0},
    where r_i_eff is the outermost nonzero level of variable i and
    unused variables are dropped; 0 for a pure AP/finite descriptor."""
    best = 0
    for s in desc.exp_sums:
        effs = [s.effective_r(i) for i in range(s.d)]
        effs = [e for e in effs if e >= 0]
        val = len(effs) + sum(effs) + sum(1 for e in effs if e > 0)
        best = max(best, val)
    return best


# -- descriptor fitting ------------------------------------------------


@dataclass(frozen=True)
class FitLimits:
    max_q_exp: int = 2  # q ranges over p^1..p^max_q_exp
    max_d: int = 2
    max_r: int = 1
    coeff_bound: int = 2
    cap: int = 40


def _coefficient_size(desc: SetDescriptor) -> int:
    total = 0
    for s in desc.exp_sums:
        total += abs(s.c0.numerator) + s.c0.denominator - 1
        for row in s.cij:
            for c in row:
                total += abs(c.numerator) + c.denominator - 1
    for ap in desc.progressions:
        total += ap.m + abs(ap.l)
    return total


def fit_descriptor(
    observed: Iterable[int], p: int, N: int, limits: FitLimits = FitLimits()
) -> list[SetDescriptor]:
    """Candidate descriptors whose window over [0, N] equals `observed`
    exactly, ranked by complexity then coefficient size.

    The enumeration covers single arithmetic progressions and single
    complete-searchable exponential strata with integer coefficients up
    to the given bounds; raw finite-set descriptors are deliberately
    excluded (they would trivially fit anything).
    """
    observed = sorted(set(observed))
    target = observed
    results = []

    # single APs suggested by the data
    if observed:
        if len(observed) >= 2:
            import math

            diffs = [b2 - a2 for a2, b2 in zip(observed, observed[1:])]
            m = 0
            for dd in diffs:
                m = math.gcd(m, dd)
            candidates = {(m, observed[0])}
        else:
            candidates = {(0, observed[0])}
        for m, l in candidates:
            if l < 0:
                continue
            ap = ArithProgression(m, l)
            if ap.window(N) == target:
                results.append(SetDescriptor((ap,), (), declared_type=0))

    # single exponential strata
    B = limits.coeff_bound
    coeff_range = list(range(-B, B + 1))
    for e in range(1, limits.max_q_exp + 1):
        q = p**e
        for d in range(1, limits.max_d + 1):
            for r in range(0, limits.max_r + 1):
                rows_space = itertools.product(
                    itertools.product(coeff_range, repeat=r + 1), repeat=d
                )
                for rows in rows_space:
                    # every variable must be used at its declared level,
                    # else the same set reappears with smaller d or r
                    if any(row[-1] == 0 for row in rows):
                        continue
                    # canonical variable order kills permuted duplicates
                    if list(rows) != sorted(rows):
                        continue
                    for c0 in coeff_range:
                        s = ExpSumSet.build(q, c0, rows)
                        if not s.is_complete_searchable():
                            continue
                        try:
                            win = s.enumerate_window(N)
                        except BadDescriptor:
                            continue
                        if win == target:
                            typ = (
                                1
                                if r == 0 and is_p_normal_admissible(s)[0]
                                else 2
                            )
                            results.append(
                                SetDescriptor((), (s,), declared_type=typ)
                            )

    results.sort(
        key=lambda dsc: (
            complexity_measure(dsc),
            _coefficient_size(dsc),
            dsc.to_json(),
        )
    )
    return results
