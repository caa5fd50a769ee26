"""Growth classification of height-like sequences.

The sequences of interest have the shape x_n = (polynomial in n) * a^n
plus strictly smaller terms.  The twisted difference operator
x_n -> x_n - a * x_{n-1} lowers the polynomial degree by one, which
makes the dominant exponential base and the polynomial order readable
from exact window data.  The two inequality fitters (upper envelope at
rate lam1 + eps, lower envelope at rate lam + eps0) certify their
verdicts on the window by a split-sample criterion: a constant fitted
on the first half must keep working on the second half.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence, Union

from .spectral import AlgebraicNumber

Number = Union[int, Fraction, AlgebraicNumber]


def _as_fractions(xs: Sequence) -> list[Fraction]:
    return [Fraction(x) for x in xs]


def diff_sequence(xs: Sequence, a, order: int = 1) -> list[Fraction]:
    """Apply the twisted difference x_n - a*x_{n-1} `order` times
    (entries before the window count as zero)."""
    if order < 0:
        raise ValueError("order must be >= 0")
    cur = _as_fractions(xs)
    a = Fraction(a)
    for _ in range(order):
        cur = [x - a * prev for x, prev in zip(cur, [Fraction(0)] + cur[:-1])]
    return cur


@dataclass(frozen=True)
class GrowthClass:
    case: str  # "i" (|a|>1), "ii" (|a|=1), "iii" (|a|<1)
    order: Optional[int]  # polynomial order k in case i, else None
    limit: Optional[Fraction]  # estimate of lim x_n/(n^k a^n) in case i
    limit_error: Optional[Fraction]  # observed oscillation of the estimate
    envelope_constant: Optional[Fraction]  # C in cases ii/iii

    def to_json_dict(self) -> dict:
        return {
            "case": self.case,
            "order": self.order,
            "limit": None if self.limit is None else str(self.limit),
            "limitError": None
            if self.limit_error is None
            else str(self.limit_error),
            "envelopeConstant": None
            if self.envelope_constant is None
            else str(self.envelope_constant),
        }


def classify_growth(xs: Sequence, a, m: int) -> GrowthClass:
    """Classify x_n against the base a, assuming x is dominated by
    (polynomial of degree < m) * a^n plus geometrically smaller terms.

    |a| > 1: recovers the maximal polynomial order k < m with
    x_n / (n^k a^n) tending to a nonzero limit, and estimates the limit
    from the k-fold ordinary difference of x_n / a^n (exact for a pure
    polynomial-times-exponential, geometrically accurate otherwise).
    |a| = 1: fits |x_n| <= C n^m.  |a| < 1: fits |x_n| <= C.
    """
    if m < 1:
        raise ValueError("m must be >= 1")
    xs = _as_fractions(xs)
    if len(xs) < 8:
        raise ValueError("window too short to classify")
    a = Fraction(a)
    if abs(a) <= 1:
        case = "ii" if abs(a) == 1 else "iii"
        best = Fraction(0)
        for n, x in enumerate(xs):
            scale = Fraction(max(n, 1)) ** m if case == "ii" else Fraction(1)
            best = max(best, abs(x) / scale)
        return GrowthClass(case, None, None, None, best)
    # case i: z_n = x_n / a^n has a polynomial part; ordinary
    # differences kill it degree by degree
    z = [x / a**n for n, x in enumerate(xs)]
    seqs = [z]
    for _ in range(m):
        prev = seqs[-1]
        seqs.append([q - p for p, q in zip(prev, prev[1:])])
    k = 0
    for j in range(m - 1, -1, -1):
        if not _tends_to_zero(seqs[j]):
            k = j
            break
    # Delta^k z_n = k! * (leading coefficient) + decaying contamination
    fact = 1
    for i in range(2, k + 1):
        fact *= i
    tail = seqs[k][-max(4, len(seqs[k]) // 4) :]
    estimates = [t / fact for t in tail]
    limit = estimates[-1]
    err = max(abs(e - limit) for e in estimates)
    return GrowthClass("i", k, limit, err, None)


def _tends_to_zero(s: Sequence[Fraction]) -> bool:
    """Does the tail of s decay towards 0 (relative to its peak)?"""
    peak = max(abs(v) for v in s)
    if peak == 0:
        return True
    tail = s[-max(2, len(s) // 8) :]
    return all(abs(v) <= peak / 2**12 for v in tail)


@dataclass(frozen=True)
class EnvelopeReport:
    passed: bool
    rate: Fraction  # the rational rate the envelope was fitted against
    constant: Fraction  # minimal C (upper) / maximal C0 (lower)
    witness_index: Optional[int]  # second-half index violating the fit

    def to_json_dict(self) -> dict:
        return {
            "passed": self.passed,
            "rate": str(self.rate),
            "constant": str(self.constant),
            "witnessIndex": self.witness_index,
        }


def _rate_bound(value, eps, lower: bool) -> Fraction:
    """lam + eps as an exact rational, rounding against the claim being
    tested (lower=True rounds down) when lam is irrational."""
    eps = Fraction(eps)
    if isinstance(value, AlgebraicNumber):
        lo, hi = value.enclosure(Fraction(1, 2**64))
        return (lo if lower else hi) + eps
    return Fraction(value) + eps


def ksm_upper_check(heights: Sequence, lam1, eps) -> EnvelopeReport:
    """Upper envelope h_n <= C (lam1 + eps)^n on the window.

    C is fitted as the maximal ratio over the first half; the check
    passes when that constant still bounds the second half, i.e. the
    window shows no growth faster than the claimed rate.  The reported
    constant is the minimal C valid on the whole window.
    """
    hs = _as_fractions(heights)
    if len(hs) < 4:
        raise ValueError("window too short")
    rate = _rate_bound(lam1, eps, lower=False)
    if rate <= 0:
        raise ValueError("rate must be positive")
    ratios = [h / rate**n for n, h in enumerate(hs)]
    half = len(hs) // 2
    c_first = max(ratios[:half])
    witness = None
    for n in range(half, len(hs)):
        if ratios[n] > c_first:
            witness = n
            break
    return EnvelopeReport(witness is None, rate, max(ratios), witness)


def ample_gap_lower_check(heights: Sequence, lam, eps0) -> EnvelopeReport:
    """Lower envelope h_n >= C0 (lam + eps0)^n with C0 > 0.

    C0 is fitted as the minimal ratio over the first half; the check
    passes when the second half never drops below it and the constant is
    positive.  The reported constant is the maximal C0 valid on the
    whole window.
    """
    hs = _as_fractions(heights)
    if len(hs) < 4:
        raise ValueError("window too short")
    rate = _rate_bound(lam, eps0, lower=True)
    if rate <= 0:
        raise ValueError("rate must be positive")
    ratios = [h / rate**n for n, h in enumerate(hs)]
    half = len(hs) // 2
    c_first = min(ratios[:half])
    witness = None
    if c_first <= 0:
        witness = ratios.index(min(ratios[:half]))
    else:
        for n in range(half, len(hs)):
            if ratios[n] < c_first:
                witness = n
                break
    return EnvelopeReport(witness is None, rate, min(ratios), witness)
