"""Exact spectral analysis of integer pullback matrices.

Dynamical degrees of a monomial map are spectral radii of exterior
powers of its exponent matrix; cohomological Lyapunov exponents are
their successive quotients.  Everything here is exact: characteristic
polynomials come from the division-free Berkowitz algorithm, roots are
certified sympy isolations (CRootOf), and real comparisons refine
rational enclosures until they separate or an exact coincidence is
established through minimal polynomials.  The Root-set decision
("is mu of the form a^(1/n)?") is the binomial-minimal-polynomial
criterion; the module also ships the conjugate-modulus test it is
cross-validated against.
"""

from __future__ import annotations

import itertools
import json
from fractions import Fraction
from typing import Iterable, Optional, Sequence, Union

import sympy
from sympy import Rational, sqrt

_x = sympy.Symbol("x")


# -- integer matrices --------------------------------------------------


def as_matrix(rows) -> sympy.Matrix:
    if isinstance(rows, sympy.MatrixBase):
        m = rows
    else:
        m = sympy.Matrix([[sympy.Integer(int(v)) for v in row] for row in rows])
    if m.rows != m.cols or m.rows < 1:
        raise ValueError("need a square matrix of size >= 1")
    return m


def matrix_from_json(text: str) -> sympy.Matrix:
    """Rows of integers or decimal strings."""
    return as_matrix(json.loads(text))


def char_poly(A) -> sympy.Poly:
    """Characteristic polynomial det(xI - A), division-free."""
    return as_matrix(A).charpoly(_x)


def cayley_hamilton_residual(A) -> sympy.Matrix:
    """char_poly(A) evaluated at A; the zero matrix if all is well."""
    M = as_matrix(A)
    coeffs = char_poly(M).all_coeffs()  # highest degree first
    acc = sympy.zeros(M.rows, M.rows)
    for c in coeffs:
        acc = acc * M + c * sympy.eye(M.rows)
    return acc


def exterior_power(A, k: int) -> sympy.Matrix:
    """Matrix of k x k minors acting on Lambda^k (lexicographic basis)."""
    M = as_matrix(A)
    n = M.rows
    if not 0 <= k <= n:
        raise ValueError("exterior power out of range")
    if k == 0:
        return sympy.Matrix([[1]])
    idx = list(itertools.combinations(range(n), k))
    out = sympy.zeros(len(idx), len(idx))
    for a, rows in enumerate(idx):
        for b, cols in enumerate(idx):
            out[a, b] = M[list(rows), list(cols)].det(method="berkowitz")
    return out


# -- certified real algebraic numbers ---------------------------------


def _enclosure(expr, tol: Fraction) -> tuple[Fraction, Fraction]:
    """Certified rational interval for a real algebraic expression built
    from rationals, real CRootOf atoms, +, *, integer powers and sqrt."""
    if expr.is_Rational:
        q = Fraction(int(expr.p), int(expr.q))
        return q, q
    if isinstance(expr, sympy.CRootOf):
        if not expr.is_real:
            raise ValueError("complex root in a real enclosure")
        val = expr.eval_rational(tol / 2)
        c = Fraction(int(val.p), int(val.q))
        return c - tol / 2, c + tol / 2
    if expr.is_Add:
        lo, hi = Fraction(0), Fraction(0)
        args = expr.args
        for a in args:
            alo, ahi = _enclosure(a, tol / (2 * len(args)))
            lo, hi = lo + alo, hi + ahi
        return lo, hi
    if expr.is_Mul:
        lo, hi = Fraction(1), Fraction(1)
        for a in expr.args:
            # relative-style refinement: shrink tol until stable
            alo, ahi = _enclosure(a, tol)
            cands = [lo * alo, lo * ahi, hi * alo, hi * ahi]
            lo, hi = min(cands), max(cands)
        return lo, hi
    if expr.is_Pow:
        base, e = expr.args
        if e.is_Integer:
            k = int(e)
            blo, bhi = _enclosure(base, tol)
            if k < 0:
                if blo <= 0 <= bhi:
                    raise ValueError("interval crosses zero in inversion")
                blo, bhi = 1 / bhi, 1 / blo
                k = -k
            cands = [blo**k, bhi**k]
            if k % 2 == 0 and blo < 0 < bhi:
                cands.append(Fraction(0))
            return min(cands), max(cands)
        if e.is_Rational:
            pn, pd = int(e.p), int(e.q)
            blo, bhi = _enclosure(base, tol)
            if pn < 0:
                if blo <= 0:
                    raise ValueError("inversion needs a positive interval")
                blo, bhi = 1 / bhi, 1 / blo
                pn = -pn
            if blo < 0:
                raise ValueError("fractional power of a negative interval")
            lo, hi = blo**pn, bhi**pn
            return _root_lower(lo, pd, tol), _root_upper(hi, pd, tol)
    raise ValueError(f"unsupported expression for enclosure: {expr}")


def _int_kth_root(n: int, k: int) -> int:
    """floor(n ** (1/k)) for n >= 0, k >= 1 (Newton on integers)."""
    if n < 0:
        raise ValueError("negative radicand")
    if n == 0 or k == 1:
        return n if k == 1 else 0
    r = 1 << (-(-n.bit_length() // k))
    while True:
        nr = ((k - 1) * r + n // r ** (k - 1)) // k
        if nr >= r:
            break
        r = nr
    while r**k > n:
        r -= 1
    return r


def _root_lower(q: Fraction, k: int, tol: Fraction) -> Fraction:
    """Rational r with r <= q**(1/k), within tol below it."""
    if q <= 0:
        return Fraction(0)
    den = max(tol.denominator // max(tol.numerator, 1), 1)
    r = _int_kth_root(q.numerator * den**k // q.denominator, k)
    return Fraction(r, den)


def _root_upper(q: Fraction, k: int, tol: Fraction) -> Fraction:
    if q <= 0:
        return Fraction(0)
    den = max(tol.denominator // max(tol.numerator, 1), 1)
    r = _int_kth_root(q.numerator * den**k // q.denominator, k) + 1
    return Fraction(r, den)


class AlgebraicNumber:
    """An exact real algebraic number: a sympy expression plus lazily
    computed primitive integer minimal polynomial and certified
    isolation.  Comparisons refine enclosures and fall back to an exact
    minimal-polynomial zero test on ties, so they never misclassify."""

    def __init__(self, expr):
        self.expr = sympy.sympify(expr)
        self._minpoly: Optional[sympy.Poly] = None

    # -- constructors -------------------------------------------------

    @staticmethod
    def from_rational(q) -> "AlgebraicNumber":
        q = Fraction(q)
        return AlgebraicNumber(Rational(q.numerator, q.denominator))

    @staticmethod
    def from_real_root(coeffs: Sequence[int], index: int) -> "AlgebraicNumber":
        """index-th real root (ascending) of the integer polynomial with
        ascending coefficients `coeffs`."""
        poly = sympy.Poly(list(reversed([int(c) for c in coeffs])), _x)
        roots = sympy.real_roots(poly)
        return AlgebraicNumber(roots[index])

    # -- structure ----------------------------------------------------

    def minpoly(self) -> sympy.Poly:
        if self._minpoly is None:
            mp = sympy.minimal_polynomial(self.expr, _x, polys=True)
            self._minpoly = sympy.Poly(mp.primitive()[1], _x)
        return self._minpoly

    def minpoly_coeffs(self) -> list[int]:
        """Ascending integer coefficients, content 1, positive leading."""
        return [int(c) for c in reversed(self.minpoly().all_coeffs())]

    @property
    def degree(self) -> int:
        return self.minpoly().degree()

    def is_rational_value(self) -> bool:
        return self.expr.is_Rational or self.degree == 1

    def as_fraction(self) -> Fraction:
        if self.expr.is_Rational:
            return Fraction(int(self.expr.p), int(self.expr.q))
        mp = self.minpoly_coeffs()
        if len(mp) != 2:
            raise ValueError("not a rational value")
        return Fraction(-mp[0], mp[1])

    def enclosure(self, tol=Fraction(1, 10**12)) -> tuple[Fraction, Fraction]:
        return _enclosure(self.expr, Fraction(tol))

    # -- arithmetic (expression level; minpoly recomputed lazily) ------

    def __mul__(self, other):
        return AlgebraicNumber(self.expr * _expr(other))

    def __truediv__(self, other):
        return AlgebraicNumber(self.expr / _expr(other))

    def __pow__(self, k: int):
        return AlgebraicNumber(self.expr ** int(k))

    def __sub__(self, other):
        return AlgebraicNumber(self.expr - _expr(other))

    # -- comparisons --------------------------------------------------

    def compare(self, other) -> int:
        """-1, 0, 1; exact (tie detection via minimal polynomial)."""
        a, b = self.expr, _expr(other)
        diff = sympy.expand(a - b)
        if diff.is_Rational:
            return 0 if diff == 0 else (1 if diff > 0 else -1)
        for bits in (16, 48, 128):
            tol = Fraction(1, 2**bits)
            try:
                lo, hi = _enclosure(diff, tol)
            except ValueError:
                break
            if lo > 0:
                return 1
            if hi < 0:
                return -1
        # enclosures refused to separate.  For positive operands compare
        # squares first: our values are products/quotients of square
        # roots, so squaring clears the radicals and keeps the exact
        # minimal-polynomial zero test cheap.
        try:
            apos = _enclosure(a, Fraction(1, 2**8))[0] > 0
            bpos = _enclosure(b, Fraction(1, 2**8))[0] > 0
        except ValueError:
            apos = bpos = False
        if (
            apos
            and bpos
            and not (a.is_Add or b.is_Add)
            and (_has_fractional_power(a) or _has_fractional_power(b))
        ):
            return AlgebraicNumber(sympy.expand(a**2)).compare(
                AlgebraicNumber(sympy.expand(b**2))
            )
        mp = sympy.minimal_polynomial(diff, _x, polys=True)
        if mp.eval(0) == 0:
            return 0
        lo, hi = _enclosure(diff, Fraction(1, 2**256))
        if lo > 0:
            return 1
        if hi < 0:
            return -1
        raise ArithmeticError("could not certify a nonzero difference")

    def __eq__(self, other):
        if not isinstance(other, (AlgebraicNumber, int, Fraction)):
            return NotImplemented
        return self.compare(other) == 0

    def __lt__(self, other):
        return self.compare(other) < 0

    def __le__(self, other):
        return self.compare(other) <= 0

    def __hash__(self):
        return hash(tuple(self.minpoly_coeffs()))

    def __repr__(self):
        return f"AlgebraicNumber({self.expr})"

    # -- serialization ------------------------------------------------

    def to_json_dict(self, tol=Fraction(1, 10**9)) -> dict:
        lo, hi = self.enclosure(tol)
        return {
            "minPoly": [str(c) for c in self.minpoly_coeffs()],
            "isolation": {
                "re": [str(lo), str(hi)],
                "im": ["0", "0"],
            },
        }


def _has_fractional_power(e) -> bool:
    return any(
        p.exp.is_Rational and not p.exp.is_Integer
        for p in e.atoms(sympy.Pow)
    )


def _expr(v):
    if isinstance(v, AlgebraicNumber):
        return v.expr
    if isinstance(v, Fraction):
        return Rational(v.numerator, v.denominator)
    return sympy.sympify(v)


# -- spectral radius and dynamical degrees ----------------------------


def _pair_product_poly(f: sympy.Poly) -> sympy.Poly:
    """Polynomial whose roots are all products of pairs of roots of f
    (the classical composed product via a resultant)."""
    u = sympy.Symbol("u")
    n = f.degree()
    fx = f.as_expr()
    g = sympy.expand(_x**n * fx.subs(_x, u / _x))
    res = sympy.resultant(sympy.Poly(fx, _x), sympy.Poly(g, _x), _x)
    return sympy.Poly(sympy.expand(res).subs(u, _x), _x)


def _mod2_interval(r, tol: Fraction) -> tuple[Fraction, Fraction]:
    """Certified rational interval for |r|^2 of a root isolation r."""
    (rlo, rhi), (ilo, ihi) = _rect_enclosure(r, tol)
    slo1, shi1 = _square_interval(rlo, rhi)
    slo2, shi2 = _square_interval(ilo, ihi)
    return slo1 + slo2, shi1 + shi2


_IV = tuple[Fraction, Fraction]


def _iv_add(a: _IV, b: _IV) -> _IV:
    return a[0] + b[0], a[1] + b[1]


def _iv_mul(a: _IV, b: _IV) -> _IV:
    c = [a[0] * b[0], a[0] * b[1], a[1] * b[0], a[1] * b[1]]
    return min(c), max(c)


def _rect_enclosure(expr, tol: Fraction) -> tuple[_IV, _IV]:
    """Certified rectangle (re-interval, im-interval) for a complex
    algebraic expression built from rationals, I, CRootOf atoms, real
    radical subexpressions, +, * and nonnegative integer powers."""
    if expr is sympy.I:
        z = Fraction(0)
        return (z, z), (Fraction(1), Fraction(1))
    if expr.is_real:
        return _enclosure(expr, tol), (Fraction(0), Fraction(0))
    if isinstance(expr, sympy.CRootOf):
        v = expr.eval_rational(Rational(tol.numerator, tol.denominator))
        re, im = v.as_real_imag()
        out = []
        for p in (re, im):
            c = Fraction(int(p.p), int(p.q))
            out.append((c - tol, c + tol))
        return out[0], out[1]
    if expr.is_Add:
        re = (Fraction(0), Fraction(0))
        im = (Fraction(0), Fraction(0))
        for a in expr.args:
            are, aim = _rect_enclosure(a, tol)
            re, im = _iv_add(re, are), _iv_add(im, aim)
        return re, im
    if expr.is_Mul:
        re = (Fraction(1), Fraction(1))
        im = (Fraction(0), Fraction(0))
        for a in expr.args:
            are, aim = _rect_enclosure(a, tol)
            nre = _iv_add(_iv_mul(re, are), _iv_mul((-im[1], -im[0]), aim))
            nim = _iv_add(_iv_mul(re, aim), _iv_mul(im, are))
            re, im = nre, nim
        return re, im
    if expr.is_Pow and expr.args[1].is_Integer and int(expr.args[1]) >= 0:
        re = (Fraction(1), Fraction(1))
        im = (Fraction(0), Fraction(0))
        bre, bim = _rect_enclosure(expr.args[0], tol)
        for _ in range(int(expr.args[1])):
            nre = _iv_add(_iv_mul(re, bre), _iv_mul((-im[1], -im[0]), bim))
            nim = _iv_add(_iv_mul(re, bim), _iv_mul(im, bre))
            re, im = nre, nim
        return re, im
    raise ValueError(f"unsupported complex expression: {expr}")


def _square_interval(lo: Fraction, hi: Fraction) -> tuple[Fraction, Fraction]:
    cands = [lo * lo, hi * hi]
    return (Fraction(0) if lo <= 0 <= hi else min(cands)), max(cands)


def _exact_mod2(r, factor: sympy.Poly) -> AlgebraicNumber:
    """|r|^2 as an exact real algebraic number.  Complex roots go through
    the pair-product polynomial of their irreducible factor; the correct
    real root is identified by shrinking certified enclosures."""
    if r.is_real:
        return AlgebraicNumber(r**2)
    g = _pair_product_poly(factor).sqf_part()
    cands = list(dict.fromkeys(sympy.real_roots(g)))
    tol = Fraction(1, 2**32)
    for _ in range(4):
        lo, hi = _mod2_interval(r, tol)
        hits = []
        for c in cands:
            clo, chi = _enclosure(c, tol)
            if chi >= lo and clo <= hi:
                hits.append(c)
        if len(hits) == 1:
            return AlgebraicNumber(hits[0])
        cands = hits or cands
        tol = tol * tol
    raise ArithmeticError("could not isolate |root|^2 in the pair product")


def spectral_radius(f: sympy.Poly) -> AlgebraicNumber:
    """Largest root modulus of the integer polynomial f, exact.

    A dominant root is located by refining certified root rectangles; if
    the refinement cannot separate moduli (genuine ties, e.g. conjugate
    pairs or binomial spectra) the comparison finishes exactly through
    pair-product polynomials.  A real dominant root gives |root|
    directly; a complex one gives sqrt of the dominant real root of the
    pair-product polynomial of its factor.
    """
    f = sympy.Poly(f, _x)
    roots = []
    for factor, _mult in sympy.factor_list(f)[1]:
        complex_parity = 0
        for r in factor.all_roots():
            if r.is_real:
                roots.append((r, factor))
            else:
                # complex roots arrive in adjacent conjugate pairs with
                # equal modulus; one representative suffices
                if complex_parity == 0:
                    roots.append((r, factor))
                complex_parity ^= 1
    if not roots:
        raise ValueError("constant polynomial has no spectral radius")
    live = list(roots)
    for bits in (24, 64):
        tol = Fraction(1, 2**bits)
        ivs = [(_mod2_interval(r, tol), r, fac) for r, fac in live]
        best_lo = max(iv[0][0] for iv in ivs)
        live = [(r, fac) for (lo, hi), r, fac in ivs if hi >= best_lo]
        if len(live) == 1:
            break
    if len(live) > 1:
        # exact tie-break (ties are usually genuine equal moduli)
        vals = [(r, fac, _exact_mod2(r, fac)) for r, fac in live]
        best = vals[0]
        for cand in vals[1:]:
            if cand[2].compare(best[2]) > 0:
                best = cand
        r, factor = best[0], best[1]
    else:
        r, factor = live[0]
    if r.is_real:
        lo, _hi = _enclosure(r, Fraction(1, 2**24))
        return AlgebraicNumber(r if lo >= 0 else -r)
    rho2 = _exact_mod2(r, factor)
    return AlgebraicNumber(sqrt(rho2.expr))


def _max_real_root(g: sympy.Poly) -> AlgebraicNumber:
    roots = sympy.real_roots(g)
    if not roots:
        raise ValueError("no real root")
    return AlgebraicNumber(roots[-1])


def dynamical_degrees_monomial(A) -> list[AlgebraicNumber]:
    """[lambda_0..lambda_n]: lambda_i = spectral radius of the i-th
    exterior power of the exponent matrix; lambda_n = |det A|."""
    M = as_matrix(A)
    if M.det(method="berkowitz") == 0:
        raise ValueError("exponent matrix must be nonsingular")
    out = [AlgebraicNumber.from_rational(1)]
    for k in range(1, M.rows + 1):
        out.append(spectral_radius(char_poly(exterior_power(M, k))))
    return out


def lyapunov_exponents(lambdas: Sequence[AlgebraicNumber]) -> list[AlgebraicNumber]:
    """mu_i = lambda_i / lambda_{i-1} (exact)."""
    if not lambdas or lambdas[0].compare(1) != 0:
        raise ValueError("need lambda_0 = 1")
    mus = []
    for prev, cur in zip(lambdas, lambdas[1:]):
        mus.append(cur / prev)
    return mus


def _real_root_index(expr, minpoly: sympy.Poly) -> int:
    """Index (ascending) of the real root of the irreducible `minpoly`
    that `expr` equals; `expr` must be known to be a root."""
    roots = sympy.real_roots(minpoly)
    for bits in (32, 64, 128, 256):
        tol = Fraction(1, 2**bits)
        lo, hi = _enclosure(expr, tol)
        hits = []
        for i, r in enumerate(roots):
            rlo, rhi = _enclosure(r, tol)
            if not (rhi < lo or hi < rlo):
                hits.append(i)
        if len(hits) == 1:
            return hits[0]
    raise ArithmeticError("could not isolate the matching root")


def _power_equal(lk: AlgebraicNumber, base: AlgebraicNumber, k: int) -> bool:
    """Exact test lk == base**k for positive real algebraic numbers.

    base**k is a root of m = minpoly(lk) iff m(x^k) vanishes modulo
    minpoly(base) (the remainder has smaller degree, so it represents
    m(base^k) faithfully).  That reduces equality to rational polynomial
    arithmetic plus separating conjugate roots of m by refinement,
    avoiding minimal polynomials of differences of radical expressions.
    """
    if base.is_rational_value():
        return lk.compare(base.as_fraction() ** k) == 0
    m = lk.minpoly().set_domain("QQ")
    p = base.minpoly().set_domain("QQ")
    composed = m.compose(sympy.Poly(_x**k, _x))
    if not composed.rem(p).is_zero:
        return False
    power_expr = sympy.expand(base.expr**k)
    return _real_root_index(lk.expr, m) == _real_root_index(power_expr, m)


def iterate_exponents_check(A, k: int) -> bool:
    """mu_i(A^k) == mu_i(A)^k, verified exactly via dynamical degrees."""
    if k < 1:
        raise ValueError("k must be >= 1")
    M = as_matrix(A)
    lam = dynamical_degrees_monomial(M)
    lam_k = dynamical_degrees_monomial(M**k)
    # mu_i(A^k) = mu_i(A)^k for all i is equivalent to
    # lambda_i(A^k) = lambda_i(A)^k for all i (telescoping products),
    # and the degree comparisons avoid quotients of algebraic numbers.
    return all(_power_equal(lk, l, k) for lk, l in zip(lam_k, lam))


# -- Root-set membership ----------------------------------------------


def in_root_set(mu: AlgebraicNumber) -> bool:
    """mu in {a^(1/n) : a, n positive integers}?

    For a positive real algebraic number this holds iff its minimal
    polynomial is a binomial x^d - c with c a positive integer: mu =
    a^(1/n) forces mu^d rational hence integral over the binomial, and
    conversely x^d - c exhibits mu = c^(1/d).
    """
    lo, _hi = mu.enclosure(Fraction(1, 2**20))
    if not (lo > 0 or mu.compare(0) > 0):
        raise ValueError("Root-set test needs a positive real value")
    coeffs = mu.minpoly_coeffs()
    d = len(coeffs) - 1
    if coeffs[-1] != 1:
        return False
    if any(c != 0 for c in coeffs[1:-1]):
        return False
    return -coeffs[0] >= 1


def conjugate_modulus_criterion(
    coeffs: Sequence[int], bits: int = 128
) -> bool:
    """All Galois conjugates of the largest positive real root share its
    modulus (the certified-numeric criterion in_root_set is validated
    against).  `coeffs` ascending, irreducible over Q."""
    poly = sympy.Poly(list(reversed([int(c) for c in coeffs])), _x)
    reals = sympy.real_roots(poly)
    pos = [r for r in reals if r.is_positive]
    if not pos:
        raise ValueError("no positive real root")
    mu = pos[-1]
    mu2 = AlgebraicNumber(mu**2)
    for r in poly.all_roots():
        if r == mu:
            continue
        # refine certified rectangles; on persistent overlap decide
        # exactly through the pair-product polynomial
        tol = Fraction(1, 2 ** (bits // 4))
        decided = None
        for _ in range(3):
            lo, hi = _mod2_interval(r, tol)
            mlo, mhi = mu2.enclosure(tol)
            if hi < mlo or lo > mhi:
                decided = False
                break
            tol = tol * tol
        if decided is None:
            decided = _exact_mod2(r, poly).compare(mu2) == 0
        if not decided:
            return False
    return True


# -- hyperbolicity / gap reports --------------------------------------


def hyperbolicity_report(
    mus: Sequence[AlgebraicNumber], deg_f
) -> dict:
    """Three exact verdicts on the Lyapunov exponents:
    cohomologicallyHyperbolic (no mu_i = 1), rootFree (no mu_i in the
    Root set), gapCondition (no mu_i in [1, deg_f])."""
    deg_f = _expr(deg_f)
    hyperbolic = all(m.compare(1) != 0 for m in mus)
    root_free = all(not in_root_set(m) for m in mus)
    gap = True
    for m in mus:
        if m.compare(1) >= 0 and AlgebraicNumber(deg_f - m.expr).compare(0) >= 0:
            gap = False
    return {
        "cohomologicallyHyperbolic": hyperbolic,
        "rootFree": root_free,
        "gapCondition": gap,
    }


# -- number-field vectors and Galois transport ------------------------


class NumberFieldVector:
    """Vector over Q[x]/(m): entries are polynomial residues (ascending
    rational coefficients) of degree < deg m."""

    def __init__(self, modulus: Sequence, entries: Sequence[Sequence]):
        self.modulus = sympy.Poly(
            list(reversed([Rational(str(c)) for c in modulus])), _x
        )
        if self.modulus.degree() < 1:
            raise ValueError("modulus must have degree >= 1")
        self.entries = [
            sympy.Poly(
                list(reversed([Rational(str(c)) for c in e])) or [0], _x
            ).rem(self.modulus)
            for e in entries
        ]

    def __len__(self):
        return len(self.entries)

    def coeff_lists(self) -> list[list[str]]:
        d = self.modulus.degree()
        out = []
        for e in self.entries:
            asc = list(reversed(e.all_coeffs()))
            asc += [sympy.Integer(0)] * (d - len(asc))
            out.append([str(c) for c in asc])
        return out


def conjugate_eigvec(
    A,
    mu: AlgebraicNumber,
    conjugate_index: int,
    v: NumberFieldVector,
    m: int,
    ell: Sequence[int],
) -> NumberFieldVector:
    """Transport a generalized eigenvector to a Galois-conjugate root.

    The entries of v are residues mod minPoly(mu); the conjugate vector
    is the *same* residue data reinterpreted at the conjugate root, so
    the transported object is v itself -- what matters is the pair of
    symbolic checks, which are performed mod minPoly and therefore hold
    at every root simultaneously:
      (xI - A)^m v(x) = 0  (mod minPoly)   and   ell . v(x) != 0.
    """
    M = as_matrix(A)
    mp = mu.minpoly()
    if sympy.Poly(v.modulus, _x).all_coeffs() != [
        Rational(c) for c in mp.all_coeffs()
    ] and not _proportional(v.modulus, mp):
        raise ValueError("vector modulus is not the minimal polynomial")
    roots = mp.all_roots()
    if not 0 <= conjugate_index < len(roots):
        raise ValueError("conjugate index out of range")
    n = M.rows
    if len(v) != n or len(ell) != n:
        raise ValueError("dimension mismatch")
    # (xI - A)^m v = 0 mod minPoly
    vec = [e.as_expr() for e in v.entries]
    cur = vec
    for _ in range(m):
        nxt = []
        for i in range(n):
            s = _x * cur[i] - sum(M[i, j] * cur[j] for j in range(n))
            nxt.append(sympy.expand(s))
        cur = nxt
    for i, entry in enumerate(cur):
        r = sympy.Poly(entry, _x).rem(mp)
        if not r.is_zero:
            raise ValueError(
                f"(mu I - A)^{m} v has nonzero residue at row {i}: {r.as_expr()}"
            )
    pairing = sympy.expand(sum(int(l) * vi for l, vi in zip(ell, vec)))
    if sympy.Poly(pairing, _x).rem(mp).is_zero:
        raise ValueError("pairing ell . v vanishes mod the minimal polynomial")
    return NumberFieldVector(
        [str(c) for c in reversed(mp.all_coeffs())],
        v.coeff_lists(),
    )


def _proportional(p1: sympy.Poly, p2: sympy.Poly) -> bool:
    if p1.degree() != p2.degree():
        return False
    c1, c2 = p1.all_coeffs(), p2.all_coeffs()
    return all(
        sympy.simplify(a * c2[0] - b * c1[0]) == 0 for a, b in zip(c1, c2)
    )
