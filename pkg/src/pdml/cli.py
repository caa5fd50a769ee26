"""Command-line front end.

Every subcommand prints a deterministic text summary to stdout; with
--out the full JSON report is written atomically instead (volatile
timing data is stripped, so identical configuration and seed give
byte-identical files).  Exit status: 0 on success, 1 when a requested
verification fails its verdict, 2 on usage errors.
"""

from __future__ import annotations

import json
import sys
from fractions import Fraction

import click

from . import experiments, growth, setalg, spectral
from .funcfield import Poly, RatFunc
from .funcfield.places import height, northcott_enumerate
from .sunit import (
    GeneratorBasis,
    LaurentEquation,
    SUnitPoint,
)
from .torusdyn import (
    OracleParams,
    ShiftedMonomialMap,
    compute_orbit,
    return_set,
)


# -- shared helpers ----------------------------------------------------


def _emit(doc: dict, out: str | None, lines) -> None:
    """Write the JSON report to `out`, or print the text summary."""
    if out:
        experiments.write_report(out, doc)
        click.echo(f"report written to {out}")
    else:
        for line in lines:
            click.echo(line)


def _load_system(path: str):
    """Read a system file: basis, map, start point, target equations."""
    with open(path) as fh:
        doc = json.load(fh)
    p = int(doc["p"])
    basis = GeneratorBasis(p, [Poly.parse(p, g) for g in doc["generators"]])
    map_ = ShiftedMonomialMap.from_json_dict(basis, doc["map"])
    start = SUnitPoint.from_json_dict(basis, doc["start"])
    eqs = [LaurentEquation.from_json_dict(p, e) for e in doc["equations"]]
    return basis, map_, start, eqs


def _system_doc(basis, map_, start, eqs) -> dict:
    return {
        "schemaVersion": experiments.SCHEMA_VERSION,
        "p": basis.p,
        "generators": [str(g) for g in basis.generators],
        "map": map_.to_json_dict(),
        "start": start.to_json_dict(),
        "equations": [e.to_json_dict() for e in eqs],
    }


def _parse_values(text: str) -> list[Fraction]:
    vals = [v for v in text.replace(",", " ").split() if v]
    if not vals:
        raise click.UsageError("no values given")
    return [Fraction(v) for v in vals]


def _parse_int_list(text: str) -> list[int]:
    return [int(v) for v in text.replace(",", " ").split() if v]


def _load_descriptor(path: str) -> setalg.SetDescriptor:
    with open(path) as fh:
        return setalg.SetDescriptor.from_json_dict(json.load(fh))


def _verdict_line(v) -> str:
    name = type(v).__name__
    extra = ""
    if isinstance(v, setalg.Member) and v.witness is not None:
        extra = f" witness={list(v.witness)}"
    if isinstance(v, setalg.Unknown):
        extra = f" searchBound={v.search_bound}"
    return f"{name} ({v.certainty}){extra}"


def _return_set_lines(report) -> list[str]:
    if not report.entries:
        return ["no entries"]
    lines = [f"window [0, {report.window}], oracle degree "
             f"{report.oracle.degree}, trials {report.oracle.trials}"]
    members = report.members()
    lines.append(
        "members: " + (" ".join(str(n) for n in members) if members else "none")
    )
    for e in report.entries:
        if e.verdict != "NotMember":
            bound = (
                f" errorBoundLog2={e.error_bound_log2:.2f}"
                if e.error_bound_log2 is not None
                else ""
            )
            lines.append(f"  n={e.n}: {e.verdict} ({e.certainty}){bound}")
    return lines


# -- root group --------------------------------------------------------


@click.group()
@click.option(
    "--threads",
    type=int,
    default=1,
    show_default=True,
    help="Worker cap (accepted for interface stability; the exact "
    "arithmetic pipeline runs single-threaded).",
)
@click.pass_context
def main(ctx, threads):
    """Exact-arithmetic workbench for return sets of torus dynamics
    over function fields of positive characteristic."""
    ctx.ensure_object(dict)
    ctx.obj["threads"] = threads


# -- system / orbit / return-set / twist -------------------------------


_PRESETS = ("powers", "curve-sum", "split")


@main.command("system")
@click.argument("preset", type=click.Choice(_PRESETS))
@click.option("--p", type=int, default=None, help="Field characteristic.")
@click.option("--out", type=click.Path(), default=None)
def system_cmd(preset, p, out):
    """Emit a preset dynamical system as a JSON system file."""
    if preset == "powers":
        p = p if p is not None else 5
        f, start, eqs = experiments.power_tower_system(p)
    elif preset == "curve-sum":
        p = p if p is not None else 11
        f, start = experiments.curve_sum_system(p)
        eqs = []
    else:
        p = p if p is not None else 5
        basis = GeneratorBasis(p, [Poly.t(p)])
        slow = ShiftedMonomialMap.monomial_affine(
            basis, [[1, 0], [1, 1]], [1, 1], [[0], [0]]
        )
        fast = ShiftedMonomialMap.monomial_affine(basis, [[2]], [1], [[0]])
        f = slow.split_product(fast)
        start = f.merge_point(
            SUnitPoint(basis, [1, 1], [[1], [1]]),
            SUnitPoint(basis, [1], [[1]]),
        )
        eqs = [LaurentEquation.linear(p, {0: 1, 2: -1}, 0, 3)]
    doc = _system_doc(f.basis, f, start, eqs)
    if out:
        experiments.write_report(out, doc)
        click.echo(f"system written to {out}")
    else:
        click.echo(experiments.render_report(doc), nl=False)


@main.command("orbit")
@click.option("--system", "system_path", required=True, type=click.Path(exists=True))
@click.option("--n", "n", type=int, default=20, show_default=True)
@click.option("--out", type=click.Path(), default=None)
def orbit_cmd(system_path, n, out):
    """Exact orbit of the system's start point with coordinate heights."""
    basis, map_, start, _eqs = _load_system(system_path)
    orbit = compute_orbit(map_, start, n)
    doc = experiments._report_shell(
        "orbit", {"system": system_path, "N": n}, seed=0
    )
    doc["heights"] = [[int(h) for h in rec.heights] for rec in orbit]
    lines = ["no entries"] if not orbit else [
        f"n={rec.index}  heights={list(rec.heights)}" for rec in orbit
    ]
    _emit(doc, out, lines)


@main.command("return-set")
@click.option("--system", "system_path", required=True, type=click.Path(exists=True))
@click.option("--n", "n", type=int, default=100, show_default=True)
@click.option("--seed", type=int, default=0, show_default=True)
@click.option("--oracle-degree", type=int, default=None,
              help="Quotient-field modulus degree (default: auto).")
@click.option("--oracle-trials", type=int, default=2, show_default=True)
@click.option("--out", type=click.Path(), default=None)
def return_set_cmd(system_path, n, seed, oracle_degree, oracle_trials, out):
    """Certified scan of the return set into the target equations."""
    basis, map_, start, eqs = _load_system(system_path)
    if not eqs:
        raise click.UsageError("system file has no target equations")
    orbit = compute_orbit(map_, start, n)
    if oracle_degree is None:
        dmax = max(
            eq.degree_bound(list(rec.heights))
            for rec in orbit
            for eq in eqs
        )
        oracle_degree = experiments.choose_oracle_degree(
            basis.p, dmax, oracle_trials
        )
    oracle = OracleParams(
        degree=oracle_degree, trials=oracle_trials, seed=seed
    )
    report = return_set(map_, start, eqs, n, oracle, orbit=orbit)
    doc = experiments._report_shell(
        "return-set",
        {
            "system": system_path,
            "N": n,
            "oracleDegree": oracle_degree,
            "trials": oracle_trials,
        },
        seed,
    )
    doc["returnSet"] = report.to_json_dict()
    doc["members"] = report.members()
    _emit(doc, out, _return_set_lines(report))


@main.command("twist")
@click.option("--system", "system_path", required=True, type=click.Path(exists=True))
@click.option("--q", type=int, default=None,
              help="Frobenius power (default: the characteristic).")
@click.option("--out", type=click.Path(), default=None)
def twist_cmd(system_path, q, out):
    """Emit the Frobenius twist Frob_q o f of a system."""
    basis, map_, start, eqs = _load_system(system_path)
    q = q if q is not None else basis.p
    g = map_.frobenius_twist(q)
    doc = _system_doc(basis, g, start, eqs)
    if out:
        experiments.write_report(out, doc)
        click.echo(f"twisted system written to {out}")
    else:
        click.echo(experiments.render_report(doc), nl=False)


# -- set algebra -------------------------------------------------------


@main.group("set")
def set_group():
    """Arithmetic of exponential-sum return-set descriptors."""


@set_group.command("member")
@click.option("--desc", required=True, type=click.Path(exists=True))
@click.option("--value", required=True, type=int)
@click.option("--cap", type=int, default=40, show_default=True)
def set_member(desc, value, cap):
    """Decide membership of an integer in a descriptor."""
    d = _load_descriptor(desc)
    click.echo(f"{value}: {_verdict_line(d.contains(value, cap=cap))}")


@set_group.command("window")
@click.option("--desc", required=True, type=click.Path(exists=True))
@click.option("--n", "n", required=True, type=int)
@click.option("--cap", type=int, default=40, show_default=True)
@click.option("--out", type=click.Path(), default=None)
def set_window(desc, n, cap, out):
    """List descriptor members in [0, N]."""
    d = _load_descriptor(desc)
    w = d.window(n, cap=cap)
    doc = experiments._report_shell(
        "set-window", {"descriptor": desc, "N": n, "cap": cap}, seed=0
    )
    doc.update({"members": w.members, "unknown": w.unknown})
    lines = [
        "members: "
        + (" ".join(map(str, w.members)) if w.members else "none")
    ]
    if w.unknown:
        lines.append("unknown: " + " ".join(map(str, w.unknown)))
    _emit(doc, out, lines)


@set_group.command("union")
@click.option("--desc", required=True, type=click.Path(exists=True))
@click.option("--desc2", required=True, type=click.Path(exists=True))
@click.option("--out", type=click.Path(), default=None)
def set_union(desc, desc2, out):
    """Union of two descriptors as a new descriptor."""
    c = setalg.union(_load_descriptor(desc), _load_descriptor(desc2))
    doc = c.to_json_dict()
    if out:
        experiments.write_report(out, doc)
        click.echo(f"descriptor written to {out}")
    else:
        click.echo(experiments.render_report(doc), nl=False)


@set_group.command("intersect")
@click.option("--desc", required=True, type=click.Path(exists=True))
@click.option("--desc2", required=True, type=click.Path(exists=True))
@click.option("--n", "n", type=int, default=100, show_default=True,
              help="Window for lazy intersections.")
@click.option("--out", type=click.Path(), default=None)
def set_intersect(desc, desc2, n, out):
    """Intersection: exact descriptor when possible, else a window."""
    c = setalg.intersect(_load_descriptor(desc), _load_descriptor(desc2))
    if isinstance(c, setalg.SetDescriptor):
        doc = c.to_json_dict()
        if out:
            experiments.write_report(out, doc)
            click.echo(f"descriptor written to {out}")
        else:
            click.echo(experiments.render_report(doc), nl=False)
        return
    w = c.window(n)
    doc = experiments._report_shell(
        "set-intersect-window", {"a": desc, "b": desc2, "N": n}, seed=0
    )
    doc.update({"members": w.members, "unknown": w.unknown})
    lines = [
        "exponential strata involved: windowed intersection on "
        f"[0, {n}]",
        "members: "
        + (" ".join(map(str, w.members)) if w.members else "none"),
    ]
    if w.unknown:
        lines.append("unknown: " + " ".join(map(str, w.unknown)))
    _emit(doc, out, lines)


@set_group.command("fit")
@click.option("--values", required=True,
              help="Observed members, comma or space separated.")
@click.option("--p", required=True, type=int)
@click.option("--n", "n", required=True, type=int,
              help="Window the observations exhaust.")
@click.option("--out", type=click.Path(), default=None)
def set_fit(values, p, n, out):
    """Rank simple descriptors reproducing an observed window."""
    observed = _parse_int_list(values)
    fits = setalg.fit_descriptor(observed, p, n)
    doc = experiments._report_shell(
        "set-fit", {"p": p, "N": n, "observed": sorted(set(observed))}, seed=0
    )
    doc["candidates"] = [d.to_json_dict() for d in fits]
    lines = ["no entries"] if not fits else [
        f"[{i}] complexity={setalg.complexity_measure(d)} {d.to_json()}"
        for i, d in enumerate(fits)
    ]
    _emit(doc, out, lines)


@set_group.command("admissible")
@click.option("--desc", required=True, type=click.Path(exists=True))
def set_admissible(desc):
    """Check every exponential stratum for the normalized r=0 form."""
    d = _load_descriptor(desc)
    if not d.exp_sums:
        click.echo("no exponential strata")
        return
    all_ok = True
    for i, s in enumerate(d.exp_sums):
        ok, why = setalg.is_p_normal_admissible(s)
        all_ok = all_ok and ok
        click.echo(f"stratum[{i}]: {'admissible' if ok else 'not admissible'} -- {why}")
    sys.exit(0 if all_ok else 1)


# -- spectral ----------------------------------------------------------


@main.group("spectral")
def spectral_group():
    """Dynamical degrees and eigenvalue certificates for monomial maps."""


@spectral_group.command("degrees")
@click.option("--matrix", required=True, help="Integer matrix as JSON rows.")
@click.option("--out", type=click.Path(), default=None)
def spectral_degrees(matrix, out):
    """Dynamical degrees lambda_0..lambda_n of the monomial map x^A."""
    A = spectral.matrix_from_json(matrix)
    lams = spectral.dynamical_degrees_monomial(A)
    doc = experiments._report_shell(
        "spectral-degrees", {"matrix": json.loads(matrix)}, seed=0
    )
    doc["dynamicalDegrees"] = [l.to_json_dict() for l in lams]
    _emit(doc, out, ["lambda = [" + ", ".join(str(l.expr) for l in lams) + "]"])


@spectral_group.command("lyapunov")
@click.option("--matrix", required=True, help="Integer matrix as JSON rows.")
@click.option("--out", type=click.Path(), default=None)
def spectral_lyapunov(matrix, out):
    """Ratios mu_i = lambda_i / lambda_{i-1} with the product identity."""
    A = spectral.matrix_from_json(matrix)
    lams = spectral.dynamical_degrees_monomial(A)
    mus = spectral.lyapunov_exponents(lams)
    doc = experiments._report_shell(
        "spectral-lyapunov", {"matrix": json.loads(matrix)}, seed=0
    )
    doc["mu"] = [m.to_json_dict() for m in mus]
    _emit(doc, out, ["mu = [" + ", ".join(str(m.expr) for m in mus) + "]"])


@spectral_group.command("root-test")
@click.option("--poly", required=True,
              help="Integer coefficients, ascending, comma separated.")
def spectral_root_test(poly):
    """Compare the binomial-minimal-polynomial test with the
    conjugate-modulus criterion on the largest positive real root."""
    import sympy

    coeffs = _parse_int_list(poly)
    roots = sympy.real_roots(sympy.Poly(list(reversed(coeffs)), sympy.Symbol("x")))
    positive = [r for r in roots if r.is_positive]
    if not positive:
        raise click.UsageError("polynomial has no positive real root")
    mu = spectral.AlgebraicNumber(positive[-1])
    a = spectral.in_root_set(mu)
    b = spectral.conjugate_modulus_criterion(coeffs)
    click.echo(f"largest positive real root: {mu.expr}")
    click.echo(f"binomial minimal polynomial test: {a}")
    click.echo(f"conjugate modulus criterion:      {b}")
    click.echo(f"agreement: {a == b}")
    sys.exit(0 if a == b else 1)


@spectral_group.command("report")
@click.option("--matrix", required=True, help="Integer matrix as JSON rows.")
@click.option("--deg-f", type=int, default=None,
              help="Algebraic degree of the map (default: |det A|).")
@click.option("--out", type=click.Path(), default=None)
def spectral_report(matrix, deg_f, out):
    """Hyperbolicity summary: degrees, ratios, root and gap conditions."""
    A = spectral.as_matrix(json.loads(matrix))
    lams = spectral.dynamical_degrees_monomial(A)
    mus = spectral.lyapunov_exponents(lams)
    if deg_f is None:
        deg_f = abs(int(A.det()))
    rep = spectral.hyperbolicity_report(mus, deg_f)
    doc = experiments._report_shell(
        "spectral-report", {"matrix": json.loads(matrix), "degF": deg_f}, seed=0
    )
    doc.update(
        {
            "dynamicalDegrees": [l.to_json_dict() for l in lams],
            "mu": [m.to_json_dict() for m in mus],
            "hyperbolicity": rep,
        }
    )
    lines = [
        "lambda = [" + ", ".join(str(l.expr) for l in lams) + "]",
        "mu     = [" + ", ".join(str(m.expr) for m in mus) + "]",
    ] + [f"{k}: {v}" for k, v in sorted(rep.items())]
    _emit(doc, out, lines)


@spectral_group.command("conjugate")
@click.option("--spec", "spec_path", required=True,
              type=click.Path(exists=True),
              help="JSON: matrix, muPoly (ascending), muIndex, "
              "conjugateIndex, vector, m, ell.")
@click.option("--out", type=click.Path(), default=None)
def spectral_conjugate(spec_path, out):
    """Verify a generalized eigenvector and transport it to a conjugate
    root of the minimal polynomial."""
    with open(spec_path) as fh:
        spec = json.load(fh)
    mu = spectral.AlgebraicNumber.from_real_root(
        [int(c) for c in spec["muPoly"]], int(spec.get("muIndex", 0))
    )
    v = spectral.NumberFieldVector(
        [int(c) for c in spec["muPoly"]],
        [[Fraction(c) for c in row] for row in spec["vector"]],
    )
    try:
        w = spectral.conjugate_eigvec(
            spec["matrix"],
            mu,
            int(spec["conjugateIndex"]),
            v,
            int(spec["m"]),
            [int(l) for l in spec["ell"]],
        )
    except ValueError as exc:
        click.echo(f"verification failed: {exc}")
        sys.exit(1)
    doc = experiments._report_shell(
        "spectral-conjugate", {"spec": spec_path}, seed=0
    )
    doc.update(
        {
            "minPoly": [
                str(c) for c in reversed(w.modulus.all_coeffs())
            ],
            "conjugateVector": w.coeff_lists(),
            "verified": True,
        }
    )
    _emit(
        doc,
        out,
        ["verified: (mu I - A)^m v = 0 and ell.v != 0 mod the minimal "
         "polynomial (holds at every conjugate root)"],
    )


# -- growth ------------------------------------------------------------


@main.group("growth")
def growth_group():
    """Growth classification and envelope checks for height sequences."""


@growth_group.command("diff")
@click.option("--values", required=True)
@click.option("--a", "a", required=True)
@click.option("--order", type=int, default=1, show_default=True)
def growth_diff(values, a, order):
    """Twisted differences x_n - a x_{n-1}, applied `order` times."""
    out = growth.diff_sequence(_parse_values(values), Fraction(a), order)
    click.echo(" ".join(str(v) for v in out))


@growth_group.command("classify")
@click.option("--values", required=True)
@click.option("--a", "a", required=True, help="Dominant base.")
@click.option("--m", "m", type=int, required=True,
              help="Strict upper bound on the polynomial order.")
def growth_classify(values, a, m):
    """Classify the window into the three asymptotic cases."""
    g = growth.classify_growth(_parse_values(values), Fraction(a), m)
    d = g.to_json_dict()
    click.echo(f"case {d['case']}")
    for k in ("order", "limit", "limitError", "envelopeConstant"):
        if d[k] is not None:
            click.echo(f"{k}: {d[k]}")


@growth_group.command("ksm")
@click.option("--values", required=True)
@click.option("--rate", required=True, help="lambda_1 as a rational.")
@click.option("--eps", required=True)
def growth_ksm(values, rate, eps):
    """Upper envelope h_n <= C (rate + eps)^n, split-sample certified."""
    rep = growth.ksm_upper_check(
        _parse_values(values), Fraction(rate), Fraction(eps)
    )
    _echo_envelope(rep)
    sys.exit(0 if rep.passed else 1)


@growth_group.command("gap")
@click.option("--values", required=True)
@click.option("--rate", required=True, help="lambda as a rational.")
@click.option("--eps0", required=True)
def growth_gap(values, rate, eps0):
    """Lower envelope h_n >= C0 (rate + eps0)^n with C0 > 0."""
    rep = growth.ample_gap_lower_check(
        _parse_values(values), Fraction(rate), Fraction(eps0)
    )
    _echo_envelope(rep)
    sys.exit(0 if rep.passed else 1)


def _echo_envelope(rep: growth.EnvelopeReport) -> None:
    click.echo(f"passed: {rep.passed}")
    click.echo(f"rate: {rep.rate}")
    click.echo(f"constant: {rep.constant}")
    if rep.witness_index is not None:
        click.echo(f"violated at n = {rep.witness_index}")


# -- preset verifications ----------------------------------------------


@main.group("verify")
def verify_group():
    """Preset end-to-end experiments with pass/fail verdicts."""


_OK_VERDICTS = {"pass", "contradiction-exhibited"}


def _finish_verify(doc: dict, out: str | None, lines=None) -> None:
    base = [f"experiment: {doc['experiment']}"]
    if lines:
        base += lines
    base.append(f"verdict: {doc['verdict']}")
    if "runtimeSeconds" in doc:
        base.append(f"runtime: {doc['runtimeSeconds']} s")
    _emit(doc, out, base)
    if out:
        click.echo(f"verdict: {doc['verdict']}")
    sys.exit(0 if doc["verdict"] in _OK_VERDICTS else 1)


@verify_group.command("powers")
@click.option("--p", type=int, default=5, show_default=True)
@click.option("--n", "n", type=int, default=700, show_default=True)
@click.option("--seed", type=int, default=0, show_default=True)
@click.option("--oracle-degree", type=int, default=None)
@click.option("--oracle-trials", type=int, default=2, show_default=True)
@click.option("--out", type=click.Path(), default=None)
def verify_powers(p, n, seed, oracle_degree, oracle_trials, out):
    """Return set of the power-tower system equals the powers of p."""
    doc = experiments.run_example_power_tower(
        p=p, N=n, seed=seed, oracle_degree=oracle_degree, trials=oracle_trials
    )
    _finish_verify(
        doc,
        out,
        [
            "members:  " + " ".join(map(str, doc["members"])),
            "expected: " + " ".join(map(str, doc["expectedMembers"])),
            f"worst member error bound: 2^{doc['worstMemberErrorBoundLog2']:.2f}",
        ],
    )


@verify_group.command("curve-sum")
@click.option("--p", type=int, default=11, show_default=True)
@click.option("--samples", type=int, default=20, show_default=True)
@click.option("--seed", type=int, default=0, show_default=True)
@click.option("--oracle-degree", type=int, default=64, show_default=True)
@click.option("--oracle-trials", type=int, default=2, show_default=True)
@click.option("--out", type=click.Path(), default=None)
def verify_curve_sum(p, samples, seed, oracle_degree, oracle_trials, out):
    """Exponential witnesses on the sum-of-curves target, plus certified
    non-membership for random non-family indices."""
    doc = experiments.run_curve_sum_witnesses(
        p=p,
        n_samples=samples,
        seed=seed,
        oracle_degree=oracle_degree,
        trials=oracle_trials,
    )
    lines = [
        f"witness n={w['n']} (m={w['m']}): closed form "
        f"{w['closedFormMatches']}, target {w['targetPointMatches']}, "
        f"oracle {w['oracleEquality']}"
        for w in doc["witnesses"]
    ]
    certs = sum(1 for r in doc["nonFamilySamples"] if r["verdict"] == "NotMember")
    lines.append(
        f"non-family samples certified NotMember: {certs}/"
        f"{len(doc['nonFamilySamples'])}"
    )
    _finish_verify(doc, out, lines)


@verify_group.command("obstruction")
@click.option("--p", type=int, default=11, show_default=True)
@click.option("--c", type=int, default=1, show_default=True)
@click.option("--out", type=click.Path(), default=None)
def verify_obstruction(p, c, out):
    """Exact top-coefficient mismatch blocking the candidate identity."""
    doc = experiments.run_coefficient_obstruction(p=p, c=c)
    _finish_verify(
        doc,
        out,
        [
            f"z^{doc['zExponent']} coefficient, left:  {doc['lhsCoefficient']}",
            f"z^{doc['zExponent']} coefficient, right: {doc['rhsCoefficient']}",
            f"targets matched: {doc['lhsMatchesTarget']} / "
            f"{doc['rhsMatchesTarget']}; coefficients differ: "
            f"{doc['coefficientsDiffer']}",
        ],
    )


@verify_group.command("twist")
@click.option("--p", type=int, default=5, show_default=True)
@click.option("--n", "n", type=int, default=500, show_default=True)
@click.option("--seed", type=int, default=0, show_default=True)
@click.option("--oracle-degree", type=int, default=None)
@click.option("--oracle-trials", type=int, default=2, show_default=True)
@click.option("--out", type=click.Path(), default=None)
def verify_twist(p, n, seed, oracle_degree, oracle_trials, out):
    """Return-set equality of an isotrivial system and its Frobenius
    twist, entry by entry."""
    doc = experiments.run_frobenius_twist_equality(
        p=p, N=n, seed=seed, oracle_degree=oracle_degree, trials=oracle_trials
    )
    lines = []
    if doc["verdict"] != "precondition-failed":
        lines = [
            "base members:  " + " ".join(map(str, doc["baseMembers"])),
            "twist members: " + " ".join(map(str, doc["twistMembers"])),
        ]
    _finish_verify(doc, out, lines)


@verify_group.command("split")
@click.option("--p", type=int, default=5, show_default=True)
@click.option("--n", "n", type=int, default=300, show_default=True)
@click.option("--seed", type=int, default=0, show_default=True)
@click.option("--eps-upper", default="1/2", show_default=True)
@click.option("--eps-lower", default="1", show_default=True)
@click.option("--oracle-trials", type=int, default=2, show_default=True)
@click.option("--out", type=click.Path(), default=None)
def verify_split(p, n, seed, eps_upper, eps_lower, oracle_trials, out):
    """Two-speed contradiction on the split translation x squaring
    system: certified degree gap plus both height envelopes."""
    doc = experiments.run_split_experiment(
        p=p,
        N=n,
        seed=seed,
        eps_upper=Fraction(eps_upper),
        eps_lower=Fraction(eps_lower),
        trials=oracle_trials,
    )
    _finish_verify(
        doc,
        out,
        [
            "return indices: "
            + (" ".join(map(str, doc["returnIndices"]))
               if doc["returnIndices"] else "none"),
            f"lambda_1(slow) = {doc['lambda1Slow']}, deg(fast) = "
            f"{doc['degFast']}, gap certified: {doc['degreeGapCertified']}",
            f"upper envelope passed: {doc['upperEnvelope']['passed']}; "
            f"lower envelope passed: {doc['lowerEnvelope']['passed']}",
            f"return set finite on window: {doc['returnSetFinite']}",
        ],
    )


# -- heights -----------------------------------------------------------


@main.command("northcott")
@click.option("--p", type=int, required=True)
@click.option("--bound", "bound", type=int, required=True,
              help="Height bound A.")
@click.option("--list", "list_all", is_flag=True,
              help="Print every element, not just the count.")
def northcott_cmd(p, bound, list_all):
    """Enumerate {x in F_p(t) : h(x) <= A} (finite by Northcott)."""
    xs = northcott_enumerate(p, bound)
    click.echo(f"count: {len(xs)}")
    if list_all:
        for x in xs:
            click.echo(f"  {x}")


@main.command("height")
@click.option("--p", type=int, required=True)
@click.option("--value", required=True,
              help='Rational function in t, e.g. "(t^2+1)/t".')
def height_cmd(p, value):
    """Sum of local heights max(0, -v(x)) deg(v) over all places."""
    x = RatFunc.parse(p, value)
    click.echo(f"height: {height(x)}")


if __name__ == "__main__":
    main()
