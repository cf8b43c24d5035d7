"""``schemekit`` command-line front end.

Exit status: 0 on success, 1 on a domain error (bad input file, failed
precondition, reconstruction failure, ...), 2 on a usage error.
With ``--json`` results and errors are printed as JSON objects; exact
rationals are always strings ``"a/b"``.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from fractions import Fraction

from . import __version__
from .errors import DegreeCapExceeded, ParseError, SchemeKitError
from .fileio import parse_pairs_file, read_ideal_file, read_spec_file
from .idealops import (
    Ideal,
    eliminate,
    hilbert_data,
    irrelevant_ideal,
    quotient,
    reduced_degree,
    saturate,
)
from .numbers import (
    QuadExt,
    ResidueTable,
    crt_combine,
    format_rational,
    lift_to_rationals,
    quad_lift,
)
from .projscheme import (
    ProjScheme,
    divisor_double_check,
    forms_through,
    is_empty,
    member_of_system,
    sample_subscheme,
    singular_locus,
)

# Inputs beyond these sizes need --load-external (and run with a degree cap).
EXTERNAL_LIMITS = {"vars": 12, "generators": 64, "degree": 10}
EXTERNAL_DEGREE_CAP = 40


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(2, f"{self.prog}: error: {message}\n")


# ---------------------------------------------------------------------------
# loading


def _load(path: str, args):
    f = read_ideal_file(path)
    big = (
        f.ring.nvars > EXTERNAL_LIMITS["vars"]
        or len(f.generators) > EXTERNAL_LIMITS["generators"]
        or any(g.total_degree() > EXTERNAL_LIMITS["degree"] for g in f.generators)
    )
    if big and not args.load_external:
        raise SchemeKitError(
            f"{path} exceeds the bundled-size limits {EXTERNAL_LIMITS}; rerun with --load-external"
        )
    I = Ideal(f.ring, f.generators)
    cap = args.degree_cap
    if cap is None and args.load_external:
        cap = EXTERNAL_DEGREE_CAP
    I.degree_cap = cap
    return f, I


def _load_ideal(path, args) -> Ideal:
    return _load(path, args)[1]


def _load_scheme(path, args) -> ProjScheme:
    f, I = _load(path, args)
    return ProjScheme(I)


def _same_ring(*ideals):
    r = ideals[0].ring
    for J in ideals[1:]:
        if J.ring != r:
            raise SchemeKitError("input files declare different rings")


def _poly_strings(polys) -> list[str]:
    return [str(g) for g in polys]


# ---------------------------------------------------------------------------
# commands: each returns (json_payload, text_lines)


def cmd_gb(args):
    I = _load_ideal(args.file, args)
    basis = I.basis()
    return {"basis": _poly_strings(basis), "order": str(I.ring.order)}, _poly_strings(basis)


def cmd_nf(args):
    I = _load_ideal(args.file, args)
    if args.poly:
        polys = [I.ring.parse(t) for t in args.poly]
    else:
        f, _ = _load(args.polys_file, args)
        if f.ring != I.ring:
            raise SchemeKitError("input files declare different rings")
        polys = f.generators
    nfs = [I.reduce(f) for f in polys]
    return {"normal_forms": _poly_strings(nfs)}, _poly_strings(nfs)


def cmd_quotient(args):
    I, J = _load_ideal(args.file, args), _load_ideal(args.divisor, args)
    _same_ring(I, J)
    Q = quotient(I, J)
    return {"basis": _poly_strings(Q.basis())}, _poly_strings(Q.basis())


def cmd_saturate(args):
    I = _load_ideal(args.file, args)
    J = _load_ideal(args.by, args) if args.by else irrelevant_ideal(I.ring)
    _same_ring(I, J)
    S = saturate(I, J, method=args.method)
    return {"basis": _poly_strings(S.basis())}, _poly_strings(S.basis())


def cmd_eliminate(args):
    I = _load_ideal(args.file, args)
    E = eliminate(I, args.k)
    payload = {"vars": list(E.ring.names), "basis": _poly_strings(E.basis())}
    return payload, ["vars " + " ".join(E.ring.names)] + _poly_strings(E.basis())


def _hilbert(args):
    I = _load_ideal(args.file, args)
    return hilbert_data(I)


def cmd_degree(args):
    dim, deg = _hilbert(args)
    return {"dimension": dim, "degree": deg}, [str(deg)]


def cmd_dim(args):
    dim, deg = _hilbert(args)
    return {"dimension": dim, "degree": deg}, [str(dim)]


def cmd_reduced_degree(args):
    I = _load_ideal(args.file, args)
    rd = reduced_degree(I, projective=not args.affine)
    return {"reduced_degree": rd, "projective": not args.affine}, [str(rd)]


def cmd_empty(args):
    X = _load_scheme(args.file, args)
    for extra in args.intersect or []:
        Y = _load_scheme(extra, args)
        _same_ring(X.ideal, Y.ideal)
        X = X.intersection(Y)
    e = is_empty(X)
    return {"empty": e}, ["true" if e else "false"]


def cmd_double_check(args):
    H, C, A = (_load_scheme(p, args) for p in (args.H, args.C, args.ambient))
    _same_ring(H.ideal, C.ideal, A.ideal)
    ok = divisor_double_check(H, C, A)
    return {"double": ok}, ["true" if ok else "false"]


def cmd_forms_through(args):
    X = _load_scheme(args.file, args)
    if args.sample is not None:
        X = sample_subscheme(X, args.sample, seed=args.seed, degree=args.degree)
    L = forms_through(X, args.degree)
    return {"degree": args.degree, "dim": L.dim, "basis": _poly_strings(L.basis)}, _poly_strings(L.basis) or ["(none)"]


def cmd_member(args):
    f_file, _ = _load(args.form, args)
    X = _load_scheme(args.system, args)
    if f_file.ring != X.ring:
        raise SchemeKitError("input files declare different rings")
    if len(f_file.generators) != 1:
        raise SchemeKitError("the form file must contain exactly one polynomial")
    f = f_file.generators[0]
    L = forms_through(X, args.degree if args.degree is not None else f.total_degree())
    ok = member_of_system(f, L)
    return {"member": ok, "system_dim": L.dim}, ["true" if ok else "false"]


def cmd_singular(args):
    X = _load_scheme(args.file, args)
    S = singular_locus(X)
    empty = is_empty(S)
    payload = {"empty": empty, "basis": _poly_strings(S.saturated().basis())}
    lines = ["empty"] if empty else _poly_strings(S.saturated().basis())
    if not empty and S.dimension == 0:
        payload["reduced_degree"] = S.reduced_degree()
        lines.append(f"reduced degree {payload['reduced_degree']}")
    return payload, lines


def _read_text(path):
    with open(path, encoding="utf-8") as fh:
        return fh.read()


def cmd_crt(args):
    table = ResidueTable.parse(_read_text(args.file))
    x, m = crt_combine(table)
    return {"residue": str(x), "modulus": str(m)}, [f"{x} mod {m}"]


def cmd_lift(args):
    text = _read_text(args.file)
    if args.adjoin is not None:
        e = quad_lift(parse_pairs_file(text), args.adjoin)
        t, n = e.minimal_polynomial()
        payload = {
            "value": str(e),
            "trace": format_rational(t),
            "norm": format_rational(n),
            "d": args.adjoin,
        }
        return payload, [str(e), f"trace {format_rational(t)} norm {format_rational(n)}"]
    lift = lift_to_rationals(ResidueTable.parse(text))
    payload = {
        "value": format_rational(lift.value),
        "bad_primes": list(lift.bad_primes),
        "confirmed": lift.confirmed,
    }
    lines = [format_rational(lift.value)]
    if lift.bad_primes:
        lines.append("bad primes: " + " ".join(map(str, lift.bad_primes)))
    return payload, lines


def cmd_search(args):
    from .modsearch import run_search

    sf = read_spec_file(args.spec)
    if args.primes:
        sf.primes = args.primes
    spec = sf.to_spec()
    report = run_search(spec, jobs=args.jobs, allow_indeterminate=args.allow_indeterminate)
    payload = report.to_json()
    lines = []
    for sw in payload["sweeps"]:
        tag = "" if sw["embedding"] == 1 else " (s -> -s)"
        lines.append(f"p={sw['p']}{tag}: {sw['candidates']} candidates, {len(sw['hits'])} hits")
        for h in sw["hits"]:
            lines.append(f"  {h['coefficients']} reduced degree {h['reduced_degree']}")
    for fam in payload["families"]:
        state = "spurious" if fam["spurious"] else "survives"
        lines.append(f"family {fam['signature']}: {state} at primes {fam['primes']}")
        for s in fam.get("lifted", []):
            lines.append(f"  lifted {s['values']}: {s['hyperplane']}")
            lines.extend("    " + v for v in s["verification"])
        if "lift_error" in fam:
            lines.append(f"  lift failed: {fam['lift_error']}")
    lines.extend("warning: " + w for w in payload["warnings"])
    return payload, lines


def cmd_fixture(args):
    from .fixtures import FIXTURES, files, run_fixture

    if args.name == "list":
        names = sorted(FIXTURES)
        return {"fixtures": names}, names
    if args.name not in FIXTURES:
        raise SchemeKitError(f"unknown fixture {args.name!r}; try 'fixture list'")
    if args.write:
        os.makedirs(args.write, exist_ok=True)
        written = []
        for fname, text in files(args.name).items():
            path = os.path.join(args.write, fname)
            with open(path, "w", encoding="utf-8") as fh:
                fh.write(text)
            written.append(path)
        return {"written": written}, written
    opts = {}
    if args.name in ("veronese-demo", "census"):
        opts["jobs"] = args.jobs
    if args.name == "census":
        opts["q"] = args.q
    report = run_fixture(args.name, **opts)
    args._failed = not report.passed
    return report.to_json(), report.lines()


# ---------------------------------------------------------------------------
# argument parsing


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="machine-readable output")
    common.add_argument("--seed", type=int, default=0, help="seed for randomized steps")
    common.add_argument("--jobs", type=int, default=1, help="worker threads for searches")
    common.add_argument("--degree-cap", type=int, default=None, help="abort Gröbner runs past this degree")
    common.add_argument("--load-external", action="store_true", help="accept inputs beyond the bundled-size limits")

    parser = _Parser(prog="schemekit", description=__doc__.splitlines()[0], parents=[common])
    parser.add_argument("--version", action="version", version=f"schemekit {__version__}")
    sub = parser.add_subparsers(dest="command", metavar="COMMAND", parser_class=_Parser)
    sub.required = True

    def add(name, func, help_):
        p = sub.add_parser(name, help=help_, parents=[common])
        p.set_defaults(func=func)
        return p

    p = add("gb", cmd_gb, "reduced Gröbner basis")
    p.add_argument("file")
    p = add("nf", cmd_nf, "normal forms modulo an ideal")
    p.add_argument("file")
    g = p.add_mutually_exclusive_group(required=True)
    g.add_argument("--poly", action="append", help="polynomial to reduce (repeatable)")
    g.add_argument("--polys-file", help="ideal file whose generators are reduced")
    p = add("quotient", cmd_quotient, "ideal quotient I : J")
    p.add_argument("file")
    p.add_argument("divisor")
    p = add("saturate", cmd_saturate, "saturation I : J^∞ (default J = irrelevant ideal)")
    p.add_argument("file")
    p.add_argument("by", nargs="?")
    p.add_argument("--method", choices=("elements", "iterate"), default="elements")
    p = add("eliminate", cmd_eliminate, "eliminate the first k variables")
    p.add_argument("file")
    p.add_argument("-k", type=int, default=1)
    p = add("degree", cmd_degree, "degree from the Hilbert polynomial")
    p.add_argument("file")
    p = add("dim", cmd_dim, "projective dimension from the Hilbert polynomial")
    p.add_argument("file")
    p = add("reduced-degree", cmd_reduced_degree, "number of geometric points")
    p.add_argument("file")
    p.add_argument("--affine", action="store_true", help="treat the ideal as affine")
    p = add("empty", cmd_empty, "is the projective scheme empty?")
    p.add_argument("file")
    p.add_argument("--intersect", action="append", help="intersect with another scheme first")
    p = add("double-check", cmd_double_check, "certify H = 2C inside an ambient scheme")
    p.add_argument("H")
    p.add_argument("C")
    p.add_argument("--ambient", required=True)
    p = add("forms-through", cmd_forms_through, "degree-d forms vanishing on a scheme")
    p.add_argument("file")
    p.add_argument("--degree", "-d", type=int, required=True)
    p.add_argument("--sample", type=int, default=None, help="use a random sample of at least this degree")
    p = add("member", cmd_member, "is a form in the system of forms through a scheme?")
    p.add_argument("form")
    p.add_argument("system")
    p.add_argument("--degree", "-d", type=int, default=None)
    p = add("singular", cmd_singular, "singular locus by the Jacobian criterion")
    p.add_argument("file")
    p = add("crt", cmd_crt, "combine residues 'p n' by CRT")
    p.add_argument("file")
    p = add("lift", cmd_lift, "lift residues to Q (or conjugate pairs to Q(sqrt d))")
    p.add_argument("file")
    p.add_argument("--adjoin", type=int, default=None, help="file holds conjugate pairs 'p u v' over Q(sqrt d)")
    p = add("search-hyperplanes", cmd_search, "multi-prime hyperplane search")
    p.add_argument("--spec", required=True)
    p.add_argument("--primes", type=int, nargs="+")
    p.add_argument("--allow-indeterminate", action="store_true")
    p = add("fixture", cmd_fixture, "run a bundled fixture ('list' to enumerate)")
    p.add_argument("name")
    p.add_argument("--write", metavar="DIR", help="write the fixture's input files instead of running it")
    p.add_argument("-q", type=int, default=5, help="field size for the census fixture")
    return parser


def _error_payload(exc) -> dict:
    err = {"type": type(exc).__name__, "message": getattr(exc, "message", None) or str(exc)}
    if isinstance(exc, ParseError) and exc.line:
        err["line"] = exc.line
        err["column"] = exc.column
    return {"error": err}


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.jobs < 1:
        parser.error("--jobs must be at least 1")
    try:
        payload, lines = args.func(args)
    except (SchemeKitError, DegreeCapExceeded, OSError, ValueError, ZeroDivisionError) as exc:
        if args.json:
            print(json.dumps(_error_payload(exc), sort_keys=True))
        else:
            print(f"error: {exc}", file=sys.stderr)
        return 1
    if args.json:
        print(json.dumps(payload, sort_keys=True, default=_json_default))
    else:
        for line in lines:
            print(line)
    return 1 if getattr(args, "_failed", False) else 0


def _json_default(x):
    if isinstance(x, Fraction):
        return format_rational(x)
    if isinstance(x, QuadExt):
        return str(x)
    raise TypeError(f"cannot serialize {type(x).__name__}")


if __name__ == "__main__":
    sys.exit(main())
