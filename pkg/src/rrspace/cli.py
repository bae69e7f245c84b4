"""Command-line front end.

Subcommands:

    places  <curvefile> <point>           branches at a point
    adjoint <curvefile>                   adjoint divisor and genus
    divisor <curvefile> <poly>            divisor of a homogeneous polynomial
    rrbasis <curvefile> <divisorfile>     denominator and numerator basis
    agcode  <curvefile> <divisorfile> <pointsfile>   generator matrix
    share   <field> <secret> <t> <ids>    polynomial secret sharing demo

Curve files are line oriented: `field = GF(2)` and `F = y^3 + x^3 + x^2*z`.
Divisor files hold one entry per line: `point=(1:0:1) branch=0 mult=1`,
with an optional `in GF(4)` after the point for extension centres.
`-` reads the file from stdin.  Exit codes: 0 ok, 2 parse error,
3 precondition violated, 4 precision cap exhausted.
"""

import argparse
import sys
from random import Random

from . import places as places_mod
from .codes import ag_generator_matrix, reconstruct, share_secret
from .divisors import Divisor, adjoint_divisor, genus, global_divisor
from .errors import (
    CenterNotOnCurveError,
    CurveNotIrreducibleError,
    DegreeMismatchError,
    DuplicatePointsError,
    KTooLargeError,
    NotCoprimeError,
    ParseError,
    PointNotOnCurveError,
    PointOnDenominatorError,
    PrecisionExhausted,
    RRSpaceError,
    TooFewSharesError,
)
from .exprparse import parse_point_with_field, parse_polynomial
from .gf import format_element, parse_field
from .places import local_branches
from .polyring import format_series
from .riemannroch import rr_basis, verify_basis

_PRECONDITION_ERRORS = (
    CenterNotOnCurveError,
    CurveNotIrreducibleError,
    DegreeMismatchError,
    DuplicatePointsError,
    KTooLargeError,
    NotCoprimeError,
    PointNotOnCurveError,
    PointOnDenominatorError,
    TooFewSharesError,
)


def _read_text(path):
    if path == "-":
        return sys.stdin.read()
    with open(path, "r", encoding="utf-8") as fh:
        return fh.read()


def _parse_keyvals(text):
    out = {}
    for line in text.splitlines():
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        if "=" not in line:
            raise ParseError(f"expected key = value, got {line!r}")
        key, val = line.split("=", 1)
        out[key.strip()] = val.strip()
    return out


def load_curve(path):
    data = _parse_keyvals(_read_text(path))
    if "field" not in data or "F" not in data:
        raise ParseError("curve file needs `field = ...` and `F = ...` lines")
    field = parse_field(data["field"])
    F = parse_polynomial(data["F"], field)
    if F.degree < 1 or F.is_zero():
        raise ParseError("curve polynomial must be non-constant")
    return field, F


def load_divisor(path, F, field):
    entries = {}
    for line in _read_text(path).splitlines():
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        parts = {}
        # tokens: point=... [in GF(..)] branch=... mult=...
        #   the point value may contain spaces only through ` in `
        tokens = line.split()
        i = 0
        while i < len(tokens):
            tok = tokens[i]
            if "=" not in tok:
                raise ParseError(f"bad divisor entry {line!r}")
            key, val = tok.split("=", 1)
            if key == "point" and i + 2 < len(tokens) and tokens[i + 1] == "in":
                val = f"{val} in {tokens[i + 2]}"
                i += 2
            parts[key] = val
            i += 1
        if "point" not in parts or "mult" not in parts:
            raise ParseError(f"divisor entry needs point= and mult=: {line!r}")
        pt = parse_point_with_field(parts["point"], field)
        branch = int(parts.get("branch", "0"))
        mult = int(parts["mult"])
        if mult == 0:
            raise ParseError("divisor multiplicities must be nonzero")
        fac = local_branches(F, pt)
        if branch < 0 or branch >= len(fac.places):
            raise CenterNotOnCurveError(
                f"branch {branch} out of range at {pt} ({len(fac.places)} branches)"
            )
        place = fac.places[branch]
        entries[place] = entries.get(place, 0) + mult
    return Divisor(F, entries)


def load_points(path, field):
    pts = []
    for line in _read_text(path).splitlines():
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        pts.append(parse_point_with_field(line, field))
    return pts


def _print_divisor(D):
    print(D if D.coeffs else "0")


def cmd_places(args):
    field, F = load_curve(args.curvefile)
    from .divisors import ensure_irreducible

    ensure_irreducible(F)
    pt = parse_point_with_field(args.point, field)
    fac = local_branches(F, pt, prec=args.prec)
    for place in fac.places:
        phi = place.phi + _const_series(place.field, place.affine_center[0])
        psi = place.psi + _const_series(place.field, place.affine_center[1])
        print(
            "P(%s,%d): ram=%d chart=%d x = %s  y = %s"
            % (
                place.center,
                place.branch_index,
                place.ram_index,
                place.chart_id,
                format_series(phi.truncate(args.prec), "t"),
                format_series(psi.truncate(args.prec), "t"),
            )
        )
    return 0


def _const_series(field, c):
    from .polyring import TruncSeries

    return TruncSeries(field, [c])


def cmd_adjoint(args):
    _field, F = load_curve(args.curvefile)
    rng = Random(args.seed)
    A = adjoint_divisor(F, rng)
    print(f"A = {A}")
    print(f"genus = {genus(F, rng)}")
    return 0


def cmd_divisor(args):
    field, F = load_curve(args.curvefile)
    G = parse_polynomial(args.poly, field)
    if G.is_zero():
        raise ParseError("cannot take the divisor of zero")
    D = global_divisor(F, G, Random(args.seed))
    _print_divisor(D)
    return 0


def cmd_rrbasis(args):
    field, F = load_curve(args.curvefile)
    D = load_divisor(args.divisorfile, F, field)
    rng = Random(args.seed)
    basis = rr_basis(F, D, rng)
    print(f"H = {basis.H}")
    for i, G in enumerate(basis.numerators, start=1):
        print(f"G{i} = {G}")
    print(f"ell = {basis.ell}")
    if args.verify:
        report = verify_basis(F, D, basis, rng)
        print("verified = %s" % ("ok" if report.ok else "; ".join(report.failures)))
    return 0


def cmd_agcode(args):
    field, F = load_curve(args.curvefile)
    D = load_divisor(args.divisorfile, F, field)
    pts = load_points(args.pointsfile, field)
    M = ag_generator_matrix(F, D, pts, rng=Random(args.seed))
    print(M.render())
    return 0


def cmd_share(args):
    field = parse_field(args.field)
    ids = [int(s) for s in args.ids.split(",") if s]
    shares = share_secret(int(args.secret), int(args.t), ids, field, Random(args.seed))
    for ident, val in shares.shares:
        print(f"share {format_element(ident)}: {format_element(val)}")
    rec = reconstruct(shares)
    print(f"reconstructed = {format_element(rec)}")
    return 0


def build_parser():
    ap = argparse.ArgumentParser(
        prog="rrspace",
        description="Function spaces of divisors on plane projective curves",
    )
    ap.add_argument("--seed", type=int, default=0, help="seed for all randomized choices")
    ap.add_argument("--prec-cap", type=int, default=None, help="override the precision cap")
    ap.add_argument("--output", choices=["text"], default="text")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("places", help="branches of the curve at a point")
    p.add_argument("curvefile")
    p.add_argument("point")
    p.add_argument("--prec", type=int, default=8)
    p.set_defaults(fn=cmd_places)

    p = sub.add_parser("adjoint", help="adjoint divisor and genus")
    p.add_argument("curvefile")
    p.set_defaults(fn=cmd_adjoint)

    p = sub.add_parser("divisor", help="divisor of a homogeneous polynomial")
    p.add_argument("curvefile")
    p.add_argument("poly")
    p.set_defaults(fn=cmd_divisor)

    p = sub.add_parser("rrbasis", help="basis of the function space of a divisor")
    p.add_argument("curvefile")
    p.add_argument("divisorfile")
    p.add_argument("--verify", action="store_true")
    p.set_defaults(fn=cmd_rrbasis)

    p = sub.add_parser("agcode", help="generator matrix of an evaluation code")
    p.add_argument("curvefile")
    p.add_argument("divisorfile")
    p.add_argument("pointsfile")
    p.set_defaults(fn=cmd_agcode)

    p = sub.add_parser("share", help="threshold secret sharing demo")
    p.add_argument("field")
    p.add_argument("secret")
    p.add_argument("t")
    p.add_argument("ids", help="comma-separated nonzero identifiers")
    p.set_defaults(fn=cmd_share)
    return ap


def main(argv=None) -> int:
    ap = build_parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as exc:
        return 2 if exc.code not in (0, None) else 0
    places_mod.set_precision_cap(args.prec_cap)
    try:
        return args.fn(args)
    except ParseError as err:
        print(f"parse error: {err}", file=sys.stderr)
        return 2
    except _PRECONDITION_ERRORS as err:
        print(f"precondition violated ({err.code}): {err}", file=sys.stderr)
        return 3
    except PrecisionExhausted as err:
        print(f"precision cap exhausted: {err}", file=sys.stderr)
        return 4
    except FileNotFoundError as err:
        print(f"cannot read input: {err}", file=sys.stderr)
        return 2
    except RRSpaceError as err:
        print(f"error ({err.code}): {err}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
