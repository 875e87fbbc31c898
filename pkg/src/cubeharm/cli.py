"""Command-line front door.

Subcommands map one-to-one onto library capabilities:

  verify      run identity suites over generated bases or a given polynomial
  basis       emit harmonic / polyharmonic bases
  integrate   one exact integral, printed as "p/q"
  approx      one-sided approximation certificate as JSON
  crosscheck  exact engine vs quadrature oracle, prints max relative deviation
  grid        CSV samples of f, h, f-h for external plotting

Exit codes are a stable contract: 0 all good, 1 usage or input error,
2 verification failure (a nonzero residual, or a crosscheck above --tol).
Reports are written atomically (temp file + rename) and are byte-identical
for identical configurations.  All rationals in output are "p/q" strings;
the only floats are crosscheck deviations and grid samples, printed with 17
significant digits.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import os
import random
import sys
import tempfile
from fractions import Fraction

from .identities import Identity, SuiteConfig, run_suite
from .integrate import CubeDomain, Weight, integrate_boundary, integrate_cube, integrate_diagonal
from .kernel import BasisRequest, graded_basis
from .onesided import certify_best_approx, weighted_l1_error
from .oracle import (
    QuadratureSpec,
    numeric_integrate_boundary,
    numeric_integrate_cube,
    numeric_integrate_diagonal,
)
from .parser import ExprSource, ExprSyntaxError, parse_poly, parse_unipoly
from .poly import Limits, Poly, evaluate, poly_to_text, rational_to_text
from .sampling import random_poly

_IDENTITY_TOKENS = {
    "surface": Identity.SURFACE_MEAN,
    "volume": Identity.VOLUME_MEAN,
    "quadrature": Identity.WEIGHTED_QUADRATURE,
    "pizzetti": Identity.PIZZETTI,
}


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):  # argparse default exits with 2; we reserve 2
        raise UsageError(message)


def _parse_rational(text: str) -> Fraction:
    try:
        value = Fraction(text)
    except (ValueError, ZeroDivisionError) as exc:
        raise UsageError(f"not a rational: {text!r} ({exc})")
    return value


def _parse_int_list(text: str) -> tuple[int, ...]:
    try:
        return tuple(int(part) for part in text.split(","))
    except ValueError:
        raise UsageError(f"expected a comma-separated integer list, got {text!r}")


def _domain(args) -> CubeDomain:
    r = _parse_rational(args.r)
    if args.n < 2:
        raise UsageError(f"dimension must be >= 2, got {args.n}")
    if r <= 0:
        raise UsageError(f"radius must be positive, got {args.r}")
    return CubeDomain(args.n, r)


def _input_limits(args) -> Limits:
    # The CLI's own arguments are the escape hatch past the desk defaults.
    deg = getattr(args, "deg", None) or 0
    return Limits(max_dim=max(8, args.n), max_degree=max(16, deg))


def _write_atomic(path: str, data: str) -> None:
    directory = os.path.dirname(os.path.abspath(path))
    fd, tmp = tempfile.mkstemp(dir=directory, prefix=".cubeharm-")
    try:
        with os.fdopen(fd, "w") as fh:
            fh.write(data)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def _emit(args, data: str) -> None:
    if getattr(args, "out", None):
        _write_atomic(args.out, data)
    else:
        sys.stdout.write(data)


def _float17(x: float) -> str:
    return format(x, ".17g")


_JOB_FIELDS = {"n", "r", "deg", "k", "m", "identities", "phi", "poly", "format", "out"}


def _load_job(args) -> None:
    """Fill the verify namespace from a JSON job file.

    The file is the whole configuration: {"n": 2, "r": "1/1", "deg": 8,
    "k": [0, 1], "m": 1, "identities": ["surface"], "phi": ["t^2/2"],
    "poly": "x1^2", "format": "json", "out": "report.json"}.  Unknown keys
    are rejected so typos fail loudly.
    """
    try:
        with open(args.job) as fh:
            payload = json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise UsageError(f"cannot read job file {args.job!r}: {exc}")
    if not isinstance(payload, dict):
        raise UsageError("job file must hold a JSON object")
    unknown = set(payload) - _JOB_FIELDS
    if unknown:
        raise UsageError(f"unknown job file fields: {sorted(unknown)}")
    if "n" in payload:
        args.n = int(payload["n"])
    if "r" in payload:
        args.r = str(payload["r"])
    if "deg" in payload:
        args.deg = int(payload["deg"])
    if "k" in payload:
        args.k = ",".join(str(v) for v in payload["k"])
    if "m" in payload:
        args.m = int(payload["m"])
    if "identities" in payload:
        args.identities = ",".join(payload["identities"])
    if "phi" in payload:
        args.phi = list(payload["phi"])
    if "poly" in payload:
        args.poly = payload["poly"]
    if "format" in payload:
        args.format = payload["format"]
    if "out" in payload:
        args.out = payload["out"]


def cmd_verify(args) -> int:
    if args.job:
        _load_job(args)
    if args.n is None:
        raise UsageError("--n is required (as a flag or a job file field)")
    d = _domain(args)
    identities = []
    for token in args.identities.split(","):
        token = token.strip()
        if token not in _IDENTITY_TOKENS:
            raise UsageError(
                f"unknown identity {token!r}; choose from {','.join(_IDENTITY_TOKENS)}"
            )
        identities.append(_IDENTITY_TOKENS[token])
    ks = _parse_int_list(args.k)
    if any(k < 0 for k in ks):
        raise UsageError("weight exponents must be >= 0")
    phis = None
    if args.phi:
        phis = tuple(parse_unipoly(text, limits=_input_limits(args)) for text in args.phi)
    config = SuiteConfig(ks=ks, m=args.m, phis=phis)
    if args.poly:
        p = parse_poly(ExprSource(args.poly, expected_dim=args.n), limits=_input_limits(args))
        basis = [("user[0]", p)]
        report = run_suite(basis, d, identities, config)
    else:
        request = BasisRequest(n=args.n, max_degree=args.deg, m=args.m)
        report = run_suite(request, d, identities, config)
    data = report.to_csv() if args.format == "csv" else report.to_json()
    _emit(args, data)
    return 0 if report.all_pass else 2


def cmd_basis(args) -> int:
    if args.n < 1:
        raise UsageError(f"dimension must be >= 1, got {args.n}")
    request = BasisRequest(n=args.n, max_degree=args.deg, m=args.m)
    basis = graded_basis(request, limits=_input_limits(args))
    lines = [poly_to_text(p) for p in basis.elements]
    if args.format == "json":
        data = json.dumps(lines, indent=2) + "\n"
    else:
        data = "".join(line + "\n" for line in lines)
    _emit(args, data)
    return 0


def cmd_integrate(args) -> int:
    d = _domain(args)
    p = parse_poly(ExprSource(args.poly, expected_dim=args.n), limits=_input_limits(args))
    if args.phi is not None:
        weight = Weight.from_profile(parse_unipoly(args.phi))
    else:
        if args.k < 0:
            raise UsageError("weight exponent must be >= 0")
        weight = Weight.power(args.k)
    region = args.region
    if region == "cube":
        value = integrate_cube(p, d, weight)
    elif region == "diagonal":
        value = integrate_diagonal(p, d, weight)
    else:
        if args.phi is not None or args.k != 0:
            raise UsageError("boundary integrals are unweighted; drop --k/--phi")
        value = integrate_boundary(p, d)
    _emit(args, rational_to_text(value) + "\n")
    return 0


def cmd_approx(args) -> int:
    d = _domain(args)
    limits = _input_limits(args)
    f = parse_poly(ExprSource(args.f, expected_dim=args.n), limits=limits)
    h = parse_poly(ExprSource(args.h, expected_dim=args.n), limits=limits)
    cert = certify_best_approx(f, h, d, grid_points_per_axis=args.grid)
    payload = cert.to_dict()
    if args.phi is not None:
        phi = parse_unipoly(args.phi)
        payload["phi"] = args.phi
        payload["weighted_l1_error"] = rational_to_text(weighted_l1_error(f, h, d, phi))
    data = json.dumps(payload, sort_keys=True, indent=2) + "\n"
    _emit(args, data)
    return 0


def cmd_crosscheck(args) -> int:
    d = _domain(args)
    spec = QuadratureSpec(points_per_axis=args.points_per_axis)
    ks = _parse_int_list(args.k)
    polys: list[Poly] = []
    if args.poly:
        polys.append(
            parse_poly(ExprSource(args.poly, expected_dim=args.n), limits=_input_limits(args))
        )
    else:
        rng = random.Random(args.seed)
        for _ in range(args.count):
            polys.append(random_poly(rng, args.n, max_degree=args.deg))
    worst = 0.0
    for p in polys:
        pairs = [(integrate_boundary(p, d), numeric_integrate_boundary(p, d, spec))]
        for k in ks:
            w = Weight.power(k)
            pairs.append((integrate_cube(p, d, w), numeric_integrate_cube(p, d, w, spec)))
            pairs.append(
                (integrate_diagonal(p, d, w), numeric_integrate_diagonal(p, d, w, spec))
            )
        for exact, numeric in pairs:
            dev = abs(float(exact) - numeric) / max(1.0, abs(float(exact)))
            worst = max(worst, dev)
    sys.stdout.write(_float17(worst) + "\n")
    if args.tol is not None and worst > args.tol:
        return 2
    return 0


def cmd_grid(args) -> int:
    if args.n != 2:
        raise UsageError("grid emission is implemented for n == 2 surfaces")
    d = _domain(args)
    limits = _input_limits(args)
    f = parse_poly(ExprSource(args.f, expected_dim=2), limits=limits)
    h = parse_poly(ExprSource(args.h, expected_dim=2), limits=limits)
    res = args.res
    if res < 1:
        raise UsageError(f"grid resolution must be >= 1, got {res}")
    coords = (
        [Fraction(0)]
        if res == 1
        else [Fraction(2 * i, res - 1) * d.r - d.r for i in range(res)]
    )
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(["x1", "x2", "f", "h", "f_minus_h"])
    for x1 in coords:
        for x2 in coords:
            fv = evaluate(f, (x1, x2))
            hv = evaluate(h, (x1, x2))
            writer.writerow(
                [
                    _float17(float(x1)),
                    _float17(float(x2)),
                    _float17(float(fv)),
                    _float17(float(hv)),
                    _float17(float(fv - hv)),
                ]
            )
    _emit(args, buf.getvalue())
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="cubeharm", description=__doc__.split("\n")[0])
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, n_required=True):
        p.add_argument("--n", type=int, required=n_required, help="ambient dimension")
        p.add_argument("--r", default="1", help='cube radius as a rational "p/q"')
        p.add_argument("--out", help="write output to this path (atomic)")

    p = sub.add_parser("verify", help="run identity suites")
    common(p, n_required=False)
    p.add_argument("--job", help="JSON job file holding the whole configuration")
    p.add_argument("--deg", type=int, default=8, help="max basis degree")
    p.add_argument("--k", default="0,1,2,3", help="weight exponents, comma separated")
    p.add_argument("--m", type=int, default=1, help="polyharmonic order")
    p.add_argument(
        "--identities",
        default="surface,volume",
        help="comma separated: surface,volume,quadrature,pizzetti",
    )
    p.add_argument("--phi", action="append", help="weight profile in t (repeatable)")
    p.add_argument("--poly", help="verify this polynomial instead of a generated basis")
    p.add_argument("--format", choices=("json", "csv"), default="json")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("basis", help="emit harmonic / polyharmonic bases")
    common(p)
    p.add_argument("--deg", type=int, required=True)
    p.add_argument("--m", type=int, default=1)
    p.add_argument("--format", choices=("text", "json"), default="text")
    p.set_defaults(func=cmd_basis)

    p = sub.add_parser("integrate", help="one exact integral")
    common(p)
    p.add_argument("--region", choices=("cube", "boundary", "diagonal"), required=True)
    p.add_argument("--poly", required=True)
    p.add_argument("--k", type=int, default=0)
    p.add_argument("--phi", help="weight profile in t (overrides --k)")
    p.set_defaults(func=cmd_integrate)

    p = sub.add_parser("approx", help="one-sided approximation certificate")
    common(p)
    p.add_argument("--f", required=True)
    p.add_argument("--h", required=True)
    p.add_argument("--phi", help="also report the weighted error for this profile")
    p.add_argument("--grid", type=int, default=41, help="heuristic grid points per axis")
    p.set_defaults(func=cmd_approx)

    p = sub.add_parser("crosscheck", help="exact engine vs quadrature oracle")
    common(p)
    p.add_argument("--poly", help="check this polynomial")
    p.add_argument("--count", type=int, default=20, help="random polynomials to check")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--deg", type=int, default=6)
    p.add_argument("--k", default="0,1,2")
    p.add_argument("--points-per-axis", type=int, default=24)
    p.add_argument("--tol", type=float, help="exit 2 when the deviation exceeds this")
    p.set_defaults(func=cmd_crosscheck)

    p = sub.add_parser("grid", help="CSV samples of f, h, f-h")
    common(p)
    p.add_argument("--f", required=True)
    p.add_argument("--h", default="0")
    p.add_argument("--res", type=int, default=101, help="points per axis")
    p.set_defaults(func=cmd_grid)

    return parser


_EXPR_FLAGS = {"--poly", "--f", "--h", "--phi"}


def _merge_expression_flags(argv: list[str]) -> list[str]:
    """Join "--f" "-1/4*x1^4..." into "--f=-1/4*x1^4..." so argparse does not
    mistake a leading-minus expression for an option."""
    out: list[str] = []
    i = 0
    while i < len(argv):
        tok = argv[i]
        nxt = argv[i + 1] if i + 1 < len(argv) else None
        if (
            tok in _EXPR_FLAGS
            and nxt is not None
            and nxt.startswith("-")
            and not nxt.startswith("--")
        ):
            out.append(f"{tok}={nxt}")
            i += 2
        else:
            out.append(tok)
            i += 1
    return out


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    if argv is None:
        argv = sys.argv[1:]
    argv = _merge_expression_flags(list(argv))
    try:
        args = parser.parse_args(argv)
        return args.func(args)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except ExprSyntaxError as exc:
        print(f"error: invalid expression {exc}", file=sys.stderr)
        return 1
    except (ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
