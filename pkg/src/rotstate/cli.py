"""Command-line interface: ``rotstate {theta,classify,vertices,sample-range,verify}``.

Exit codes: 0 success, 1 verification failure, 2 usage or parse error,
3 input is not a state.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import os
import sys

import numpy as np

from . import dense, geometry, verify
from .errors import DomainError, UnsupportedError
from .exact import SignedSqrtRational, Surd
from .invariant import AlphaVector, theta_matrix
from .separability import STATE_TOL, TOL, Classification, classify, criteria_report, cross_norm, negativity_trace_norm

SCHEMA = "rotstate/1"
FORMATS = ("json", "csv", "text")
FORMAT_ENV = "ROTSTATE_FORMAT"

EXIT_OK, EXIT_VERIFY_FAILED, EXIT_USAGE, EXIT_NOT_A_STATE = 0, 1, 2, 3


class UsageError(Exception):
    pass


def _positive_float(text: str) -> float:
    try:
        value = float(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a number: {text!r}") from None
    if not value > 0:
        raise argparse.ArgumentTypeError("tolerance must be > 0")
    return value


def _seed(text: str) -> int:
    value = int(text, 0)
    if not 0 <= value < 2**64:
        raise argparse.ArgumentTypeError("seed must be a 64-bit unsigned integer")
    return value


def _n_range(text: str) -> tuple[int, int]:
    try:
        if ".." in text:
            lo, hi = (int(x) for x in text.split("..", 1))
        else:
            lo = hi = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected N or LO..HI, got {text!r}") from None
    if lo < 2 or hi < lo:
        raise argparse.ArgumentTypeError(f"invalid range {text!r}")
    return lo, hi


def build_parser() -> argparse.ArgumentParser:
    env_fmt = os.environ.get(FORMAT_ENV, "text")
    if env_fmt not in FORMATS + ("off",):
        env_fmt = "text"

    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=FORMATS + ("off",), default=env_fmt,
                        help=f"output format (default from ${FORMAT_ENV}, else text); off is for vertices only")
    common.add_argument("--exact", action="store_true", help="render exact square-root values")
    common.add_argument("--tolerance", type=_positive_float, default=None,
                        help="numerical tolerance (default 1e-10)")
    common.add_argument("--seed", type=_seed, default=0, help="random seed (default 0)")

    p = argparse.ArgumentParser(prog="rotstate", description="Rotationally invariant N x N states.")
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("theta", parents=[common], help="print the partial time reversal matrix")
    s.add_argument("--n", type=int, required=True)

    s = sub.add_parser("classify", parents=[common], help="classify a parameter vector")
    s.add_argument("--n", type=int, required=True)
    src = s.add_mutually_exclusive_group(required=True)
    src.add_argument("--alpha", help="comma-separated components, e.g. 4,0,0,0 or 2/3,0,1/2*sqrt(3)")
    src.add_argument("--alpha-file", help="JSON {'n', 'alpha'} or whitespace/comma separated text")
    s.add_argument("--reduced", action="store_true", help="input omits the last component")

    s = sub.add_parser("vertices", parents=[common], help="dump a polytope of invariant states")
    s.add_argument("--n", type=int, required=True)
    s.add_argument("--which", choices=("S", "thetaS", "ppt", "separable", "fixed"), required=True)

    s = sub.add_parser("sample-range", parents=[common], help="sample parameter points of product states")
    s.add_argument("--n", type=int, required=True)
    s.add_argument("--count", type=int, default=100)

    s = sub.add_parser("verify", parents=[common], help="run the invariant suite")
    s.add_argument("--n", type=_n_range, default=(2, 6), help="N or LO..HI (default 2..6)")
    return p


# --- input parsing -------------------------------------------------------


def _parse_component(token: str):
    token = token.strip()
    if not token:
        raise UsageError("empty component")
    try:
        return Surd.parse(token)
    except ValueError:
        pass
    try:
        return float(token)
    except ValueError:
        raise UsageError(f"cannot parse component {token!r}") from None


def _read_alpha(args) -> AlphaVector:
    if args.alpha is not None:
        tokens = args.alpha.split(",")
    else:
        try:
            with open(args.alpha_file, encoding="utf-8") as fh:
                text = fh.read()
        except OSError as exc:
            raise UsageError(f"cannot read {args.alpha_file}: {exc}") from None
        stripped = text.lstrip()
        if stripped.startswith("{"):
            try:
                obj = json.loads(text)
                alpha = AlphaVector.from_json(obj)
            except (ValueError, KeyError, TypeError) as exc:
                raise UsageError(f"bad alpha JSON: {exc}") from None
            if alpha.n != args.n:
                raise UsageError(f"file has n={alpha.n}, expected {args.n}")
            return alpha
        tokens = text.replace(",", " ").split()
    comps = [_parse_component(t) for t in tokens]
    try:
        if args.reduced:
            return AlphaVector.from_reduced(args.n, comps)
        return AlphaVector(args.n, tuple(comps))
    except DomainError as exc:
        raise UsageError(str(exc)) from None


# --- rendering -----------------------------------------------------------


def _render(value, exact: bool):
    if exact and isinstance(value, (Surd, SignedSqrtRational)):
        return str(value)
    return repr(float(value))


def _emit_json(obj, out):
    out.write(json.dumps({"schema": SCHEMA, **obj}, indent=2) + "\n")


def _emit_csv(rows, out):
    w = csv.writer(out, lineterminator="\n")
    w.writerows(rows)


def _require_format(args, allowed):
    if args.format not in allowed:
        raise UsageError(f"--format {args.format} is not supported by {args.command}")


# --- commands ------------------------------------------------------------


def cmd_theta(args, out) -> int:
    _require_format(args, FORMATS)
    th = theta_matrix(args.n)
    if args.format == "json":
        obj = {"n": th.n, "matrix": th.array.tolist()}
        if args.exact:
            obj["exact"] = [[str(e) for e in row] for row in th.entries]
        _emit_json(obj, out)
    else:
        rows = [[_render(e, args.exact) for e in row] for row in th.entries]
        if args.format == "csv":
            _emit_csv(rows, out)
        else:
            width = max(len(x) for r in rows for x in r)
            for r in rows:
                out.write("  ".join(x.rjust(width) for x in r) + "\n")
    return EXIT_OK


def cmd_classify(args, out) -> int:
    _require_format(args, FORMATS)
    alpha = _read_alpha(args)
    state_tol = args.tolerance if args.tolerance is not None else STATE_TOL
    tol = args.tolerance if args.tolerance is not None else TOL
    cls = classify(alpha, tol, state_tol)
    report = None if cls is Classification.NOT_A_STATE else criteria_report(alpha, tol, state_tol)
    fields = {"classification": cls.value}
    if report is not None:
        fields.update({k: v for k, v in report.to_json().items() if k != "classification"})
        if args.exact and alpha.exact:
            fields["exact"] = {
                "negativity_trace_norm": str(negativity_trace_norm(alpha)),
                "cross_norm": str(cross_norm(alpha)),
            }
    if args.format == "json":
        _emit_json({"n": alpha.n, "alpha": alpha.to_json()["alpha"], **fields}, out)
    elif args.format == "csv":
        flat = {k: v for k, v in fields.items() if k != "exact"}
        _emit_csv([list(flat), [("" if v is None else v) for v in flat.values()]], out)
    else:
        out.write(f"alpha: ({', '.join(_render(a, args.exact) for a in alpha)})\n")
        for k, v in fields.items():
            if k == "exact":
                for ek, ev in v.items():
                    out.write(f"{ek} (exact): {ev}\n")
            else:
                out.write(f"{k}: {v}\n")
    return EXIT_NOT_A_STATE if cls is Classification.NOT_A_STATE else EXIT_OK


def _polytope(n: int, which: str) -> geometry.Polytope:
    if which == "S":
        return geometry.simplex_S(n)
    if which == "thetaS":
        return geometry.image_under_theta(geometry.simplex_S(n), n)
    if which == "ppt":
        return geometry.ppt_polytope(n)
    if which == "separable":
        return geometry.separable_polytope(n)
    return geometry.fixed_point_set(n)


def cmd_vertices(args, out) -> int:
    if args.n < 2:
        raise UsageError("n must be >= 2")
    try:
        poly = _polytope(args.n, args.which)
    except UnsupportedError as exc:
        raise UsageError(f"{exc} (separable set unavailable)") from None
    if args.format in ("json", "off", "csv"):
        try:
            out.write(geometry.export(poly, args.format).decode())
        except UnsupportedError as exc:
            raise UsageError(str(exc)) from None
    else:
        out.write(f"# {args.which} n={args.n} dim={poly.dim} affine_dim={poly.affine_dim} vertices={len(poly.vertices)}\n")
        for v in poly.vertices:
            out.write("(" + ", ".join(_render(c, args.exact) for c in v) + ")\n")
    return EXIT_OK


def cmd_sample_range(args, out) -> int:
    _require_format(args, FORMATS)
    if args.count < 1:
        raise UsageError("--count must be >= 1")
    if args.n < 2:
        raise UsageError("n must be >= 2")
    rng = np.random.default_rng(args.seed)
    points = []
    for _ in range(args.count):
        a = dense.alpha_functionals(dense.random_pure_state(args.n, rng), dense.random_pure_state(args.n, rng))
        points.append([float(x) for x in a])
    if args.format == "json":
        _emit_json({"n": args.n, "count": args.count, "seed": args.seed, "points": points}, out)
    elif args.format == "csv":
        _emit_csv([[f"alpha{J}" for J in range(args.n)]] + [[repr(x) for x in p] for p in points], out)
    else:
        for p in points:
            out.write(" ".join(repr(x) for x in p) + "\n")
    return EXIT_OK


def cmd_verify(args, out) -> int:
    _require_format(args, FORMATS)
    lo, hi = args.n
    tol = args.tolerance if args.tolerance is not None else 1e-10
    report = verify.run(lo, hi, tol=tol, seed=args.seed)
    if args.format == "json":
        body = report.to_json()
        body.pop("schema")
        _emit_json(body, out)
    elif args.format == "csv":
        _emit_csv([["name", "n", "passed", "detail"]] + [[r.name, r.n, r.passed, r.detail] for r in report.results], out)
    else:
        for r in report.results:
            out.write(f"{'PASS' if r.passed else 'FAIL'}  n={r.n}  {r.name}: {r.detail}\n")
        status = "all checks passed" if report.passed else "failed: " + ", ".join(report.failures)
        out.write(f"{len(report.results)} checks, {status}\n")
    return EXIT_OK if report.passed else EXIT_VERIFY_FAILED


COMMANDS = {
    "theta": cmd_theta,
    "classify": cmd_classify,
    "vertices": cmd_vertices,
    "sample-range": cmd_sample_range,
    "verify": cmd_verify,
}


def main(argv=None, out=None) -> int:
    out = sys.stdout if out is None else out
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    buf = io.StringIO()
    try:
        code = COMMANDS[args.command](args, buf)
    except (UsageError, DomainError) as exc:
        print(f"rotstate {args.command}: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    out.write(buf.getvalue())
    return code


if __name__ == "__main__":
    sys.exit(main())
