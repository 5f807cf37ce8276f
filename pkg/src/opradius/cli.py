"""``opradius`` command-line interface.

Exit codes: 0 success (or no violations), 1 violations found, 2 usage or
parse error, 3 computation failure, 4 hypothesis mismatch.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import os
import sys
from typing import Optional, Sequence

import numpy as np

from . import bounds, catalog
from .bounds import BoundEvaluation
from .ensembles import KINDS, EnsembleSpec
from .errors import (
    ArgumentError,
    CommutationViolated,
    HypothesisMismatch,
    OpRadiusError,
    UnknownParameter,
)
from .formats import dumps, loads, matrix_to_obj, read_block, read_matrix, vector_from_obj
from .linalg import aluthge
from .radii import min_modulus, numerical_radius, numerical_range_boundary, operator_norm, spectral_radius
from .scalar import FunctionPair
from .verifier import CheckSpec, compare_tightness, get_entry, run_check, upper_value

EXIT_OK, EXIT_VIOLATIONS, EXIT_USAGE, EXIT_COMPUTE, EXIT_HYPOTHESIS = 0, 1, 2, 3, 4
DEFAULT_TOL = 1e-10
DEFAULT_TRIALS = 500

BLOCK_SELECTORS = {
    "houdu": "eq1.6-houdu",
    "bk": "eq1.6-bk",
    "aok": "eq1.6-aok",
    "eq4.4": "eq4.4",
    "eq4.6": "eq4.6",
    "eq4.7": "eq4.7",
    "cor7": "cor7",
    "cor8": "cor8",
}


def _num(x: float) -> str:
    """Shortest round-trip representation, as used in JSON and CSV."""
    return repr(float(x))


def _write(text: str, out: Optional[str]):
    if out:
        with open(out, "w", newline="") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _csv(rows, header) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    w.writerows(rows)
    return buf.getvalue()


def _table(rows, header) -> str:
    def cell(v):
        if isinstance(v, float):
            return f"{v:.6f}"
        return str(v)

    body = [[cell(v) for v in r] for r in rows]
    widths = [max(len(h), *(len(r[k]) for r in body)) if body else len(h) for k, h in enumerate(header)]
    lines = ["  ".join(h.ljust(w) for h, w in zip(header, widths))]
    lines += ["  ".join(c.ljust(w) for c, w in zip(r, widths)) for r in body]
    return "\n".join(lines) + "\n"


def _emit_evaluations(evals, fmt, out):
    if fmt == "json":
        _write(dumps([e.to_obj() for e in evals], indent=2) + "\n", out)
        return
    header = ["bound", "variant", "lhs", "rhs", "slack", "holds", "flags"]
    rows = [
        [e.bound_id, e.variant, e.lhs, " <= ".join(f"{v:.6f}" if fmt == "table" else _num(v) for v in e.rhs_terms),
         e.slack, e.holds, ";".join(e.flags)]
        for e in evals
    ]
    if fmt == "csv":
        rows = [[r[0], r[1], _num(r[2]), r[3], _num(r[4]), str(r[5]).lower(), r[6]] for r in rows]
        _write(_csv(rows, header), out)
    else:
        _write(_table(rows, header), out)


# ---------------------------------------------------------------- commands


def cmd_compute(args) -> int:
    T = read_matrix(args.matrix)
    q = args.quantity
    if q == "aluthge":
        _write(dumps(matrix_to_obj(aluthge(T))) + "\n", args.out)
        return EXIT_OK
    funcs = {
        "w": lambda: numerical_radius(T, args.tol),
        "r": lambda: spectral_radius(T),
        "norm": lambda: operator_norm(T),
        "ell": lambda: min_modulus(T),
    }
    res = funcs[q]()
    if args.format == "json":
        obj = {"quantity": q, "value": res.value, "certified_tolerance": res.certified_tolerance}
        if res.maximizer_angle is not None:
            obj["maximizer_angle"] = res.maximizer_angle
        _write(dumps(obj) + "\n", args.out)
    elif args.format == "csv":
        _write(_csv([[q, _num(res.value), _num(res.certified_tolerance)]], ["quantity", "value", "certified_tolerance"]),
               args.out)
    else:
        _write(f"{q} = {res.value:.6f} (certified tolerance {res.certified_tolerance:.1e})\n", args.out)
    return EXIT_OK


def _variants(choice: str) -> tuple:
    return ("canonical", "as_printed") if choice == "both" else (choice,)


def cmd_bounds(args) -> int:
    T = read_matrix(args.matrix)
    evals = []
    if args.set in ("classical", "all"):
        evals += [
            bounds.bound_sandwich(T, args.tol),
            bounds.bound_kittaneh_2003(T, args.tol),
            bounds.bound_kittaneh_2005(T, args.tol),
            bounds.bound_yamazaki(T, args.tol),
        ]
        evals += [bounds.bound_dragomir(T, v, args.tol) for v in _variants(args.variant)]
    if args.set in ("product", "all"):
        S = read_matrix(args.s) if args.s else np.eye(T.shape[0], dtype=np.complex128)
        fp = FunctionPair.power(args.alpha)
        evals.append(bounds.product_bound_fg(T, S, fp, args.p, args.tol))
        for v in _variants(args.variant):
            evals.append(bounds.product_bound_power(T, S, args.alpha, args.p, v, args.tol))
            evals.append(bounds.product_bound_power(T, S, 0.5, 2.0, v, args.tol, "eq4.3"))
            evals.append(bounds.product_bound_fg_sum(T, S, fp, args.p, v, args.tol))
    _emit_evaluations(evals, args.format, args.out)
    return EXIT_OK


def _block_evaluation(A, bound_id, form, alpha, tol) -> BoundEvaluation:
    entry = get_entry(bound_id)
    variant = form if form in entry.variants else "canonical"
    params = {k: alpha for k in entry.params if k == "alpha"}
    return entry.evaluate({"A": A}, params, variant, tol)


def cmd_block_bounds(args) -> int:
    A = read_block(args.blocks)
    selected = list(BLOCK_SELECTORS.values()) if args.variant == "all" else [BLOCK_SELECTORS[args.variant]]
    if args.variant == "all" and A.grid != (2, 2):
        selected = [b for b in selected if get_entry(b).grid is None]
    evals = []
    for bid in selected:
        forms = _variants(args.form) if "as_printed" in get_entry(bid).variants else ("canonical",)
        evals += [_block_evaluation(A, bid, f, args.alpha, args.tol) for f in forms]
    if args.format == "json":
        _write(dumps([e.to_obj() for e in evals], indent=2) + "\n", args.out)
        return EXIT_OK
    header = ["bound", "variant", "bound_value", "w(A)", "slack", "holds", "diagonal", "flags"]
    rows = []
    for e in evals:
        pilot = e.detail.get("pilot", {})
        diag = ";".join(
            ",".join(f"{k}={v:.6g}" for k, v in d.items()) for d in pilot.get("diagonal_detail", [])
        )
        rows.append([e.bound_id, e.variant, upper_value(e), e.lhs, e.slack, e.holds, diag, ";".join(e.flags)])
    if args.format == "csv":
        rows = [[r[0], r[1], _num(r[2]), _num(r[3]), _num(r[4]), str(r[5]).lower(), r[6], r[7]] for r in rows]
        _write(_csv(rows, header), args.out)
    else:
        _write(_table(rows, header), args.out)
    return EXIT_OK


def _ensemble_from_args(args) -> EnsembleSpec:
    return EnsembleSpec(args.ensemble, args.dim, args.scale, args.seed, max_dim=args.max_dim, grid=args.grid)


def _params_from_args(args) -> dict:
    return {k: getattr(args, k) for k in ("alpha", "p") if getattr(args, k) is not None}


def cmd_verify(args) -> int:
    if args.suite:
        checks = catalog.all_checks() if args.suite == "all" else catalog.SUITES[args.suite]()
    else:
        if not args.bound:
            raise ArgumentError("verify needs --bound or --suite")
        checks = [CheckSpec(args.bound, _ensemble_from_args(args), args.trials, args.tol, args.variant,
                            _params_from_args(args))]
    reports = []
    for check in checks:
        report = run_check(check, workers=args.workers)
        reports.append(report)
        print(report.summary())
    if args.out:
        if len(reports) == 1:
            text = reports[0].to_json(indent=2)
        else:
            text = dumps([json.loads(r.to_json()) for r in reports], indent=2)
        _write(text + "\n", args.out)
    if args.counterexamples:
        cx = [c for r in reports for c in r.counterexamples]
        _write(dumps(cx, indent=2) + "\n", args.counterexamples)
    if args.compare:
        ids = tuple(args.compare.split(","))
        cmp = compare_tightness(ids, _ensemble_from_args(args), args.trials, _params_from_args(args))
        print(dumps({k: v for k, v in cmp.to_obj().items() if k not in ("values", "lhs")}))
    return EXIT_VIOLATIONS if any(r.violations for r in reports) else EXIT_OK


def _read_vector(spec: str) -> np.ndarray:
    if os.path.exists(spec):
        with open(spec) as fh:
            spec = fh.read()
    return vector_from_obj(loads(spec))


def _sweep_inputs(args, entry):
    names = entry.inputs
    if args.matrix is None:
        ens = _ensemble_from_args(args)
        return entry.draw(ens, args.index)
    inputs = {}
    primary = names[0]
    inputs[primary] = read_block(args.matrix) if entry.kinds == ("block",) else read_matrix(args.matrix)
    n = None if entry.kinds == ("block",) else inputs[primary].shape[0]
    if len(names) > 1 and names[1] in ("S", "B"):
        if names[1] == "S" and args.s is None:
            inputs["S"] = np.eye(n, dtype=np.complex128)
        elif args.s is None:
            raise ArgumentError(f"{entry.bound_id} needs a second matrix (--s)")
        else:
            inputs[names[1]] = read_matrix(args.s)
    for v in ("x", "y"):
        if v in names:
            given = getattr(args, v)
            if given is None:
                raise ArgumentError(f"{entry.bound_id} needs --{v}")
            inputs[v] = _read_vector(given)
    return inputs


def cmd_sweep(args) -> int:
    entry = get_entry(args.bound)
    if args.param not in entry.params:
        raise UnknownParameter(f"{args.bound} does not take parameter {args.param!r}")
    if args.steps < 1:
        raise ArgumentError("steps must be >= 1")
    inputs = _sweep_inputs(args, entry)
    grid = [args.start] if args.steps == 1 else list(np.linspace(args.start, args.stop, args.steps))
    variant = args.variant if args.variant in entry.variants else "canonical"
    rows = []
    for value in grid:
        params = {k: spec.default for k, spec in entry.params.items()}
        params.update(_params_from_args(args))
        params[args.param] = float(value)
        params = {k: entry.params[k].check(k, v) for k, v in params.items()}
        r = entry.evaluate(inputs, params, variant, args.tol)
        chain = r.chain if isinstance(r, BoundEvaluation) else r
        rows.append([_num(value), _num(upper_value(r)), _num(chain.worst_slack)])
    _write(_csv(rows, [args.param, "value", "slack"]), args.out)
    return EXIT_OK


def cmd_range(args) -> int:
    T = read_matrix(args.matrix)
    pts = numerical_range_boundary(T, args.points)
    _write(_csv([[_num(z.real), _num(z.imag)] for z in pts], ["re", "im"]), args.out)
    return EXIT_OK


# ---------------------------------------------------------------- parser


def _positive_float(text):
    v = float(text)
    if not v > 0:
        raise argparse.ArgumentTypeError("must be positive")
    return v


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="opradius", description="Numerical radius tools and inequality checks.")
    sub = parser.add_subparsers(dest="command", required=True)

    def fmt(p):
        p.add_argument("--format", choices=("table", "json", "csv"), default="table")
        p.add_argument("--out", help="write output to this file instead of stdout")

    p = sub.add_parser("compute", help="compute w, r, norm, ell or the Aluthge transform")
    p.add_argument("matrix")
    p.add_argument("quantity", choices=("w", "r", "norm", "ell", "aluthge"))
    p.add_argument("--tol", type=_positive_float, default=DEFAULT_TOL, help="w tolerance (default 1e-10)")
    fmt(p)
    p.set_defaults(func=cmd_compute)

    p = sub.add_parser("bounds", help="evaluate whole-matrix bounds")
    p.add_argument("matrix")
    p.add_argument("--set", choices=("classical", "product", "all"), default="classical")
    p.add_argument("--s", help="matrix S for product bounds (default identity)")
    p.add_argument("--alpha", type=float, default=0.5)
    p.add_argument("--p", type=float, default=2.0)
    p.add_argument("--variant", choices=("canonical", "as_printed", "both"), default="canonical")
    p.add_argument("--tol", type=_positive_float, default=1e-9, help="relative tolerance for 'holds'")
    fmt(p)
    p.set_defaults(func=cmd_bounds)

    p = sub.add_parser("block-bounds", help="evaluate pilot-matrix bounds on a block matrix")
    p.add_argument("blocks")
    p.add_argument("--variant", choices=tuple(BLOCK_SELECTORS) + ("all",), default="all")
    p.add_argument("--form", choices=("as_printed", "canonical", "both"), default="as_printed",
                   help="closed form to use where two readings exist (default as_printed)")
    p.add_argument("--alpha", type=float, default=0.5)
    p.add_argument("--tol", type=_positive_float, default=1e-9)
    fmt(p)
    p.set_defaults(func=cmd_block_bounds)

    def ensemble(p, dim_default=4):
        p.add_argument("--ensemble", choices=KINDS, default="ginibre")
        p.add_argument("--dim", type=int, default=dim_default)
        p.add_argument("--max-dim", type=int, default=None, help="draw dimensions uniformly in [dim, max-dim]")
        p.add_argument("--grid", type=int, default=None, help="block grid size for --ensemble block")
        p.add_argument("--scale", type=_positive_float, default=1.0)
        p.add_argument("--seed", type=int, default=0)

    p = sub.add_parser("verify", help="run a seeded verification check")
    p.add_argument("--bound")
    p.add_argument("--suite", choices=tuple(catalog.SUITES) + ("all",))
    p.add_argument("--variant", choices=("canonical", "as_printed", "both"), default="canonical")
    ensemble(p)
    p.add_argument("--trials", type=int, default=DEFAULT_TRIALS, help="default 500")
    p.add_argument("--tol", type=_positive_float, default=1e-8, help="relative violation tolerance")
    p.add_argument("--alpha", type=float)
    p.add_argument("--p", type=float)
    p.add_argument("--workers", type=int, default=1)
    p.add_argument("--out", help="write the report JSON here")
    p.add_argument("--counterexamples", help="write the counterexamples JSON here")
    p.add_argument("--compare", help="comma-separated bound ids for a tightness comparison on the same ensemble")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("sweep", help="sweep alpha or p for one bound; CSV output")
    p.add_argument("--bound", required=True)
    p.add_argument("--param", required=True)
    p.add_argument("--from", dest="start", type=float, required=True)
    p.add_argument("--to", dest="stop", type=float, required=True)
    p.add_argument("--steps", type=int, default=11)
    p.add_argument("--matrix", help="matrix (or block) JSON; omit to draw from --ensemble")
    p.add_argument("--s", help="second matrix (S or B)")
    p.add_argument("--x", help="vector JSON (inline or file)")
    p.add_argument("--y", help="vector JSON (inline or file)")
    p.add_argument("--alpha", type=float)
    p.add_argument("--p", type=float)
    p.add_argument("--variant", choices=("canonical", "as_printed"), default="canonical")
    p.add_argument("--index", type=int, default=0, help="trial index of the ensemble draw")
    p.add_argument("--tol", type=_positive_float, default=1e-9)
    ensemble(p)
    p.add_argument("--out")
    p.set_defaults(func=cmd_sweep)

    p = sub.add_parser("range", help="numerical range boundary points as CSV")
    p.add_argument("matrix")
    p.add_argument("--points", type=int, default=360)
    p.add_argument("--out")
    p.set_defaults(func=cmd_range)
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except CommutationViolated as exc:
        print(f"error: hypothesis |T|S = S*|T| fails: || |T|S - S*|T| || = {exc.residual:.6e}", file=sys.stderr)
        return EXIT_HYPOTHESIS
    except HypothesisMismatch as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_HYPOTHESIS
    except (ArgumentError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except OpRadiusError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_COMPUTE
    except (np.linalg.LinAlgError, FloatingPointError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_COMPUTE


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
