"""Command-line front end.

Exit codes: 0 success, 1 usage or parse error, 2 state-invariant violation,
3 verification failure.

State files are JSON documents with two fields: ``dims`` = [m, n] and
``matrix`` = a d x d array (d = m*n) whose entries are [re, im] pairs.
"""

from __future__ import annotations

import argparse
import json
import sys

import numpy as np

from .families import fmin_isotropic, fmin_werner, isotropic, pure_alpha, werner
from .measures import (
    concurrence,
    fmin_unconstrained_2xn,
    fmin_pure,
    fmin_upper_bound,
    min_exact_2xn,
)
from .optimizer import OracleConfig, oracle_report
from .states import BipartiteState, StateValidationError, purity, schmidt, validate
from .sweep import FIGURE_PRESETS, FIGURE_STEPS, format_csv, sweep_records
from .verify import run_checks

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_STATE = 2
EXIT_VERIFY = 3


class _ParseError(Exception):
    """Malformed state file (bad JSON, wrong schema, wrong shapes)."""


class _Parser(argparse.ArgumentParser):
    def error(self, message):  # argparse default exits with 2; the CLI uses 1
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def load_state_file(path: str) -> BipartiteState:
    """Parse and validate a state file; raises _ParseError or StateValidationError."""
    try:
        with open(path, encoding="utf-8") as fh:
            doc = json.load(fh)
    except OSError as err:
        raise _ParseError(f"cannot read {path}: {err}") from err
    except json.JSONDecodeError as err:
        raise _ParseError(f"invalid JSON in {path}: {err}") from err

    if not isinstance(doc, dict) or "dims" not in doc or "matrix" not in doc:
        raise _ParseError("state file must be an object with 'dims' and 'matrix'")
    dims = doc["dims"]
    if not (isinstance(dims, list) and len(dims) == 2):
        raise _ParseError("'dims' must be a pair [m, n]")
    try:
        m, n = int(dims[0]), int(dims[1])
        raw = np.asarray(doc["matrix"], dtype=float)
    except (TypeError, ValueError) as err:
        raise _ParseError(f"malformed matrix data: {err}") from err
    d = m * n
    if raw.shape != (d, d, 2):
        raise _ParseError(
            f"'matrix' must be {d}x{d} entries of [re, im] pairs, got shape {raw.shape}"
        )
    mat = raw[..., 0] + 1j * raw[..., 1]
    return validate(mat, dims=(m, n))


def _fmt(value: float) -> str:
    return f"{value:.12g}"


def cmd_measure(args) -> int:
    state = load_state_file(args.path)
    print(f"seed: {args.seed}")
    print(f"dims: {state.dim_a}x{state.dim_b}")
    if state.dim_a == 2:
        hs, f, _ = min_exact_2xn(state)
        if state.dim_b == 2:
            print(f"concurrence: {_fmt(concurrence(state))}")
        print(f"hs_min: {_fmt(hs)}")
        print(f"f_min: {_fmt(f)}")
        print(f"f_min_unconstrained: {_fmt(fmin_unconstrained_2xn(state))}")
    else:
        rep = oracle_report(state, OracleConfig(seed=args.seed))
        print(f"hs_min: {_fmt(rep.hs_min)}")
        print(f"f_min: {_fmt(rep.f_min)}")
    print(f"f_min_upper_bound: {_fmt(fmin_upper_bound(state))}")
    print(f"purity: {_fmt(purity(state.rho))}")
    return EXIT_OK


def _write_csv(path: str, kind: str, alpha: float, steps: int, p: float | None) -> int:
    records = sweep_records(kind, alpha, steps, p)
    text = format_csv(records)
    try:
        with open(path, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
    except OSError as err:
        print(f"cannot write {path}: {err}", file=sys.stderr)
        return EXIT_USAGE
    print(f"wrote {path} ({len(records)} rows)")
    return EXIT_OK


def cmd_sweep(args) -> int:
    if args.channel == "gad" and args.p is None:
        print("sweep: error: --p is required for the gad channel", file=sys.stderr)
        return EXIT_USAGE
    if args.channel != "gad" and args.p is not None:
        print("sweep: error: --p only applies to the gad channel", file=sys.stderr)
        return EXIT_USAGE
    print(f"seed: {args.seed}")
    return _write_csv(args.out, args.channel, args.alpha, args.steps, args.p)


def cmd_figure(args) -> int:
    kind, alpha, p = FIGURE_PRESETS[args.id]
    return _write_csv(args.out, kind, alpha, FIGURE_STEPS, p)


def cmd_named(args) -> int:
    print(f"seed: {args.seed}")
    if args.family == "pure":
        if args.alpha is None:
            print("named: error: --alpha is required for the pure family", file=sys.stderr)
            return EXIT_USAGE
        state = pure_alpha(args.alpha)
        psi = np.zeros(4, dtype=complex)
        psi[0], psi[3] = np.sqrt(args.alpha), np.sqrt(1 - args.alpha)
        closed = fmin_pure(schmidt(psi, 2, 2))
        label = f"pure alpha={args.alpha:g}"
    else:
        if args.x is None:
            print("named: error: --x is required for this family", file=sys.stderr)
            return EXIT_USAGE
        if args.family == "isotropic":
            state = isotropic(args.m, args.x)
            closed = fmin_isotropic(args.m, args.x)
        else:
            state = werner(args.m, args.x)
            closed = fmin_werner(args.m, args.x)
        label = f"{args.family} m={args.m} x={args.x:g}"
    rep = oracle_report(state, OracleConfig(seed=args.seed))
    print(f"family: {label}")
    print(f"f_min_closed_form: {_fmt(closed)}")
    print(f"f_min_oracle: {_fmt(rep.f_min)}")
    print(f"abs_difference: {_fmt(abs(rep.f_min - closed))}")
    return EXIT_OK


def cmd_verify(args) -> int:
    print(f"seed: {args.seed}")
    results = run_checks(seed=args.seed)
    for r in results:
        print(r.line())
    failed = [r for r in results if not r.passed]
    print(f"{len(results) - len(failed)}/{len(results)} checks passed")
    return EXIT_VERIFY if failed else EXIT_OK


def build_parser() -> _Parser:
    parser = _Parser(prog="qmin", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p_measure = sub.add_parser("measure", help="measures of a state read from a file")
    p_measure.add_argument("path")
    p_measure.add_argument("--seed", type=int, default=7)
    p_measure.set_defaults(fn=cmd_measure)

    p_sweep = sub.add_parser("sweep", help="channel-parameter sweep written as CSV")
    p_sweep.add_argument("--channel", required=True, choices=("ad", "depol", "gad"))
    p_sweep.add_argument("--alpha", type=float, required=True)
    p_sweep.add_argument("--p", type=float, default=None)
    p_sweep.add_argument("--steps", type=int, required=True)
    p_sweep.add_argument("--out", required=True)
    p_sweep.add_argument("--seed", type=int, default=7)
    p_sweep.set_defaults(fn=cmd_sweep)

    p_figure = sub.add_parser("figure", help="preset sweeps as CSV")
    p_figure.add_argument("id", choices=sorted(FIGURE_PRESETS))
    p_figure.add_argument("--out", required=True)
    p_figure.set_defaults(fn=cmd_figure)

    p_named = sub.add_parser("named", help="closed form vs oracle for a named family")
    p_named.add_argument("--family", required=True, choices=("isotropic", "werner", "pure"))
    p_named.add_argument("--m", type=int, default=2)
    p_named.add_argument("--x", type=float, default=None)
    p_named.add_argument("--alpha", type=float, default=None)
    p_named.add_argument("--seed", type=int, default=7)
    p_named.set_defaults(fn=cmd_named)

    p_verify = sub.add_parser("verify", help="run the full invariant suite")
    p_verify.add_argument("--seed", type=int, default=7)
    p_verify.set_defaults(fn=cmd_verify)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as err:
        return err.code if isinstance(err.code, int) else EXIT_USAGE
    try:
        return args.fn(args)
    except _ParseError as err:
        print(f"qmin: parse error: {err}", file=sys.stderr)
        return EXIT_USAGE
    except StateValidationError as err:
        print(f"qmin: invalid state: {err}", file=sys.stderr)
        return EXIT_STATE
    except ValueError as err:
        print(f"qmin: error: {err}", file=sys.stderr)
        return EXIT_USAGE


def entry_point() -> None:
    sys.exit(main())


if __name__ == "__main__":
    entry_point()
