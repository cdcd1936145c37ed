"""Command-line interface: ``opclass <subcommand> ...``.

Exit codes: 0 success, 1 a check or verification failed, 2 bad input.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import io
from .classify import classify
from .decompose import star_para_blocks
from .hardy import hankel_matrix, toeplitz_matrix
from .linalg import InputError, Tolerances
from .spectra import diagram_emit, spectrum_diagram
from .testkit import CLASSES, vector_oracle
from .verify import run_verification

EXIT_OK, EXIT_FAIL, EXIT_INPUT = 0, 1, 2


def _dump(obj) -> None:
    json.dump(obj, sys.stdout, indent=2, sort_keys=True)
    sys.stdout.write("\n")


def _lambda(text: str):
    if text == "auto":
        return "auto"
    try:
        value = float(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected 'auto' or a number, got {text!r}") from None
    if not value >= 0 or value == float("inf"):
        raise argparse.ArgumentTypeError("lambda must be a finite non-negative number")
    return value


def _positive_int(text: str) -> int:
    try:
        v = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected an integer, got {text!r}") from None
    if v < 1:
        raise argparse.ArgumentTypeError("must be >= 1")
    return v


def _tol(text: str) -> float:
    try:
        v = float(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected a number, got {text!r}") from None
    if not 0 < v < 1:
        raise argparse.ArgumentTypeError("tolerance must lie in (0, 1)")
    return v


def cmd_classify(args) -> int:
    T = io.read_matrix(args.matrix)
    if args.compress is not None and len(T) < args.compress + 2:
        raise InputError(f"--compress {args.compress} needs a matrix of size >= {args.compress + 2}")
    rep = classify(T, Tolerances(psd=args.tol), compress=args.compress)
    _dump(rep.to_dict())
    return EXIT_OK


def cmd_decompose(args) -> int:
    T = io.read_matrix(args.matrix)
    d, rep = star_para_blocks(T, args.lam, Tolerances(block=args.tol))
    print(f"lambda used: {d.lam!r} ({d.lam_source})", file=sys.stderr)
    _dump({"decomposition": d.to_dict(), "report": rep.to_dict()})
    if args.strict and not rep.passed:
        print("failed checks: " + ", ".join(rep.failed), file=sys.stderr)
        return EXIT_FAIL
    return EXIT_OK


def _symbol_matrix(build):
    def run(args) -> int:
        sym = io.read_symbol(args.symbol)
        M = build(sym, args.size)
        if args.out:
            io.write_matrix(args.out, M)
        else:
            print(json.dumps(io.matrix_to_json(M)))
        return EXIT_OK

    return run


def cmd_spectrum(args) -> int:
    T = io.read_matrix(args.matrix)
    d = spectrum_diagram(T, args.lam)
    text = diagram_emit(d, args.format)
    if args.diagram:
        Path(args.diagram).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)
    return EXIT_OK


def cmd_oracle(args) -> int:
    T = io.read_matrix(args.matrix)
    value, x = vector_oracle(T, args.cls, args.samples, args.seed, compress=args.compress)
    _dump(
        {
            "class": args.cls,
            "samples": args.samples,
            "seed": args.seed,
            "min_slack": value,
            "vector": [[float(z.real), float(z.imag)] for z in x],
        }
    )
    return EXIT_OK


def cmd_verify_paper(args) -> int:
    checks = run_verification(args.seed, corrupt=args.corrupt)
    width = max(len(c.name) for c in checks)
    for c in checks:
        print(f"{'PASS' if c.passed else 'FAIL'}  {c.name:<{width}}  {c.detail}", file=sys.stderr)
    ok = all(c.passed for c in checks)
    _dump(
        {
            "seed": args.seed,
            "passed": ok,
            "checks": [{"name": c.name, "passed": c.passed, "detail": c.detail} for c in checks],
        }
    )
    return EXIT_OK if ok else EXIT_FAIL


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="opclass", description="Operator-class tests for dense matrices.")
    sub = p.add_subparsers(dest="command", required=True)

    c = sub.add_parser("classify", help="class flags with pencil certificates")
    c.add_argument("--matrix", required=True)
    c.add_argument("--tol", type=_tol, default=1e-10)
    c.add_argument("--compress", type=_positive_int, default=None, metavar="M")
    c.set_defaults(func=cmd_classify)

    c = sub.add_parser("decompose", help="three-block representation and its checks")
    c.add_argument("--matrix", required=True)
    c.add_argument("--lambda", dest="lam", type=_lambda, default="auto")
    c.add_argument("--tol", type=_tol, default=1e-8)
    c.add_argument("--strict", action="store_true", help="exit 1 if any check fails")
    c.set_defaults(func=cmd_decompose)

    for name, build in (("toeplitz", toeplitz_matrix), ("hankel", hankel_matrix)):
        c = sub.add_parser(name, help=f"{name} truncation of a symbol")
        c.add_argument("--symbol", required=True)
        c.add_argument("--size", type=_positive_int, required=True)
        c.add_argument("--out", default=None)
        c.set_defaults(func=_symbol_matrix(build))

    c = sub.add_parser("spectrum", help="spectral diagram of |T|")
    c.add_argument("--matrix", required=True)
    c.add_argument("--diagram", default=None, help="output path (stdout if omitted)")
    c.add_argument("--format", choices=("csv", "json", "text"), default="text")
    c.add_argument("--lambda", dest="lam", type=_lambda, default="auto")
    c.set_defaults(func=cmd_spectrum)

    c = sub.add_parser("oracle", help="random-vector search for violations")
    c.add_argument("--matrix", required=True)
    c.add_argument("--class", dest="cls", choices=CLASSES, required=True)
    c.add_argument("--samples", type=_positive_int, default=10000)
    c.add_argument("--seed", type=int, default=0)
    c.add_argument("--compress", type=_positive_int, default=None, metavar="M")
    c.set_defaults(func=cmd_oracle)

    c = sub.add_parser("verify-paper", help="run the worked-example checks")
    c.add_argument("--seed", type=int, default=42)
    c.add_argument(
        "--corrupt",
        choices=("example_S", "example_T", "example_2_2"),
        default=None,
        help=argparse.SUPPRESS,
    )
    c.set_defaults(func=cmd_verify_paper)
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
