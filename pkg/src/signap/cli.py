"""Command-line interface.

Exit codes: 0 success, 1 input/IO problems, 2 a negative mathematical
verdict, 3 a broken internal invariant or numerical breakdown.
"""
from __future__ import annotations

import argparse
import json
import sys

import numpy as np

from .errors import (EngineInvariantBroken, InputError, NumericalFailure,
                     VerdictError)
from .oracle import DEFAULT_GRID, conjecture_probe
from .pattern import (matrix_from_doc, parse_pattern, plus_and_reversed_minus,
                      positive_part)
from .realizer import (realize, sufficient_condition_failure,
                       sufficient_condition_holds)
from .spectral import verify_algebraic_positivity
from .structure import (ap_irreducibility_failure, digraph_of,
                        irreducible_components, is_ap_irreducible,
                        is_minimally_ap_irreducible, is_strongly_connected)

EXIT_OK, EXIT_INPUT, EXIT_VERDICT, EXIT_ENGINE = 0, 1, 2, 3


def _read_text(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    try:
        with open(path, encoding="utf-8") as fh:
            return fh.read()
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc.strerror}") from None


def _read_pattern(path: str):
    return parse_pattern(_read_text(path))


def _read_matrix(path: str) -> np.ndarray:
    try:
        doc = json.loads(_read_text(path))
    except json.JSONDecodeError as exc:
        raise InputError(f"{path} is not valid JSON: {exc}") from None
    if isinstance(doc, dict) and isinstance(doc.get("matrix"), dict):
        doc = doc["matrix"]
    if not isinstance(doc, dict):
        raise InputError("expected a matrix document with 'n' and 'rows'")
    return matrix_from_doc(doc)


def _yes(flag: bool) -> str:
    return "yes" if flag else "no"


def cmd_check(args, out) -> int:
    A = _read_pattern(args.file)
    parts = irreducible_components(positive_part(A))
    holds = sufficient_condition_holds(A)
    lines = [
        f"order: {A.n}",
        f"irreducible: {_yes(is_strongly_connected(digraph_of(A)))}",
        f"AP-irreducible: {_yes(is_ap_irreducible(A))}",
        f"minimally AP-irreducible: {_yes(is_minimally_ap_irreducible(A))}",
        "components of + part: " + " ".join("{" + ",".join(str(x + 1) for x in p) + "}" for p in parts),
        f"+ part with reversed - part irreducible: "
        f"{_yes(is_strongly_connected(digraph_of(plus_and_reversed_minus(A))))}",
        f"sufficient condition: {_yes(holds)}",
    ]
    if not holds:
        lines.append(f"reason: {sufficient_condition_failure(A)}")
        if ap_irreducibility_failure(A) is not None:
            lines.append("note: AP-irreducibility of A or -A is necessary for algebraic positivity")
        if sufficient_condition_holds(-A):
            lines.append("note: -A satisfies the sufficient condition")
    out.write("\n".join(lines) + "\n")
    return EXIT_OK if holds else EXIT_VERDICT


def cmd_realize(args, out) -> int:
    R = realize(_read_pattern(args.file))
    text = json.dumps(R.to_doc(), indent=2) + "\n"
    if args.out == "-":
        out.write(text)
    else:
        try:
            with open(args.out, "w", encoding="utf-8") as fh:
                fh.write(text)
        except OSError as exc:
            raise InputError(f"cannot write {args.out}: {exc.strerror}") from None
    return EXIT_OK


def cmd_verify(args, out) -> int:
    M = _read_matrix(args.doc)
    verdict, _ = verify_algebraic_positivity(M)
    out.write(json.dumps(verdict.to_doc(), indent=2) + "\n")
    return EXIT_OK if verdict.positive else EXIT_VERDICT


def cmd_witness(args, out) -> int:
    M = _read_matrix(args.doc)
    verdict, poly = verify_algebraic_positivity(M)
    if not verdict.positive:
        out.write(json.dumps({"positive": False, "reason": verdict.reason}, indent=2) + "\n")
        return EXIT_VERDICT
    doc = {"positive": True, "coefficients": list(poly.to_doc()["coefficients"]),
           "min_entry": float(np.min(poly.evaluate(M)))}
    out.write(json.dumps(doc, indent=2) + "\n")
    return EXIT_OK


def cmd_trace(args, out) -> int:
    R = realize(_read_pattern(args.file))
    out.write(R.trace.to_text())
    return EXIT_OK


def _parse_grid(text: str) -> tuple[float, ...]:
    try:
        grid = tuple(float(x) for x in text.split(",") if x.strip())
    except ValueError:
        raise InputError(f"grid must be comma-separated numbers, got {text!r}") from None
    if not grid or min(grid) <= 0:
        raise InputError("grid values must be positive")
    return grid


def cmd_oracle(args, out) -> int:
    if args.n not in (1, 2, 3):
        raise InputError("--n must be 1, 2 or 3")
    if args.budget < 1:
        raise InputError("--budget must be at least 1")
    summary = conjecture_probe(args.n, args.budget, _parse_grid(args.grid), args.seed)
    if args.format == "json":
        out.write(json.dumps(summary.to_doc(), indent=2) + "\n")
    else:
        out.write(summary.to_tsv())
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="signap",
                                     description="Sign pattern algebraic positivity toolkit")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("check", help="structural report and sufficient-condition verdict")
    p.add_argument("file")
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("realize", help="certified realization document")
    p.add_argument("file")
    p.add_argument("--out", default="-", help="output path, '-' for standard output")
    p.set_defaults(func=cmd_realize)

    p = sub.add_parser("verify", help="eigen certificate of a matrix document")
    p.add_argument("doc")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("witness", help="witness polynomial of a matrix document")
    p.add_argument("doc")
    p.set_defaults(func=cmd_witness)

    p = sub.add_parser("trace", help="human-readable construction steps")
    p.add_argument("file")
    p.set_defaults(func=cmd_trace)

    p = sub.add_parser("oracle", help="exhaustive probe over small orders")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--budget", type=int, default=2000)
    p.add_argument("--grid", default=",".join(str(g) for g in DEFAULT_GRID))
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--format", choices=("tsv", "json"), default="tsv")
    p.set_defaults(func=cmd_oracle)
    return parser


def run(argv=None, out=None, err=None) -> int:
    out = sys.stdout if out is None else out
    err = sys.stderr if err is None else err
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_INPUT if exc.code else EXIT_OK
    try:
        return args.func(args, out)
    except InputError as exc:
        err.write(f"error: {exc}\n")
        return EXIT_INPUT
    except VerdictError as exc:
        err.write(f"verdict: {exc}\n")
        return EXIT_VERDICT
    except (EngineInvariantBroken, NumericalFailure) as exc:
        err.write(f"internal failure: {exc}\n")
        return EXIT_ENGINE


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
