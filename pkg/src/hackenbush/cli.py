"""Command-line front door.

Subcommands: outcome, grundy, value, twin, nimsum, verify.  Exit codes:
0 success (and agreement for --engine both), 1 disagreement, 2 bad input
or configuration.
"""

from __future__ import annotations

import argparse
import sys

from .classify import InvalidSpecError, evil_twin, sum_outcome
from .core import InvalidPositionError, Outcome, PlayConvention
from .dsl import ParseError, parse, print_doc, spec_to_doc
from .nimsum import lower, upper, xor
from .oracle import Solver

_USER_ERRORS = (ParseError, InvalidPositionError, InvalidSpecError, ValueError)


def _convention(name: str) -> PlayConvention:
    return PlayConvention.MISERE if name == "misere" else PlayConvention.NORMAL


def outcome_exit_code(classifier: Outcome, oracle: Outcome) -> int:
    """Exit-code contract for engine comparisons: 0 agree, 1 disagree."""
    return 0 if classifier is oracle else 1


def cmd_outcome(args) -> int:
    doc = parse(args.position)
    convention = _convention(args.convention)
    solver = Solver()
    oracle_result = classifier_result = None
    if args.engine in ("oracle", "both"):
        oracle_result = solver.outcome(doc.sum_position(), convention)
    if args.engine in ("classifier", "both"):
        spec = doc.to_spec(solver)
        if spec is None:
            print(
                "unsupported for the classifier engine "
                "(needs a sum of shrubs, flowers and stalks); use --engine oracle",
                file=sys.stderr,
            )
            return 2
        classifier_result = sum_outcome(spec, convention)
    if args.engine == "both":
        code = outcome_exit_code(classifier_result, oracle_result)
        print(f"{classifier_result.value} {'agree' if code == 0 else 'disagree'}")
        return code
    result = oracle_result if args.engine == "oracle" else classifier_result
    print(result.value)
    return 0


def cmd_grundy(args) -> int:
    doc = parse(args.position)
    solver = Solver()
    if args.convention == "misere":
        print(solver.grundy_misere(doc.sum_position()))
    else:
        print(solver.grundy_normal(doc.sum_position()))
    return 0


def cmd_value(args) -> int:
    doc = parse(args.position)
    print(Solver().redblue_value(doc.sum_position()))
    return 0


def cmd_twin(args) -> int:
    doc = parse(args.position)
    spec = doc.to_spec()
    if spec is None:
        print(
            "twin needs a sum of shrubs, flowers and stalks", file=sys.stderr
        )
        return 2
    print(print_doc(spec_to_doc(evil_twin(spec))))
    return 0


def cmd_nimsum(args) -> int:
    fn = {"xor": xor, "upper": upper, "lower": lower}[args.op]
    print(fn(args.m, args.n))
    return 0


def cmd_verify(args) -> int:
    from . import verify as verify_mod

    overrides = {}
    for item in args.bound or ():
        key, sep, value = item.partition("=")
        if not sep or not key:
            print(f"bad --bound {item!r}, expected KEY=VAL", file=sys.stderr)
            return 2
        try:
            overrides[key] = int(value)
        except ValueError:
            print(f"bad --bound value {value!r}, expected an integer", file=sys.stderr)
            return 2
    try:
        report = verify_mod.run_suite(args.suite, overrides, args.seed)
    except KeyError:
        print(
            f"unknown suite {args.suite!r}; choose from: "
            + ", ".join(sorted(verify_mod.SUITES)),
            file=sys.stderr,
        )
        return 2
    except ValueError as exc:
        print(str(exc), file=sys.stderr)
        return 2
    if args.report:
        with open(args.report, "w", encoding="utf-8") as stream:
            verify_mod.write_jsonl(report, stream)
    else:
        verify_mod.write_jsonl(report, sys.stdout)
    return 0 if report.failures == 0 else 1


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="hackenbush",
        description="Exact Hackenbush outcome solver and verification workbench.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add_position(p):
        p.add_argument(
            "position",
            nargs="?",
            default="",
            help="position in the DSL; empty for the zero game",
        )

    p = sub.add_parser("outcome", help="outcome class of a position")
    add_position(p)
    p.add_argument("--convention", choices=("normal", "misere"), default="normal")
    p.add_argument(
        "--engine", choices=("oracle", "classifier", "both"), default="oracle"
    )
    p.set_defaults(fn=cmd_outcome)

    p = sub.add_parser("grundy", help="nim-value of an all-green position")
    add_position(p)
    p.add_argument("--convention", choices=("normal", "misere"), default="normal")
    p.set_defaults(fn=cmd_grundy)

    p = sub.add_parser("value", help="dyadic value of a red-blue position")
    add_position(p)
    p.set_defaults(fn=cmd_value)

    p = sub.add_parser("twin", help="print the twin of a spec sum")
    add_position(p)
    p.set_defaults(fn=cmd_twin)

    p = sub.add_parser("nimsum", help="nim-sum operations")
    p.add_argument("op", choices=("xor", "upper", "lower"))
    p.add_argument("m", type=int)
    p.add_argument("n", type=int)
    p.set_defaults(fn=cmd_nimsum)

    p = sub.add_parser("verify", help="run a named verification suite")
    p.add_argument("suite")
    p.add_argument("--seed", type=int, default=None)
    p.add_argument("--report", help="write the JSON-lines report to this path")
    p.add_argument(
        "--bound",
        action="append",
        metavar="KEY=VAL",
        help="override a suite bound (repeatable)",
    )
    p.set_defaults(fn=cmd_verify)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.fn(args)
    except _USER_ERRORS as exc:
        print(str(exc), file=sys.stderr)
        return 2


def entry() -> None:
    sys.exit(main())


if __name__ == "__main__":
    entry()
