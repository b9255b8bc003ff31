"""Command line front end.

Exit codes: 0 success, 1 parse error, 2 validation error, 3 word-tree cap
exceeded, 4 internal invariant violation. ``verify`` exits 5 when the two
automata differ, after printing the witness.
"""
from __future__ import annotations

import argparse
import csv
import json
import sys

from . import io
from .automaton import behavior, k_equivalent
from .bench import CSV_HEADER, run_bench
from .errors import LatredError
from .lattice import LatticeKind, LatticeSpec
from .reduction import MethodTag, reduce

EXIT_OK = 0
EXIT_PARSE = 1
EXIT_VALIDATION = 2
EXIT_CAP = 3
EXIT_INTERNAL = 4
EXIT_DIFFER = 5


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_PARSE, f"{self.prog}: error: {message}\n")


def _int_list(text: str) -> list[int]:
    try:
        return [int(part) for part in text.split(",") if part.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma separated integers, got {text!r}") from None


def _flatten(groups):
    return [v for group in groups for v in group]


def _word_text(word) -> str:
    return " ".join(word) if word else "<empty>"


def cmd_reduce(args) -> int:
    A = io.load_automaton(args.input)
    reduced, report = reduce(A, args.method, args.k, factorize=args.factorize)
    verified_to = counterexample = None
    if args.verify_to is not None:
        verified_to = args.verify_to
        counterexample = io.witness_to_dict(k_equivalent(A, reduced, args.verify_to))
    text = io.dump_automaton(reduced)
    if args.output:
        with open(args.output, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    report_text = json.dumps(io.report_to_dict(report, verified_to, counterexample), indent=2) + "\n"
    if args.report:
        with open(args.report, "w") as fh:
            fh.write(report_text)
    else:
        sys.stderr.write(report_text)
    return EXIT_OK


def cmd_verify(args) -> int:
    A = io.load_automaton(args.a)
    B = io.load_automaton(args.b)
    check = k_equivalent(A, B, args.k)
    if check.equal:
        print(f"equal: behaviors agree on all {check.words_checked} words of length <= {args.k}")
        return EXIT_OK
    print(f"differ: word {_word_text(check.witness)}  a={check.value_a!r}  b={check.value_b!r}")
    return EXIT_DIFFER


def cmd_bench(args) -> int:
    lattice = LatticeSpec.of(args.lattice)
    rows = run_bench(_flatten(args.sizes), args.letters, _flatten(args.k), args.method, lattice, args.seed, args.repeat)
    writer = csv.writer(sys.stdout, lineterminator="\n")
    writer.writerow(CSV_HEADER)
    for row in rows:
        writer.writerow(row.as_tuple())
    return EXIT_OK


def cmd_behavior(args) -> int:
    A = io.load_automaton(args.input)
    for word in args.words:
        u = tuple(word.split()) if " " in word else tuple(word)
        print(f"{_word_text(u)}\t{behavior(A, u)!r}")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="latred", description="Exact and k-equivalent state reduction of fuzzy automata.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("reduce", help="k-reduce an automaton")
    p.add_argument("input")
    p.add_argument("--method", required=True, choices=[t.value for t in MethodTag])
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--factorize", action="store_true", help="shrink further by greedy r-factorization")
    p.add_argument("--verify-to", type=int, dest="verify_to", help="also compare on all words up to this length")
    p.add_argument("--output", help="reduced automaton (default: stdout)")
    p.add_argument("--report", help="report document (default: stderr)")
    p.set_defaults(func=cmd_reduce)

    p = sub.add_parser("verify", help="check k-equivalence of two automata")
    p.add_argument("a")
    p.add_argument("b")
    p.add_argument("--k", type=int, required=True)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("bench", help="time reductions of random automata (CSV on stdout)")
    p.add_argument("--sizes", type=_int_list, nargs="+", required=True)
    p.add_argument("--letters", type=int, default=2)
    p.add_argument("--k", type=_int_list, nargs="+", required=True)
    p.add_argument("--method", choices=[t.value for t in MethodTag], default="ri")
    p.add_argument("--lattice", choices=[k.value for k in LatticeKind], default="godel")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--repeat", type=int, default=3)
    p.set_defaults(func=cmd_bench)

    p = sub.add_parser("behavior", help="print the behavior of an automaton on words")
    p.add_argument("input")
    p.add_argument("words", nargs="*", default=[""])
    p.set_defaults(func=cmd_behavior)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except LatredError as exc:
        print(f"latred: {type(exc).__name__}: {exc}", file=sys.stderr)
        return exc.exit_code
    except ValueError as exc:
        print(f"latred: {exc}", file=sys.stderr)
        return EXIT_VALIDATION


if __name__ == "__main__":
    sys.exit(main())
