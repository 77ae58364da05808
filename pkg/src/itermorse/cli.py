"""Command line entry point.

Exit status is 0 on success, 1 for unreadable or invalid input and 2 when
an internal contract breaks, including a disagreement found by ``check``.
"""

from __future__ import annotations

import argparse
import json
import sys

import numpy as np

from . import io
from .complex import ChainComplex, ContractError, validate
from .generators import random_complex
from .homology import iterate_to_fixpoint
from .morse import FILTRATION_COMPATIBLE, MatchingPolicy
from .oracle import reduction_intervals
from .persistence import persistence_via_morse

EXIT_OK, EXIT_INPUT, EXIT_CONTRACT = 0, 1, 2


class _InputError(Exception):
    pass


def _load(args, check: bool = True) -> ChainComplex:
    fmt = args.format or io.infer_format(args.file)
    try:
        with open(args.file) as fh:
            text = fh.read()
    except OSError as exc:
        raise _InputError(f"{args.file}: {exc.strerror}") from None
    return io.parse(text, fmt, check=check)


def _fixpoint(complex, policy, args):
    fixpoint, trace = iterate_to_fixpoint(complex, policy)
    if args.trace:
        print(trace, file=sys.stderr)
    return fixpoint


def _pipeline(complex, args):
    return persistence_via_morse(_fixpoint(complex, MatchingPolicy(FILTRATION_COMPATIBLE), args))


def _emit_intervals(intervals, args) -> None:
    sys.stdout.write(io.intervals_json(intervals) + "\n" if args.json else io.format_intervals(intervals))


def cmd_validate(args) -> int:
    report = validate(_load(args, check=False))
    if args.json:
        print(json.dumps({"valid": report.ok, "violations": [str(v) for v in report.violations]}))
    else:
        print(report)
    return EXIT_OK if report else EXIT_INPUT


def cmd_homology(args) -> int:
    complex = _load(args)
    fixpoint = _fixpoint(complex, MatchingPolicy(), args)
    betti = [0] * (complex.top_dim + 1)
    for cell in fixpoint:
        betti[cell.dim] += 1
    sys.stdout.write(io.betti_json(betti) + "\n" if args.json else io.format_betti(betti))
    return EXIT_OK


def cmd_simplify(args) -> int:
    fixpoint = _fixpoint(_load(args), MatchingPolicy(FILTRATION_COMPATIBLE), args)
    sys.stdout.write(io.format_boundary(fixpoint))
    return EXIT_OK


def cmd_persist(args) -> int:
    _emit_intervals(_pipeline(_load(args), args), args)
    return EXIT_OK


def cmd_reduce(args) -> int:
    _emit_intervals(reduction_intervals(_load(args)), args)
    return EXIT_OK


def _diff(morse, oracle) -> list[str]:
    only_morse, only_oracle = morse.difference(oracle)
    return ([f"- {iv.dim} {io.format_value(iv.birth)} {io.format_value(iv.death)}   (reduction only)" for iv in only_oracle]
            + [f"+ {iv.dim} {io.format_value(iv.birth)} {io.format_value(iv.death)}   (morse only)" for iv in only_morse])


def cmd_check(args) -> int:
    if args.random is not None:
        return _check_random(args)
    if args.file is None:
        raise _InputError("check needs a file or --random N")
    complex = _load(args)
    morse = _pipeline(complex, args)
    oracle = reduction_intervals(complex)
    if morse != oracle:
        print("\n".join(_diff(morse, oracle)))
        return EXIT_CONTRACT
    _emit_intervals(morse, args)
    return EXIT_OK


def _check_random(args) -> int:
    rng = np.random.default_rng(args.seed)
    for k in range(args.random):
        complex = random_complex(rng)
        morse = persistence_via_morse(iterate_to_fixpoint(complex, MatchingPolicy(FILTRATION_COMPATIBLE))[0])
        oracle = reduction_intervals(complex)
        if morse != oracle:
            print(f"mismatch on random complex {k} (seed {args.seed}):")
            print(io.format_boundary(complex), end="")
            print("\n".join(_diff(morse, oracle)))
            return EXIT_CONTRACT
    print(f"{args.random} random complexes agree (seed {args.seed})")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="itermorse", description="Z2 homology and persistence by iterated Morse reduction.")
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=[io.BOUNDARY, io.SIMPLICIAL],
                        help="input format; inferred from .bnd or .smp when omitted")
    common.add_argument("--json", action="store_true", help="structured output")
    common.add_argument("--trace", action="store_true", help="print the iteration trace to stderr")
    common.add_argument("--seed", type=int, default=0, help="seed for randomized self-tests")
    sub = parser.add_subparsers(dest="command", required=True)
    for name, func, text in [
        ("validate", cmd_validate, "check face dimensions, monotonicity and dd = 0"),
        ("homology", cmd_homology, "print the Betti vector"),
        ("simplify", cmd_simplify, "print the filtration-compatible fixpoint in boundary format"),
        ("persist", cmd_persist, "persistence intervals through Morse reduction"),
        ("reduce", cmd_reduce, "persistence intervals through matrix reduction"),
        ("check", cmd_check, "run both interval pipelines and diff them"),
    ]:
        p = sub.add_parser(name, parents=[common], help=text)
        p.add_argument("file", nargs="?" if name == "check" else None)
        p.set_defaults(func=func)
        if name == "check":
            p.add_argument("--random", type=int, metavar="N",
                           help="check N seeded random complexes instead of a file")
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except ContractError as exc:
        print(f"contract violation: {exc}", file=sys.stderr)
        return EXIT_CONTRACT
    except (_InputError, ValueError, KeyError) as exc:
        msg = exc.args[0] if isinstance(exc, KeyError) and exc.args else exc
        print(f"invalid input: {msg}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
