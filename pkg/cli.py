"""
Command-line frontend for the weight toolkit.

Every subcommand prints plain text on stdout, one record per line, and
reports through its exit code: 0 on success, 1 when a law fails or a
counterexample is found, 2 on usage or input errors. Logs go to stderr.
"""

import argparse
import logging
import os
import sys
from fractions import Fraction
from pathlib import Path
from typing import Dict, List, Optional

from dotenv import find_dotenv, load_dotenv

# Library modules read their settings at import time
load_dotenv(find_dotenv(usecwd=True))

import impedance as imp  # noqa: E402
import law_suites  # noqa: E402
import linlog  # noqa: E402
import wcat  # noqa: E402
import weight_core as wc  # noqa: E402
import wset as ws  # noqa: E402
from weight_core import KINDS, Weight, WeightError  # noqa: E402

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_FAILED = 1
EXIT_USAGE = 2

GRAMMARS = """\
weight literals:  inf | <n> | <n>/<d> | <n>.<digits> (at most 9 decimals)

formulas (tightest first):
  A^          dual
  A * B       tensor          A @ B     par
  A & B       with            A (+) B   plus
  A -o B      lollipop (right associative)
  1  bot  top  0              constants; other identifiers are atoms

weighted set file:  <id> <weight>            per line, '#' starts a comment line
map file:           <src-id> -> <dst-id>     per line
graph file:         <src> <dst> <weight>     per line, or a lone <id>
network file:       JSON, {"series": [...]} {"parallel": [...]} {"R": "3/2"} {"L": "1"} {"C": "1/4"}
"""


def setup_logging():
    """Configure root logging on stderr; stdout carries results only"""
    log_level = os.getenv("LOG_LEVEL", "WARNING").upper()

    logging.basicConfig(
        level=getattr(logging, log_level, logging.WARNING),
        format='%(asctime)s - %(name)s - %(levelname)s - %(message)s',
        handlers=[
            logging.StreamHandler(sys.stderr)
        ]
    )


def _read(path: str) -> str:
    return Path(path).read_text(encoding="utf-8")


def _bindings(items: List[str]) -> Dict[str, Weight]:
    env = {}
    for item in items:
        name, sep, literal = item.partition("=")
        if not sep or not name:
            raise WeightError(f"Bindings look like name=weight, got {item!r}")
        env[name.strip()] = wc.parse_weight(literal.strip())
    return env


def _rational(text: str) -> Fraction:
    try:
        return Fraction(text.strip())
    except (ValueError, ZeroDivisionError) as e:
        raise WeightError(f"Not a rational literal: {text!r}") from e


# Subcommands

def cmd_eval(args) -> int:
    formula = linlog.parse(args.expr)
    env = _bindings(args.bindings)
    if args.check_valid:
        result = linlog.valid(formula, linlog.grid_environments(formula, env))
        print(result.describe())
        return EXIT_OK if result.valid else EXIT_FAILED
    print(linlog.evaluate(formula, env))
    return EXIT_OK


def cmd_laws(args) -> int:
    results = law_suites.run_suite(args.suite, samples=args.samples, seed=args.seed)
    sys.stdout.write(law_suites.format_results(results))
    return EXIT_OK if all(r.ok for r in results) else EXIT_FAILED


def cmd_wset(args) -> int:
    x = ws.parse_wset(_read(args.file))
    if args.ball is not None:
        sys.stdout.write(ws.format_wset(ws.subset(x, ws.ball(x, wc.parse_weight(args.ball)))))
    elif args.map is not None:
        if args.target is None:
            raise WeightError("--map needs --target")
        target = ws.parse_wset(_read(args.target))
        h = ws.parse_wmap(_read(args.map), x, target)
        print(ws.map_weight(h, args.kind))
    elif args.tensor is not None:
        y = ws.parse_wset(_read(args.tensor))
        sys.stdout.write(ws.format_wset(ws.tensor(x, y, args.kind)))
    else:
        sys.stdout.write(ws.format_wset(x))
    return EXIT_OK


def cmd_closure(args) -> int:
    graph = wcat.parse_graph(_read(args.file))
    sys.stdout.write(wcat.best_cost(graph, args.kind).format_tsv())
    return EXIT_OK


def cmd_impedance(args) -> int:
    net = imp.parse_network_json(_read(args.file))
    z = imp.reduce_network(net, _rational(args.omega))
    print(imp.format_exact(z))
    print(imp.format_approx(z))
    return EXIT_OK


def cmd_transform(args) -> int:
    if args.back is not None:
        if args.weight is not None:
            raise WeightError("Give either a weight or --back, not both")
        approx = wc.transform_back(wc.FloatWeight(float(args.back), args.source))
        print(f"{approx.value!r}\tinexact")
        return EXIT_OK
    if args.weight is None:
        raise WeightError("transform needs a weight or --back VALUE")
    print(repr(wc.transform(wc.parse_weight(args.weight), args.to).value))
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="cli.py",
        description="Exact weight algebra: evaluation, law suites, weighted sets, closure and impedances.",
        epilog=GRAMMARS,
        formatter_class=argparse.RawDescriptionHelpFormatter,
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("eval", help="evaluate a formula in the weights")
    p.add_argument("expr")
    p.add_argument("bindings", nargs="*", metavar="name=weight")
    p.add_argument("--check-valid", action="store_true",
                   help="check value <= 1 with unbound atoms ranging over the test grid")
    p.set_defaults(handler=cmd_eval)

    p = sub.add_parser("laws", help="run a law suite")
    p.add_argument("suite", choices=sorted(law_suites.SUITES) + ["all"])
    p.add_argument("--samples", type=int, default=law_suites.DEFAULT_SAMPLES)
    p.add_argument("--seed", type=int, default=law_suites.DEFAULT_SEED)
    p.set_defaults(handler=cmd_laws)

    p = sub.add_parser("wset", help="inspect a weighted set file")
    p.add_argument("file")
    p.add_argument("--ball", metavar="W", help="elements of weight at most W")
    p.add_argument("--map", metavar="MAPFILE", help="weight of a map into --target")
    p.add_argument("--target", metavar="FILE")
    p.add_argument("--tensor", metavar="FILE", help="tensor product with another weighted set")
    p.add_argument("--kind", choices=[wc.ADDITIVE, wc.MULTIPLICATIVE], default=wc.ADDITIVE)
    p.set_defaults(handler=cmd_wset)

    p = sub.add_parser("closure", help="cheapest-path matrix of a weighted graph")
    p.add_argument("file")
    p.add_argument("--kind", choices=list(KINDS), default=wc.ADDITIVE)
    p.set_defaults(handler=cmd_closure)

    p = sub.add_parser("impedance", help="reduce a series-parallel RLC network")
    p.add_argument("file")
    p.add_argument("--omega", required=True, metavar="Q", help="angular frequency as an exact rational")
    p.set_defaults(handler=cmd_impedance)

    p = sub.add_parser("transform", help="probabilistic and relative transforms")
    p.add_argument("weight", nargs="?")
    p.add_argument("--to", choices=[wc.PROBABILISTIC, wc.RELATIVE], default=wc.PROBABILISTIC)
    p.add_argument("--back", metavar="VALUE", help="transform a float back (use --back=-inf for negatives)")
    p.add_argument("--from", dest="source", choices=[wc.PROBABILISTIC, wc.RELATIVE], default=wc.PROBABILISTIC)
    p.set_defaults(handler=cmd_transform)

    return parser


def main(argv: Optional[List[str]] = None) -> int:
    setup_logging()
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return EXIT_USAGE if e.code not in (0, None) else EXIT_OK

    try:
        return args.handler(args)
    except (WeightError, OSError, ValueError) as e:
        logger.debug(f"{args.command} failed: {e!r}")
        print(f"error: {e}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
