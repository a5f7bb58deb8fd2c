import argparse
import textwrap

from amice_utils.amiceexceptions import IndeterminateValuation, ParseError
from amice_utils.config import RunConfig
from amice_utils.read import read_json, read_operator
from amice_utils.solvability.extract import extract
from amice_utils.witt.wittvector import PhantomVector, WittVector, ghost, slot_integrality, unghost, witt_ring
from amice_utils.write import CommandResult


def _read_vector(path: str, config: RunConfig) -> WittVector:
    obj = read_json(path)
    if not isinstance(obj, dict):
        raise ParseError(f"{path} doesn't hold a Witt vector")
    return WittVector.from_json(obj, config.prime, config.prec)


def run_ghost(args: argparse.Namespace, config: RunConfig) -> CommandResult:
    phantom = ghost(_read_vector(args.infile, config), args.length)
    return CommandResult(phantom.to_json())


def run_unghost(args: argparse.Namespace, config: RunConfig) -> CommandResult:
    obj = read_json(args.infile)
    if not isinstance(obj, dict):
        raise ParseError(f"{args.infile} doesn't hold a phantom vector")
    return CommandResult(unghost(PhantomVector.from_json(obj, config.prime, config.prec)).to_json())


def run_ring(args: argparse.Namespace, config: RunConfig) -> CommandResult:
    x = _read_vector(args.x, config)
    y = _read_vector(args.y, config)
    return CommandResult(witt_ring(args.op, x, y).to_json())


def run_integrality(args: argparse.Namespace, config: RunConfig) -> CommandResult:
    vector = _read_vector(args.infile, config)
    rows = []
    for m, c in enumerate(vector):
        try:
            verdict = str(slot_integrality(c, args.strict))
        except IndeterminateValuation:
            verdict = "indeterminate"
        rows.append({"m": m, "component": str(c), "verdict": verdict})
    return CommandResult({"strict": args.strict, "slots": rows}, rows)


def run_extract(args: argparse.Namespace, config: RunConfig) -> CommandResult:
    op = read_operator(args.infile, config, args.kind, args.q)
    extraction = extract(op, config.wittlen, strict_log=not args.formal_log)
    result = extraction.family.to_json()
    result.update(overflow=extraction.overflow, residual=extraction.residual, log_domain=extraction.log_domain)
    rows = [{"n": n, "m": m, "lambda": str(c)} for n, v in extraction.family.entries.items() for m, c in enumerate(v)]
    return CommandResult(result, rows)


def _description_text() -> str:
    return textwrap.dedent(
        """\
    p-typical Witt vectors. Vectors are JSON files {"length": L, "components": [...]}, phantom
    vectors {"length": L, "phantom": [...]}; components are p-adic numbers as integers,
    "num/den" strings or {"v", "unit", "prec"} objects.
    """
    )


def _epilog_text() -> str:
    return textwrap.dedent(
        """\
    witt extract reads the Witt family off an operator file, and its output can be fed to
    solvable generate.
    """
    )


def add_parser(subparsers, common: argparse.ArgumentParser):
    parser = subparsers.add_parser(
        "witt",
        help="Witt vectors, ghost maps and extraction",
        description=_description_text(),
        epilog=_epilog_text(),
        formatter_class=argparse.RawDescriptionHelpFormatter,
    )
    verbs = parser.add_subparsers(dest="verb", required=True)

    ghost_parser = verbs.add_parser("ghost", parents=[common], help="Phantom components of a Witt vector")
    ghost_parser.add_argument("--in", dest="infile", required=True, help="<Required> Witt vector JSON")
    ghost_parser.add_argument(
        "--length",
        dest="length",
        type=int,
        help="<Optional> Number of phantom components (pads with zeros)",
    )
    ghost_parser.set_defaults(handler=run_ghost, command="witt ghost")

    unghost_parser = verbs.add_parser("unghost", parents=[common], help="Witt vector from phantom components")
    unghost_parser.add_argument("--in", dest="infile", required=True, help="<Required> Phantom vector JSON")
    unghost_parser.set_defaults(handler=run_unghost, command="witt unghost")

    ring_parser = verbs.add_parser("ring", parents=[common], help="Witt vector sum, difference or product")
    ring_parser.add_argument("--op", dest="op", choices=["add", "sub", "mul"], required=True,
                             help="<Required> Operation")
    ring_parser.add_argument("--x", dest="x", required=True, help="<Required> First Witt vector JSON")
    ring_parser.add_argument("--y", dest="y", required=True, help="<Required> Second Witt vector JSON")
    ring_parser.set_defaults(handler=run_ring, command="witt ring")

    integrality_parser = verbs.add_parser("integrality", parents=[common], help="Per-slot integrality")
    integrality_parser.add_argument("--in", dest="infile", required=True, help="<Required> Witt vector JSON")
    integrality_parser.add_argument(
        "--strict",
        dest="strict",
        action="store_true",
        help="<Optional> Test |lambda_m| < 1 instead of |lambda_m| <= 1",
    )
    integrality_parser.set_defaults(handler=run_integrality, command="witt integrality")

    extract_parser = verbs.add_parser("extract", parents=[common], help="Witt family of an operator")
    extract_parser.add_argument("--in", dest="infile", required=True, help="<Required> Operator or series JSON")
    extract_parser.add_argument("--kind", dest="kind", choices=["diff", "qdiff"],
                                help="<Optional> Operator kind, needed for a bare series")
    extract_parser.add_argument("--q", dest="q", help="<Optional> q for a bare q-difference series")
    extract_parser.add_argument(
        "--formal-log",
        dest="formal_log",
        action="store_true",
        help="<Optional> Take logarithms of the Motzkin factors even outside |a - 1| < omega",
    )
    extract_parser.set_defaults(handler=run_extract, command="witt extract")
