import argparse
import textwrap

from amice_utils.amiceexceptions import UsageError
from amice_utils.config import RunConfig
from amice_utils.padic.padic import arith, norm
from amice_utils.read import parse_padic
from amice_utils.write import CommandResult

OPERATIONS = ["add", "sub", "mul", "div", "inv", "pow", "neg"]
UNARY = {"inv", "neg"}


def run_arith(args: argparse.Namespace, config: RunConfig) -> CommandResult:
    x = parse_padic(args.x, config)
    if args.op in UNARY:
        y = None
    elif args.y is None:
        raise UsageError(f"--op {args.op} needs --y")
    else:
        y = parse_padic(args.y, config)
    value = arith(args.op, x, y)
    return CommandResult({"op": args.op, "value": value.to_json(), "text": str(value)})


def run_norm(args: argparse.Namespace, config: RunConfig) -> CommandResult:
    x = parse_padic(args.x, config)
    value = norm(x)
    return CommandResult({"value": x.to_json(), "norm": value.to_json(), "text": str(value)})


def _description_text() -> str:
    return textwrap.dedent(
        """\
    Capped-precision p-adic arithmetic. Operands are integers or fractions num/den, read at
    the prime given by --p with --prec digits of relative precision. Values built from
    integers stay exact until their unit outgrows p^prec.
    """
    )


def _epilog_text() -> str:
    return textwrap.dedent(
        """\
    A result known to zero digits (an addition that cancelled everything it knew) is an
    error, as is the norm of such a value.
    """
    )


def add_parser(subparsers, common: argparse.ArgumentParser):
    parser = subparsers.add_parser(
        "padic",
        help="p-adic arithmetic and norms",
        description=_description_text(),
        epilog=_epilog_text(),
        formatter_class=argparse.RawDescriptionHelpFormatter,
    )
    verbs = parser.add_subparsers(dest="verb", required=True)

    arith_parser = verbs.add_parser("arith", parents=[common], help="Add, multiply, divide, invert or raise to a power")
    arith_parser.add_argument(
        "--op",
        dest="op",
        choices=OPERATIONS,
        required=True,
        help="<Required> Operation",
    )
    arith_parser.add_argument("--x", dest="x", required=True, help="<Required> First operand")
    arith_parser.add_argument(
        "--y",
        dest="y",
        help="<Optional> Second operand (an integer exponent for pow)",
    )
    arith_parser.set_defaults(handler=run_arith, command="padic arith")

    norm_parser = verbs.add_parser("norm", parents=[common], help="|x| = |p|^v(x)")
    norm_parser.add_argument("--x", dest="x", required=True, help="<Required> Value")
    norm_parser.set_defaults(handler=run_norm, command="padic norm")
