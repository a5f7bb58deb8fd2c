import argparse
import textwrap

from amice_utils.amiceexceptions import ParseError
from amice_utils.config import RunConfig
from amice_utils.motzkin.motzkin import MotzkinFactors, decompose, factor_predicates, recompose
from amice_utils.read import parse_rho, read_json, read_series
from amice_utils.write import CommandResult


def _read_factors(path: str, config: RunConfig) -> MotzkinFactors:
    """ Factors written by ``motzkin decompose``, or a series to decompose on the spot """
    obj = read_json(path)
    if not isinstance(obj, dict):
        raise ParseError(f"{path} doesn't hold Motzkin factors or a series")
    if "a_minus" in obj:
        return MotzkinFactors.from_json(obj, config.prime, config.prec)
    return decompose(read_series(path, config))


def run_decompose(args: argparse.Namespace, config: RunConfig) -> CommandResult:
    factors = decompose(read_series(args.infile, config))
    rows = [{"iteration": k, "residual_exponent": None if e is None else str(e)}
            for k, e in enumerate(factors.residual_history, start=1)]
    return CommandResult(factors.to_json(), rows)


def run_recompose(args: argparse.Namespace, config: RunConfig) -> CommandResult:
    a = recompose(_read_factors(args.infile, config))
    return CommandResult(a.to_json(), [{"i": i, "coefficient": str(c)} for i, c in a.items()])


def run_predicates(args: argparse.Namespace, config: RunConfig) -> CommandResult:
    predicates = factor_predicates(_read_factors(args.infile, config), parse_rho(args.rho))
    rows = [{"side": c.side, "i": c.index, "value": str(c.value), "strict": c.strict, "weak": c.weak}
            for c in predicates.coefficients]
    return CommandResult(predicates.to_json(), rows)


def _description_text() -> str:
    return textwrap.dedent(
        """\
    Motzkin decomposition a = lambda T^N a^- a^+ of a unit of the Amice ring, with a^- in
    1 + T^-1 O[[T^-1]] and a^+ in 1 + T O[[T]].
    """
    )


def add_parser(subparsers, common: argparse.ArgumentParser):
    parser = subparsers.add_parser(
        "motzkin",
        help="Motzkin decomposition of units",
        description=_description_text(),
        formatter_class=argparse.RawDescriptionHelpFormatter,
    )
    verbs = parser.add_subparsers(dest="verb", required=True)

    decompose_parser = verbs.add_parser("decompose", parents=[common], help="Factor a unit")
    decompose_parser.add_argument("--in", dest="infile", required=True, help="<Required> Series JSON")
    decompose_parser.set_defaults(handler=run_decompose, command="motzkin decompose")

    recompose_parser = verbs.add_parser("recompose", parents=[common], help="lambda T^N a^- a^+")
    recompose_parser.add_argument("--in", dest="infile", required=True, help="<Required> Factors JSON")
    recompose_parser.set_defaults(handler=run_recompose, command="motzkin recompose")

    predicates_parser = verbs.add_parser("predicates", parents=[common],
                                         help="Coefficient bounds |alpha_i| rho^i against 1")
    predicates_parser.add_argument("--in", dest="infile", required=True, help="<Required> Factors or series JSON")
    predicates_parser.add_argument("--rho", dest="rho", help="<Optional> Exponent e of rho = |p|^e")
    predicates_parser.set_defaults(handler=run_predicates, command="motzkin predicates")
