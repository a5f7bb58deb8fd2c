import argparse
import textwrap

from amice_utils.amiceexceptions import UsageError
from amice_utils.config import RunConfig
from amice_utils.padic.normvalue import NormValue
from amice_utils.radius.operatorspec import OperatorKind
from amice_utils.read import parse_q, read_family, read_operator, read_series
from amice_utils.series.powerseries import Direction
from amice_utils.solvability.canonical import canonical_form, q_deform
from amice_utils.solvability.criterion import check, conv_window
from amice_utils.solvability.generate import artin_hasse, exp_decompose, generate
from amice_utils.write import CommandResult


def _decay_cut(config: RunConfig) -> NormValue:
    return NormValue.of(config.decay_cut)


def _coefficient_rows(series) -> list[dict]:
    return [{"i": i, "coefficient": str(c)} for i, c in series.items()]


def run_check(args: argparse.Namespace, config: RunConfig) -> CommandResult:
    op = read_operator(args.infile, config, args.kind, args.q)
    report = check(op, config.wittlen, _decay_cut(config))
    return CommandResult(report.to_json(), report.slot_rows(), report.verdict.exit_code)


def run_generate(args: argparse.Namespace, config: RunConfig) -> CommandResult:
    kind = OperatorKind.from_string(args.kind)
    if kind is OperatorKind.QDIFF and args.q is None:
        raise UsageError("--kind qdiff needs --q")
    family = read_family(args.family, config)
    op = generate(family, kind, parse_q(args.q, config), config.i_min, config.i_max)
    return CommandResult(op.to_json(), _coefficient_rows(op.series))


def run_canonical(args: argparse.Namespace, config: RunConfig) -> CommandResult:
    op = read_operator(args.infile, config, args.kind, args.q)
    form = canonical_form(op, config.wittlen, _decay_cut(config))
    return CommandResult(form.to_json(), _coefficient_rows(form.operator.series))


def run_qdeform(args: argparse.Namespace, config: RunConfig) -> CommandResult:
    op = read_operator(args.infile, config, "diff")
    deformed = q_deform(op, parse_q(args.q, config), config.wittlen, _decay_cut(config), strict=not args.force)
    return CommandResult(deformed.to_json(), _coefficient_rows(deformed.series))


def run_conv(args: argparse.Namespace, config: RunConfig) -> CommandResult:
    verdict = conv_window(read_family(args.family, config), _decay_cut(config))
    rows = [s.to_json() for s in verdict.strict_failures + verdict.decay_failures + verdict.indeterminate]
    return CommandResult(verdict.to_json(), rows)


def run_artin_hasse(args: argparse.Namespace, config: RunConfig) -> CommandResult:
    family = read_family(args.family, config)
    series = artin_hasse(family, args.degree, Direction.from_string(args.direction))
    return CommandResult(series.to_json(), _coefficient_rows(series))


def run_exp_decompose(args: argparse.Namespace, config: RunConfig) -> CommandResult:
    series = read_series(args.infile, config)
    b = {i: c for i, c in series.items() if i >= 1}
    family = exp_decompose(b, config.prime, args.degree, config.wittlen)
    rows = [{"n": n, "m": m, "lambda": str(c)} for n, v in family.entries.items() for m, c in enumerate(v)]
    return CommandResult(family.to_json(), rows)


def _description_text() -> str:
    return textwrap.dedent(
        """\
    Solvability at rho = 1 through Witt families. An operator is read off as a family
    (a0, lambda_n) and checked slot by slot: a0 in Z_p, N = 0 for q-difference operators,
    integral slots, strictly integral and decaying negative slots, nothing left over.
    """
    )


def _epilog_text() -> str:
    return textwrap.dedent(
        """\
    solvable check exits 0 on PASS-on-window, 1 on FAIL and 2 on INDETERMINATE. Families are
    JSON files {"a0": ..., "entries": [{"n": n, "witt": {"length": L, "components": [...]}}]}.
    """
    )


def _add_operator_arguments(parser: argparse.ArgumentParser):
    parser.add_argument("--in", dest="infile", required=True, help="<Required> Operator or series JSON")
    parser.add_argument("--kind", dest="kind", choices=["diff", "qdiff"],
                        help="<Optional> Operator kind, needed for a bare series")
    parser.add_argument("--q", dest="q", help="<Optional> q for a bare q-difference series")


def add_parser(subparsers, common: argparse.ArgumentParser):
    parser = subparsers.add_parser(
        "solvable",
        help="Solvability criterion, generators and canonical forms",
        description=_description_text(),
        epilog=_epilog_text(),
        formatter_class=argparse.RawDescriptionHelpFormatter,
    )
    verbs = parser.add_subparsers(dest="verb", required=True)

    check_parser = verbs.add_parser("check", parents=[common], help="Run the solvability criterion")
    _add_operator_arguments(check_parser)
    check_parser.set_defaults(handler=run_check, command="solvable check")

    generate_parser = verbs.add_parser("generate", parents=[common], help="Operator with a given Witt family")
    generate_parser.add_argument("--family", dest="family", required=True, help="<Required> Witt family JSON")
    generate_parser.add_argument("--kind", dest="kind", choices=["diff", "qdiff"], required=True,
                                 help="<Required> Operator kind")
    generate_parser.add_argument("--q", dest="q", help="<Optional> q, needed for --kind qdiff")
    generate_parser.set_defaults(handler=run_generate, command="solvable generate")

    canonical_parser = verbs.add_parser("canonical", parents=[common], help="Canonical form of a solvable operator")
    _add_operator_arguments(canonical_parser)
    canonical_parser.set_defaults(handler=run_canonical, command="solvable canonical")

    qdeform_parser = verbs.add_parser("qdeform", parents=[common],
                                      help="q-difference operator with the same Witt family")
    qdeform_parser.add_argument("--in", dest="infile", required=True,
                                help="<Required> Differential operator or series JSON")
    qdeform_parser.add_argument("--q", dest="q", required=True, help="<Required> q")
    qdeform_parser.add_argument(
        "--force",
        dest="force",
        action="store_true",
        help="<Optional> Deform even when the operator doesn't pass the criterion",
    )
    qdeform_parser.set_defaults(handler=run_qdeform, command="solvable qdeform")

    conv_parser = verbs.add_parser("conv", parents=[common], help="Strict integrality and decay of the negative family")
    conv_parser.add_argument("--family", dest="family", required=True, help="<Required> Witt family JSON")
    conv_parser.set_defaults(handler=run_conv, command="solvable conv")

    ah_parser = verbs.add_parser("artin-hasse", parents=[common], help="Expand E(sum lambda_n T^n, 1)")
    ah_parser.add_argument("--family", dest="family", required=True, help="<Required> Witt family JSON")
    ah_parser.add_argument("--degree", dest="degree", type=int, required=True, help="<Required> Expansion degree")
    ah_parser.add_argument("--direction", dest="direction", choices=["plus", "minus"], default="plus",
                           help="<Optional> Expand in T (plus) or T^-1 (minus)")
    ah_parser.set_defaults(handler=run_artin_hasse, command="solvable artin-hasse")

    exp_parser = verbs.add_parser("exp-decompose", parents=[common],
                                  help="Witt family of exp(sum b_d T^d / d)")
    exp_parser.add_argument("--in", dest="infile", required=True, help="<Required> Series JSON holding b_d")
    exp_parser.add_argument("--degree", dest="degree", type=int, help="<Optional> Largest d (default: the series')")
    exp_parser.set_defaults(handler=run_exp_decompose, command="solvable exp-decompose")
