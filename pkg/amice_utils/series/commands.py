import argparse
import textwrap

from amice_utils.amiceexceptions import UsageError
from amice_utils.config import RunConfig
from amice_utils.padic.normvalue import NormValue
from amice_utils.padic.padic import PAdic
from amice_utils.read import parse_padic, parse_q, parse_rho, read_series
from amice_utils.series.laurentwindow import gauss_norm, tripartite
from amice_utils.series.operators import SeriesOperator, apply
from amice_utils.series.qparam import q_numerics
from amice_utils.write import CommandResult

QNUM_KINDS = ["q_factorial", "q_binomial", "q_power", "omega", "omega_q", "kappa"]


def run_norm(args: argparse.Namespace, config: RunConfig) -> CommandResult:
    f = read_series(args.infile, config)
    rho = parse_rho(args.rho)
    value = gauss_norm(f, rho)
    return CommandResult({"rho": rho.to_json(), "norm": value.to_json(), "text": str(value)})


def run_tripartite(args: argparse.Namespace, config: RunConfig) -> CommandResult:
    g_minus, a0, g_plus = tripartite(read_series(args.infile, config))
    return CommandResult({"g_minus": g_minus.to_json(), "a0": a0.to_json(), "g_plus": g_plus.to_json()})


def run_apply(args: argparse.Namespace, config: RunConfig) -> CommandResult:
    op = SeriesOperator.from_string(args.op)
    if op.needs_q and args.q is None:
        raise UsageError(f"{op} needs --q")
    f = read_series(args.infile, config)
    result = apply(op, f, parse_q(args.q, config) if op.needs_q else None)
    rows = [{"i": i, "coefficient": str(c)} for i, c in result.items()]
    return CommandResult(result.to_json(), rows)


def run_qnum(args: argparse.Namespace, config: RunConfig) -> CommandResult:
    q = parse_q(args.q, config)
    if q is None and args.kind != "omega":
        raise UsageError(f"{args.kind} needs --q")
    if args.kind in ("q_factorial", "q_binomial") and args.n is None:
        raise UsageError(f"{args.kind} needs --n")
    if args.kind == "q_binomial" and args.j is None:
        raise UsageError("q_binomial needs --j")
    if args.kind == "q_power" and args.alpha is None:
        raise UsageError("q_power needs --alpha")
    alpha = None if args.alpha is None else parse_padic(args.alpha, config)
    value = q_numerics(args.kind, q, n=args.n, j=args.j, alpha=alpha, terms=args.terms, prime=config.prime)
    if isinstance(value, (PAdic, NormValue)):
        return CommandResult({"kind": args.kind, "value": value.to_json(), "text": str(value)})
    return CommandResult({"kind": args.kind, "value": value})


def _description_text() -> str:
    return textwrap.dedent(
        """\
    Laurent windows: finitely supported Laurent series standing for elements of the Amice
    ring. Series files look like {"prime": p, "coeffs": [[i, a_i], ...], "i_min": ...,
    "i_max": ..., "norm_faithful": true}.
    """
    )


def _epilog_text() -> str:
    return textwrap.dedent(
        """\
    rho is always given by its exponent e, rho = |p|^e; the default is rho = 1. q is read
    like any p-adic value and must satisfy 0 < |q - 1| < 1.
    """
    )


def add_parser(subparsers, common: argparse.ArgumentParser):
    parser = subparsers.add_parser(
        "series",
        help="Laurent windows, Gauss norms, operators and q-numerics",
        description=_description_text(),
        epilog=_epilog_text(),
        formatter_class=argparse.RawDescriptionHelpFormatter,
    )
    verbs = parser.add_subparsers(dest="verb", required=True)

    norm_parser = verbs.add_parser("norm", parents=[common], help="Gauss norm |f|_rho")
    norm_parser.add_argument("--in", dest="infile", required=True, help="<Required> Series JSON")
    norm_parser.add_argument("--rho", dest="rho", help="<Optional> Exponent e of rho = |p|^e")
    norm_parser.set_defaults(handler=run_norm, command="series norm")

    tri_parser = verbs.add_parser("tripartite", parents=[common], help="Split f = g^- + a_0 + g^+")
    tri_parser.add_argument("--in", dest="infile", required=True, help="<Required> Series JSON")
    tri_parser.set_defaults(handler=run_tripartite, command="series tripartite")

    apply_parser = verbs.add_parser("apply", parents=[common], help="Apply d/dT, T d/dT, sigma_q, d_q or Delta_q")
    apply_parser.add_argument("--op", dest="op", choices=[str(op) for op in SeriesOperator], required=True,
                              help="<Required> Operator")
    apply_parser.add_argument("--in", dest="infile", required=True, help="<Required> Series JSON")
    apply_parser.add_argument("--q", dest="q", help="<Optional> q, needed by sigma_q, d_q and delta_q")
    apply_parser.set_defaults(handler=run_apply, command="series apply")

    qnum_parser = verbs.add_parser("qnum", parents=[common], help="q-factorials, q-binomials, q^alpha, omega_q")
    qnum_parser.add_argument("--kind", dest="kind", choices=QNUM_KINDS, required=True, help="<Required> Quantity")
    qnum_parser.add_argument("--q", dest="q", help="<Optional> q")
    qnum_parser.add_argument("--n", dest="n", type=int, help="<Optional> n for [n]_q! and binom(n, j)_q")
    qnum_parser.add_argument("--j", dest="j", type=int, help="<Optional> j for binom(n, j)_q")
    qnum_parser.add_argument("--alpha", dest="alpha", help="<Optional> Exponent alpha for q^alpha")
    qnum_parser.add_argument("--terms", dest="terms", type=int,
                             help="<Optional> Binomial series terms for q^alpha (default: enough for --prec)")
    qnum_parser.set_defaults(handler=run_qnum, command="series qnum")
