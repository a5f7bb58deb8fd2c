import argparse
import textwrap

from amice_utils.config import RunConfig
from amice_utils.padic.normvalue import NormValue
from amice_utils.read import parse_padic, parse_q, parse_rho, read_operator
from amice_utils.radius.iterates import iterates
from amice_utils.radius.radius import constant_qdiff_profile, loglog_rows, ray_table, sharp_test
from amice_utils.series.laurentwindow import gauss_norm
from amice_utils.write import CommandResult


def _operator(args: argparse.Namespace, config: RunConfig):
    return read_operator(args.infile, config, args.kind, args.q)


def run_estimate(args: argparse.Namespace, config: RunConfig) -> CommandResult:
    op = _operator(args, config)
    rhos = [parse_rho(r) for r in args.rho] if args.rho else [NormValue.one()]
    reports = ray_table(op, rhos, k_max=config.k_max, s_max=config.s_max, budget=config.coefficient_budget)
    rows = loglog_rows(reports)
    return CommandResult({"operator": str(op), "reports": [r.to_json() for r in reports], "loglog": rows}, rows)


def run_sharp(args: argparse.Namespace, config: RunConfig) -> CommandResult:
    op = _operator(args, config)
    result = sharp_test(op, config.s_max, config.coefficient_budget)
    rows = [{"s": s, "norm": str(n)} for s, n in enumerate(result.norms, start=1)]
    return CommandResult(result.to_json(), rows)


def run_profile(args: argparse.Namespace, config: RunConfig) -> CommandResult:
    lam = parse_padic(args.lam, config)
    q = parse_q(args.q, config)
    profile = constant_qdiff_profile(lam, q, args.n_max)
    rows = [{"n": n, "value": str(v), "exponent": None if v.is_zero else str(v.exponent)}
            for n, v in enumerate(profile, start=1)]
    return CommandResult({"lambda": lam.to_json(), "q": q.to_json(), "profile": [v.to_json() for v in profile]},
                         rows)


def run_iterates(args: argparse.Namespace, config: RunConfig) -> CommandResult:
    op = _operator(args, config)
    windows = iterates(op, config.k_max, config.coefficient_budget)
    rows = [
        {"k": k, "i_min": g.i_min, "i_max": g.i_max, "norm": str(gauss_norm(g)), "truncated": g.truncated}
        for k, g in enumerate(windows, start=1)
    ]
    return CommandResult({"operator": str(op), "iterates": [g.to_json() for g in windows]}, rows)


def _description_text() -> str:
    return textwrap.dedent(
        """\
    Radius of convergence of solutions at a Gauss point rho, estimated from the iterates
    g_[1] .. g_[kmax]. A value is reported as exact only when a closed form applies
    (ByConstruction, SmallRadius or SharpTest); otherwise it is an estimate.
    """
    )


def _epilog_text() -> str:
    return textwrap.dedent(
        """\
    Operators are JSON files {"kind": "diff", "g": series} or {"kind": "qdiff", "q": q,
    "a": series}. A bare series file works too when --kind (and --q) are given.
    """
    )


def _add_operator_arguments(parser: argparse.ArgumentParser):
    parser.add_argument("--in", dest="infile", required=True, help="<Required> Operator or series JSON")
    parser.add_argument("--kind", dest="kind", choices=["diff", "qdiff"],
                        help="<Optional> Operator kind, needed for a bare series")
    parser.add_argument("--q", dest="q", help="<Optional> q for a bare q-difference series")


def add_parser(subparsers, common: argparse.ArgumentParser):
    parser = subparsers.add_parser(
        "radius",
        help="Radius of convergence estimates and certificates",
        description=_description_text(),
        epilog=_epilog_text(),
        formatter_class=argparse.RawDescriptionHelpFormatter,
    )
    verbs = parser.add_subparsers(dest="verb", required=True)

    estimate_parser = verbs.add_parser("estimate", parents=[common], help="Ray(L, rho) for one or more rho")
    _add_operator_arguments(estimate_parser)
    estimate_parser.add_argument(
        "--rho",
        dest="rho",
        action="append",
        help="<Optional> Exponent e of rho = |p|^e, repeat for a table (default: rho = 1)",
    )
    estimate_parser.set_defaults(handler=run_estimate, command="radius estimate")

    sharp_parser = verbs.add_parser("sharp", parents=[common], help="Is the radius at rho = 1 above omega?")
    _add_operator_arguments(sharp_parser)
    sharp_parser.set_defaults(handler=run_sharp, command="radius sharp")

    profile_parser = verbs.add_parser("profile", parents=[common],
                                      help="|g_[n]|^(1/n) profile of sigma_q - lambda")
    profile_parser.add_argument("--lambda", dest="lam", required=True, help="<Required> Constant lambda")
    profile_parser.add_argument("--q", dest="q", required=True, help="<Required> q")
    profile_parser.add_argument("--nmax", dest="n_max", type=int, default=8, help="<Optional> Largest n")
    profile_parser.set_defaults(handler=run_profile, command="radius profile")

    iterates_parser = verbs.add_parser("iterates", parents=[common], help="The iterates g_[1] .. g_[kmax]")
    _add_operator_arguments(iterates_parser)
    iterates_parser.set_defaults(handler=run_iterates, command="radius iterates")
