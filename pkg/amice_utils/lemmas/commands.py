import argparse
import textwrap
from fractions import Fraction

from amice_utils.amiceexceptions import UsageError
from amice_utils.config import RunConfig
from amice_utils.lemmas.lemmarange import LemmaKind, LemmaRange
from amice_utils.lemmas.suites import run
from amice_utils.read import parse_rho
from amice_utils.write import CommandResult


def _lemma_range(args: argparse.Namespace, config: RunConfig) -> LemmaRange:
    """ Only flags that were given override the LemmaRange defaults """
    kwargs = {"prime": config.prime, "prec": config.prec}
    if args.n is not None:
        if args.n_min is not None or args.n_max is not None:
            raise UsageError("--n can't be combined with --nmin / --nmax")
        kwargs.update(n_min=args.n, n_max=args.n)
    optional = {
        "j": args.j,
        "r_max": args.r_max,
        "n_min": args.n_min,
        "n_max": args.n_max,
        "k_max": args.kmax,
        "m_max": args.m_max,
        "alpha_max": args.alpha_max,
        "samples": args.samples,
        "window": args.window,
        "seed": args.seed,
    }
    kwargs.update({k: v for k, v in optional.items() if v is not None})
    if args.rho is not None:
        kwargs["rho"] = parse_rho(args.rho)
    if args.q_exponents:
        kwargs["q_exponents"] = tuple(args.q_exponents)
    try:
        if args.alpha is not None:
            kwargs["alpha"] = Fraction(args.alpha)
        return LemmaRange(LemmaKind.from_string(args.which), **kwargs)
    except (ValueError, ZeroDivisionError) as e:
        raise UsageError(str(e))


def run_lemma(args: argparse.Namespace, config: RunConfig) -> CommandResult:
    report = run(_lemma_range(args, config))
    rows = [case.row() for case in report.cases]
    return CommandResult(report.to_json(include_cases=args.cases), rows, 0 if report.holds else 1)


def _description_text() -> str:
    return textwrap.dedent(
        """\
    Brute-force checks of the valuation inequalities the radius and solvability code rely on.
    Every comparison is exact arithmetic on exponents of |p|.
    """
    )


def _epilog_text() -> str:
    return textwrap.dedent(
        """\
    Exits 1 when a counterexample is found. Cases whose comparison can't be decided at the
    working precision are counted as undecided, never as counterexamples.
    """
    )


def add_parser(subparsers, common: argparse.ArgumentParser):
    parser = subparsers.add_parser(
        "lemmas",
        help="Brute-force valuation inequality suites",
        description=_description_text(),
        epilog=_epilog_text(),
        formatter_class=argparse.RawDescriptionHelpFormatter,
    )
    verbs = parser.add_subparsers(dest="verb", required=True)

    run_parser = verbs.add_parser("run", parents=[common], help="Run one suite")
    run_parser.add_argument("--which", dest="which", choices=[str(k) for k in LemmaKind], required=True,
                            help="<Required> Suite")
    run_parser.add_argument("--j", dest="j", type=int, help="<Optional> j for the power peak suite")
    run_parser.add_argument("--rho", dest="rho", help="<Optional> Exponent e of rho = |p|^e")
    run_parser.add_argument("--rmax", dest="r_max", type=int, help="<Optional> Largest r")
    run_parser.add_argument("--n", dest="n", type=int, help="<Optional> A single n")
    run_parser.add_argument("--nmin", dest="n_min", type=int, help="<Optional> Smallest n")
    run_parser.add_argument("--nmax", dest="n_max", type=int, help="<Optional> Largest n")
    run_parser.add_argument("--mmax", dest="m_max", type=int, help="<Optional> Largest m in d = p^m d'")
    run_parser.add_argument("--alpha", dest="alpha", help="<Optional> Exponent alpha, as num/den")
    run_parser.add_argument("--alpha-max", dest="alpha_max", type=int, help="<Optional> Largest integer alpha")
    run_parser.add_argument(
        "--qexp",
        dest="q_exponents",
        type=int,
        action="append",
        help="<Optional> Place q with |q - 1| = |p|^e, can be repeated",
    )
    run_parser.add_argument("--samples", dest="samples", type=int, help="<Optional> Random samples")
    run_parser.add_argument("--window", dest="window", type=int, help="<Optional> Half-width of random series")
    run_parser.add_argument("--seed", dest="seed", type=int, help="<Optional> Random seed")
    run_parser.add_argument(
        "--cases",
        dest="cases",
        action="store_true",
        help="<Optional> List every case in the JSON report, not only counterexamples",
    )
    run_parser.set_defaults(handler=run_lemma, command="lemmas run")
