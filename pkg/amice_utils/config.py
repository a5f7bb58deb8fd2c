import logging
import os
import typing
from dataclasses import asdict, dataclass
from fractions import Fraction

import sympy

from amice_utils.amiceexceptions import UsageError

DEFAULT_PRIME: int = 2
DEFAULT_PRECISION: int = 32
DEFAULT_WITT_LENGTH: int = 8
DEFAULT_K_MAX: int = 64
DEFAULT_S_MAX: int = 64
DEFAULT_DECAY_CUT: Fraction = Fraction(2)  # |p|^2
DEFAULT_COEFFICIENT_BUDGET: int = 4096
PRECISION_ENV_VAR: str = "AMICE_DEFAULT_PREC"

logger = logging.getLogger(__name__)


def set_logging_level(verbose: bool):
    log_fmt = "%(name)s: %(asctime)s %(levelname)-8s %(message)s"

    if verbose:
        logging.basicConfig(level=logging.DEBUG,
                            format=log_fmt,
                            datefmt='%Y-%m-%d %H:%M:%S')
        logging.debug("Verbose logging enabled")
    else:
        logging.basicConfig(level=logging.WARNING,
                            format=log_fmt,
                            datefmt='%Y-%m-%d %H:%M:%S')


def default_precision() -> int:
    """ Precision used when --prec isn't given: AMICE_DEFAULT_PREC if set, else 32 digits """
    env = os.environ.get(PRECISION_ENV_VAR)
    if env is None:
        return DEFAULT_PRECISION
    try:
        prec = int(env)
    except ValueError:
        raise UsageError(f"{PRECISION_ENV_VAR} must be an integer, got {env!r}")
    logger.debug(f"Using {PRECISION_ENV_VAR}={prec}")
    return prec


@dataclass(frozen=True)
class RunConfig:
    """ Everything a single CLI run depends on. It's written verbatim into every report, so a
    report is enough to reproduce the run. """
    prime: int = DEFAULT_PRIME
    prec: int = DEFAULT_PRECISION
    i_min: typing.Optional[int] = None
    i_max: typing.Optional[int] = None
    wittlen: int = DEFAULT_WITT_LENGTH
    k_max: int = DEFAULT_K_MAX
    s_max: int = DEFAULT_S_MAX
    decay_cut: Fraction = DEFAULT_DECAY_CUT
    output_format: str = "json"
    coefficient_budget: int = DEFAULT_COEFFICIENT_BUDGET

    def __post_init__(self):
        if not sympy.isprime(self.prime):
            raise UsageError(f"--p must be a prime, got {self.prime}")

        for name in ("prec", "wittlen", "k_max", "s_max", "coefficient_budget"):
            if getattr(self, name) < 1:
                raise UsageError(f"{name} must be positive, got {getattr(self, name)}")

        if self.decay_cut <= 0:
            raise UsageError(f"--decay-cut must be a positive exponent, got {self.decay_cut}")

        if self.i_min is not None and self.i_max is not None and self.i_min > self.i_max:
            raise UsageError(f"Empty window: {self.i_min=} > {self.i_max=}")

        if self.output_format not in ("json", "table"):
            raise UsageError(f"Unknown output format {self.output_format}")

    @classmethod
    def from_args(cls, args):
        prec = args.prec if args.prec is not None else default_precision()
        return cls(
            prime=args.p,
            prec=prec,
            i_min=args.i_min,
            i_max=args.i_max,
            wittlen=args.wittlen,
            k_max=DEFAULT_K_MAX if args.kmax is None else args.kmax,
            s_max=args.smax,
            decay_cut=args.decay_cut,
            output_format=args.format,
            coefficient_budget=args.budget,
        )

    def to_dict(self) -> dict:
        d = asdict(self)
        d["decay_cut"] = str(self.decay_cut)
        return d
