""" This module defines the amice_utils exception hierarchy. Every failure state the toolkit can
report (precision running out, a series that isn't a unit, a lemma range outside its hypothesis,
a malformed input file) has its own class, grouped into families by the module that raises it.

The command line tool maps these exceptions to exit codes so that scripts driving it can tell
apart a usage mistake, an unreadable input file and a mathematical domain error without
parsing log output:

1. usage errors exit 64 and parse errors exit 65
2. every domain error exits 2 and writes a structured error report
3. anything that isn't ours keeps Python's normal behaviour

The excepthook is only installed by the console script, never at import time.
"""
import sys
from types import MappingProxyType


class BaseAmiceException(Exception):
    """The base class from which all amice_utils errors must inherit.
    The purpose of this class is to simplify finding toolkit exceptions and exiting python
    with a matching custom exit code."""


class PAdicError(BaseAmiceException):
    """The base class for errors raised by capped-precision p-adic arithmetic"""


class DivisionByZero(PAdicError):
    """Raised when inverting an exact zero or a value indistinguishable from zero"""


class PrecisionExhausted(PAdicError):
    """Raised when a result is known to zero digits, e.g. an addition cancelled every digit
    the operands carried"""


class IndeterminateValuation(PAdicError):
    """Raised when only a lower bound on a valuation is known.

    The bound is kept on the exception so callers can still use it as an "at least" marker."""

    def __init__(self, message: str, at_least: int = None):
        super().__init__(message)
        self.at_least = at_least


class PrimeMismatch(PAdicError):
    """Raised when two values over different primes are combined"""


class SeriesError(BaseAmiceException):
    """The base class for errors raised by Laurent windows and q-numerics"""


class OutOfConvergenceDomain(SeriesError):
    """Raised when a series (binomial q^alpha, exponential) is evaluated outside the disc
    where it converges"""


class QParamError(SeriesError):
    """Raised when q doesn't satisfy |q - 1| < 1, or a routine needing |q - 1| < omega gets a
    q outside that disc"""


class LogDomain(SeriesError):
    """Raised when a logarithm is requested for 1 + h with |h| >= omega"""


class RadiusError(BaseAmiceException):
    """The base class for errors raised while estimating radii of convergence"""


class PreconditionViolated(RadiusError):
    """Raised when a sharp test is asked about an operator with |g|_1 > 1"""


class MotzkinError(BaseAmiceException):
    """The base class for errors raised by the Motzkin factorisation"""


class NotAUnit(MotzkinError):
    """Raised when the normalised series 1 + h has |h|_1 >= 1, so it has zeros on the unit
    circle and can't be factorised"""


class SolvabilityError(BaseAmiceException):
    """The base class for errors raised by the solvability criteria and generators"""


class ExponentSolveFailed(SolvabilityError):
    """Raised when no a0 with |a0| <= 1 satisfies q^a0 = lambda within precision"""


class NotSolvable(SolvabilityError):
    """Raised when a routine that needs a solvable operator gets one that fails the criterion"""


class LemmaError(BaseAmiceException):
    """The base class for errors raised by the lemma suites"""


class HypothesisViolated(LemmaError):
    """Raised when a lemma range puts rho or |q - 1| outside the lemma's hypothesis"""


class InputError(BaseAmiceException):
    """The base class for errors about command line input"""


class UsageError(InputError):
    """Raised when the command line can't be understood"""


class ParseError(InputError):
    """Raised when an input file or value can't be parsed"""


class ExceptionExitCodeMap:
    """A read only map to get exit codes for custom exceptions"""

    # https://www.freebsd.org/cgi/man.cgi?query=sysexits
    _mapping = {
        UsageError: 64,
        ParseError: 65,
    }

    code_map = MappingProxyType(_mapping)

    def __getitem__(self, exception_type):
        # every other toolkit error is a domain error
        return self.code_map.get(exception_type, 2)


def handle_uncaught_exception(exctype, value, trace):
    code_map = ExceptionExitCodeMap()
    _old_hook(exctype, value, trace)
    if isinstance(value, BaseAmiceException):
        sys.exit(code_map[exctype])


_old_hook = sys.excepthook


def install_excepthook():
    sys.excepthook = handle_uncaught_exception
