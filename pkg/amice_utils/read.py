import json
import logging
import pathlib
import typing

from amice_utils.amiceexceptions import ParseError, UsageError
from amice_utils.config import RunConfig
from amice_utils.padic.normvalue import NormValue
from amice_utils.padic.padic import PAdic
from amice_utils.radius.operatorspec import OperatorKind, OperatorSpec
from amice_utils.series.laurentwindow import LaurentWindow
from amice_utils.series.qparam import QParam
from amice_utils.solvability.wittfamily import WittFamily

logger = logging.getLogger(__name__)


def read_json(path: typing.Union[str, pathlib.Path]) -> typing.Any:
    """ Load a JSON file. A report written by this tool is unwrapped to its result, so commands
    can be chained. """
    try:
        with open(path) as f:
            obj = json.load(f)
    except FileNotFoundError:
        raise ParseError(f"No such file: {path}")
    except json.JSONDecodeError as e:
        raise ParseError(f"{path} isn't valid JSON: {e}")
    if isinstance(obj, dict) and "tool" in obj and "result" in obj:
        logger.debug(f"Unwrapping report from {path}")
        return obj["result"]
    return obj


def parse_padic(text: str, config: RunConfig) -> PAdic:
    return PAdic.from_string(text, config.prime, config.prec)


def parse_q(text: typing.Optional[str], config: RunConfig) -> typing.Optional[QParam]:
    if text is None:
        return None
    return QParam(parse_padic(text, config))


def parse_rho(text: typing.Optional[str]) -> NormValue:
    """ rho given by its exponent e, rho = |p|^e """
    return NormValue.one() if text is None else NormValue.parse(text)


def _with_window(series: LaurentWindow, config: RunConfig) -> LaurentWindow:
    if config.i_min is None and config.i_max is None:
        return series
    lo = series.i_min if config.i_min is None else config.i_min
    hi = series.i_max if config.i_max is None else config.i_max
    if lo > hi:
        raise UsageError(f"Window [{lo}, {hi}] is empty")
    return series.with_bounds(lo, hi)


def read_series(path: str, config: RunConfig) -> LaurentWindow:
    obj = read_json(path)
    if not isinstance(obj, dict):
        raise ParseError(f"{path} doesn't hold a series")
    return _with_window(LaurentWindow.from_json(obj, config.prime, config.prec), config)


def read_operator(path: str, config: RunConfig, kind: str = None, q: str = None) -> OperatorSpec:
    """ An operator file {"kind", "g"} / {"kind", "q", "a"}, or a bare series together with
    ``kind`` (and ``q`` for a q-difference operator) """
    obj = read_json(path)
    if not isinstance(obj, dict):
        raise ParseError(f"{path} doesn't hold an operator")
    if "kind" in obj:
        op = OperatorSpec.from_json(obj, config.prime, config.prec)
        if kind is not None and OperatorKind.from_string(kind) is not op.kind:
            raise UsageError(f"--kind {kind} doesn't match the {op.kind} operator in {path}")
        if q is not None:
            if op.kind is not OperatorKind.QDIFF:
                raise UsageError("--q only applies to q-difference operators")
            op = OperatorSpec.qdiff(op.a, parse_q(q, config))
    else:
        if kind is None:
            raise UsageError(f"{path} holds a bare series, --kind is needed")
        series = LaurentWindow.from_json(obj, config.prime, config.prec)
        match OperatorKind.from_string(kind):
            case OperatorKind.DIFF:
                op = OperatorSpec.diff(series)
            case OperatorKind.QDIFF:
                if q is None:
                    raise UsageError("A q-difference operator needs --q")
                op = OperatorSpec.qdiff(series, parse_q(q, config))
    window = _with_window(op.series, config)
    return OperatorSpec(op.kind, window, op.q)


def read_family(path: str, config: RunConfig) -> WittFamily:
    obj = read_json(path)
    if not isinstance(obj, dict):
        raise ParseError(f"{path} doesn't hold a Witt family")
    return WittFamily.from_json(obj, config.prime, config.prec, config.wittlen)
