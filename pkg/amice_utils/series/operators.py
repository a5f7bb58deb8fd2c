import logging
import typing
from enum import Enum

from amice_utils.series.laurentwindow import LaurentWindow
from amice_utils.series.qparam import QParam

logger = logging.getLogger(__name__)


class SeriesOperator(Enum):
    """ Operators acting coefficientwise on a LaurentWindow """
    DDT = "ddT"
    THETA = "theta"
    SIGMA_Q = "sigma_q"
    D_Q = "d_q"
    DELTA_Q = "delta_q"

    def __str__(self):
        return str(self.value)

    @property
    def needs_q(self) -> bool:
        return self in (SeriesOperator.SIGMA_Q, SeriesOperator.D_Q, SeriesOperator.DELTA_Q)

    @classmethod
    def from_string(cls, op: str):
        try:
            return cls(op)
        except ValueError:
            raise ValueError(f"Can't match {op=}")


def apply(op: typing.Union[SeriesOperator, str], f: LaurentWindow, q: QParam = None) -> LaurentWindow:
    """ Apply one of d/dT, T d/dT, sigma_q, d_q or Delta_q to f

    >>> f = LaurentWindow.from_rationals(2, {3: 1})
    >>> str(apply("theta", f))
    '(2^0 * 3 :: exact)*T^3'
    """
    if isinstance(op, str):
        op = SeriesOperator.from_string(op)
    if op.needs_q and q is None:
        raise ValueError(f"{op} needs a q parameter")
    if not op.needs_q and q is not None:
        logger.debug(f"{op} ignores q")

    match op:
        case SeriesOperator.DDT:
            return f.map_coefficients(lambda i, c: i * c).shift(-1)
        case SeriesOperator.THETA:
            return f.map_coefficients(lambda i, c: i * c)
        case SeriesOperator.SIGMA_Q:
            return f.map_coefficients(lambda i, c: c * q.power(i))
        case SeriesOperator.D_Q:
            return f.map_coefficients(lambda i, c: c * q.bracket(i)).shift(-1)
        case SeriesOperator.DELTA_Q:
            return f.map_coefficients(lambda i, c: c * q.bracket(i))
        case _:
            raise ValueError(f"Unknown operator {op}")
