""" The iterates g_[k] of a rank-one operator.

For T d/dT - g the solution's Taylor coefficients are driven by
    g_[1] = g / T,  g_[k+1] = d/dT(g_[k]) + g_[k] g_[1]
and for sigma_q - a by
    g_[1] = (a - 1) / ((q - 1) T),  g_[k+1] = d_q(g_[k]) + sigma_q(g_[k]) g_[1]
The supports grow with k; once a window is wider than the coefficient budget it is clipped around
its centre and marked truncated.
"""
import logging
import typing
from itertools import islice

from amice_utils.config import DEFAULT_COEFFICIENT_BUDGET
from amice_utils.radius.operatorspec import OperatorKind, OperatorSpec
from amice_utils.series.laurentwindow import LaurentWindow
from amice_utils.series.operators import SeriesOperator, apply

logger = logging.getLogger(__name__)


def first_iterate(op: OperatorSpec) -> LaurentWindow:
    match op.kind:
        case OperatorKind.DIFF:
            return op.g.shift(-1)
        case OperatorKind.QDIFF:
            return (op.a - 1).shift(-1).scale(op.q.q_minus_one.inverse())
        case _:
            raise ValueError(f"Unknown operator kind {op.kind}")


def _clip(g: LaurentWindow, budget: int) -> LaurentWindow:
    width = g.i_max - g.i_min + 1
    if width <= budget:
        return g
    centre = (g.i_min + g.i_max) // 2
    lo = centre - (budget - 1) // 2
    return g.truncate(lo, lo + budget - 1)


def iterate_windows(op: OperatorSpec, budget: int = DEFAULT_COEFFICIENT_BUDGET) -> typing.Generator[
        LaurentWindow, None, None]:
    """ Lazily yield g_[1], g_[2], ... """
    g1 = first_iterate(op)
    current = g1
    k = 1
    warned = False
    while True:
        yield current
        match op.kind:
            case OperatorKind.DIFF:
                step = apply(SeriesOperator.DDT, current) + current * g1
            case OperatorKind.QDIFF:
                step = apply(SeriesOperator.D_Q, current, op.q) + apply(SeriesOperator.SIGMA_Q, current, op.q) * g1
        k += 1
        current = _clip(step, budget)
        if current is not step and not warned:
            logger.warning(f"Iterate g_[{k}] exceeded the coefficient budget {budget} and was truncated")
            warned = True
        logger.debug(f"g_[{k}] has {len(current.coeffs)} stored coefficients in [{current.i_min}, {current.i_max}]")


def iterates(op: OperatorSpec, k_max: int, budget: int = DEFAULT_COEFFICIENT_BUDGET) -> list[LaurentWindow]:
    """ g_[1] .. g_[k_max] """
    if k_max < 1:
        raise ValueError(f"k_max must be >= 1, got {k_max}")
    return list(islice(iterate_windows(op, budget), k_max))
