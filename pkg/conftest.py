import importlib.resources
from fractions import Fraction

import pytest

from amice_utils.radius.operatorspec import OperatorSpec
from amice_utils.series.laurentwindow import LaurentWindow
from amice_utils.series.qparam import QParam
from amice_utils.solvability.wittfamily import WittFamily

from tests import data


@pytest.fixture(scope="session")
def half_t():
    """ T d/dT - T/2: |g|_1 = |p|^-1, so the radius at rho = 1 is below omega """
    return OperatorSpec.diff(LaurentWindow.from_rationals(2, {1: Fraction(1, 2)}))


@pytest.fixture(scope="session")
def q9():
    # |q - 1| = |p|^3 at p = 2
    return QParam.from_rational(9, 2, 16)


@pytest.fixture(scope="session")
def t_plus_two():
    return LaurentWindow.from_rationals(2, {1: 1, 0: 2})


@pytest.fixture(scope="session")
def solvable_family():
    return WittFamily.from_rationals(2, {1: [1]}, i_max=8)


@pytest.fixture(scope="session")
def family_path():
    return str(importlib.resources.files(data) / "family.json")


@pytest.fixture(scope="session")
def half_t_path():
    return str(importlib.resources.files(data) / "half_t.json")


@pytest.fixture(scope="session")
def t_plus_two_path():
    return str(importlib.resources.files(data) / "t_plus_two.json")
