"""Shared fixtures for the hv_freefield tests."""

import pytest

from hv_freefield.config import RunConfig
from hv_freefield.constants import Param
from hv_freefield.scalars import param


@pytest.fixture
def r():
    """Symbolic module label r."""
    return param(Param.R)


@pytest.fixture
def lam():
    """Symbolic Whittaker eigenvalue."""
    return param(Param.LAMBDA)


@pytest.fixture
def cl():
    return param(Param.CL)


@pytest.fixture
def cli():
    return param(Param.CLI)


@pytest.fixture
def small_config():
    """Bounds small enough for the unit suite."""
    return RunConfig(degree_bound=2, mode_bound=2, p_values=(1, 2)).validate()
