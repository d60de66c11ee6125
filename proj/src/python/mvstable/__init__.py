"""Multivariate stable distributions: fitting, simulation, goodness of fit and tail risk."""

from ._core import *  # noqa: F401,F403
from ._core import __doc__  # noqa: F401

__version__ = "0.1.0"
