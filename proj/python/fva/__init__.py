"""Funding, credit and debit value adjustments under internal measures."""

from ._fva import *  # noqa: F401,F403
from ._fva import __doc__  # noqa: F401

__version__ = "0.1.0"
