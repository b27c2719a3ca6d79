"""Exact constant-term computations for q-Dyson and q-Morris type products."""

from ._qmorris import *  # noqa: F401,F403
from ._qmorris import __doc__  # noqa: F401
