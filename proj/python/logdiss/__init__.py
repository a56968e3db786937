"""Logical dissipation analysis of finite automata and Turing machines."""

from ._logdiss import *  # noqa: F401,F403
from ._logdiss import __version__  # noqa: F401
