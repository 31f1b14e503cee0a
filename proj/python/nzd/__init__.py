"""Zero-determinant strategies for noisy repeated prisoner's dilemma games.

Thin re-export of the compiled core: noise model, expected payoffs, Markov
analysis, ZD synthesis (pinning, weak/strong extortion), region scans and
the Monte Carlo oracle.
"""

from ._core import *  # noqa: F401,F403
from ._core import __version__  # noqa: F401
