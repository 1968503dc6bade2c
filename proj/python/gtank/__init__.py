"""German tank problem estimators, miss probabilities and Monte Carlo harness."""

from ._gtank import *  # noqa: F401,F403
from ._gtank import GtankError

__all__ = [name for name in dir() if not name.startswith("_")]
