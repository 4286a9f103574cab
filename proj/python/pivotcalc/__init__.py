"""Pivot calculus on graphs: pivots, flips, rank-depth, certifying reductions."""

from ._pivotcalc import *  # noqa: F401,F403
from ._pivotcalc import __doc__  # noqa: F401
