"""Inequality-dynamics modeling toolkit.

Weighted log-indicator aggregation, an entropy-style scalar functional,
the Gini rate equation with a logistic adoption input, sensitivity sweeps,
and OLS calibration, backed by the bundled georgia-2023 reference preset.
"""

from giniflow._core import *  # noqa: F401,F403
from giniflow._core import __version__  # noqa: F401
