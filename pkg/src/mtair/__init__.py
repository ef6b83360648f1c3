"""Monte Carlo engine and encoded model for a quantitative AI-risk hypothesis map."""

__version__ = "0.1.0"

from .errors import MtairError  # noqa: F401

# Importing the domain modules registers their formula builtins.
from . import hardware as _hardware  # noqa: E402,F401
from . import timelines as _timelines  # noqa: E402,F401
from . import takeoff as _takeoff  # noqa: E402,F401
