"""Zero-forcing and QR-based dirty paper coding for near-field multiuser MISO downlink."""

from ._core import *  # noqa: F401,F403
from ._core import (  # noqa: F401
    CapExceededError,
    NumericalError,
    RankDeficientError,
    ValidationError,
)

__version__ = "0.1.0"
