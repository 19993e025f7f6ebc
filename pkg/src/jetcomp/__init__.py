"""Exact jets, division of truncated power series and ideals of relations."""

from .errors import (
    DimensionError,
    InconsistentSystemError,
    NotCompositeError,
    PreconditionError,
)
from .series import Polynomial, TruncatedSeries

__version__ = "0.1.0"

__all__ = [
    "DimensionError",
    "InconsistentSystemError",
    "NotCompositeError",
    "Polynomial",
    "PreconditionError",
    "TruncatedSeries",
]
