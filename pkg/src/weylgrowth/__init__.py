"""Toolkit for restricted root systems, Weyl-chamber cone geometry,
piecewise-linear growth-indicator models and their critical functionals."""

from .errors import CapExceeded, CheckFailure, InputError, ModelInvariantError

__all__ = [
    "CapExceeded",
    "CheckFailure",
    "InputError",
    "ModelInvariantError",
]

__version__ = "0.1.0"
