"""Exact parameter-shift gradient rules for generators with arbitrary finite spectra."""

from .errors import ConvergenceError, InputError, NumericalError, SingularShiftError, SynthesisError

__version__ = "0.1.0"

__all__ = ["ConvergenceError", "InputError", "NumericalError", "SingularShiftError", "SynthesisError", "__version__"]
