"""Exception hierarchy shared by all modules.

The CLI maps :class:`InputError` to exit code 1 and :class:`NumericalError`
to exit code 2.
"""


class InputError(ValueError):
    """Malformed or inconsistent user input (files, sizes, indices)."""


class NumericalError(RuntimeError):
    """A numerical procedure could not produce a trustworthy result."""


class SynthesisError(NumericalError):
    """No consistent shift rule was found within the allowed number of shifts."""


class SingularShiftError(InputError):
    """A shift value hits a singularity of a closed-form rule."""


class ConvergenceError(NumericalError):
    """An optimizer stopped without reaching the requested residual.

    ``result`` carries the best partial result so callers can inspect it
    (for instance to retry with more terms).
    """

    def __init__(self, message, result=None):
        super().__init__(message)
        self.result = result
