"""Exception hierarchy.

Library code raises these; only the command-line front end (`app.run`) turns them
into exit codes: validation problems exit 1, consistency failures exit 2.
"""


class HarmonicError(Exception):
    """Base class for every error raised by this package."""


class GroupError(HarmonicError, ValueError):
    """Invalid group, group element, or generating set."""


class GeneratingSetFormatError(GroupError):
    """Malformed generating-set file; `index` is the first bad entry (or None)."""

    def __init__(self, message, index=None):
        if index is not None:
            message = f"entry {index}: {message}"
        super().__init__(message)
        self.index = index


class BudgetExceededError(HarmonicError):
    """A ball or basis grew past its configured budget."""


class HarmonicityError(HarmonicError, ValueError):
    """A function is not harmonic (or not defined) where a formula requires it."""


class ConsistencyError(HarmonicError):
    """An internal invariant failed: the implementation, not the input, is wrong."""
