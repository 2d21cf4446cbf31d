""" Exceptions raised across the package. Every error derives from `Extremal72Error` so the cli can map
    it onto an exit status. """

from typing import Any, Optional


class Extremal72Error(Exception):
    """ Base class for all package errors. """


class DimensionError(Extremal72Error, ValueError):
    """ Raised when vectors, matrices, codes or permutations of incompatible lengths are combined. """


class ContractViolation(Extremal72Error, ValueError):
    """ Raised when an operation is called on input that does not satisfy its precondition. """


class StructuralError(Extremal72Error, ValueError):
    """ Raised when a structural requirement (orbit constancy, conjugation shape) fails.
        `orbit` holds the offending orbit as 1-based coordinates when one can be named. """

    def __init__(self, message: str, orbit: Optional[tuple[int, ...]] = None):
        if orbit is not None:
            message = f'{message} (orbit {orbit})'
        super().__init__(message)
        self.orbit = orbit


class BudgetExceeded(Extremal72Error, RuntimeError):
    """ Raised when an enumeration, group, orbit or node cap would be exceeded. """

    def __init__(self, what: str, needed: int, cap: int):
        super().__init__(f'{what} needs {needed} but the cap is {cap}')
        self.what = what
        self.needed = needed
        self.cap = cap


class IncompleteSearch(Extremal72Error, RuntimeError):
    """ Raised when a stage refuses to continue on the result of an incomplete search. """


class MissingDataError(Extremal72Error, FileNotFoundError):
    """ Raised when external data (the [36,18,8] classification or a stage artifact) is absent. """


class CodeFileError(Extremal72Error, ValueError):
    """ Raised when a code store cannot be parsed or a record fails validation. """

    def __init__(self, message: str, line: Optional[int] = None, record: Optional[str] = None):
        prefix = ''
        if line is not None:
            prefix += f'line {line}: '
        if record is not None:
            prefix += f'record "{record}": '
        super().__init__(prefix + message)
        self.line = line
        self.record = record


class CheckpointMismatch(Extremal72Error, ValueError):
    """ Raised when a checkpoint was written by an incompatible configuration or format version. """


class SearchSuspended(Extremal72Error, RuntimeError):
    """ Raised at a stage boundary when a resource cap stops the sieve. `state` is resumable. """

    def __init__(self, message: str, state: Any = None):
        super().__init__(message)
        self.state = state


class VerificationFailure(Extremal72Error, AssertionError):
    """ Raised when a pipeline self-check or an oracle comparison fails. """
