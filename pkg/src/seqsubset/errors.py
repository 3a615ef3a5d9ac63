"""Exception hierarchy shared by every module."""


class SeqSubsetError(Exception):
    """Base class for all errors raised by this package."""


class DimensionError(SeqSubsetError, ValueError):
    """Sequences or pools disagree on alphabet size or length."""


class ModeError(SeqSubsetError, ValueError):
    """Set-mode and multiset-mode pools were mixed, or the mode is unsupported."""


class ParseError(SeqSubsetError, ValueError):
    def __init__(self, message, line=None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


class InvalidInjectionError(SeqSubsetError, ValueError):
    pass


class InstanceTooLargeError(SeqSubsetError, ValueError):
    """An exhaustive computation would exceed its enumeration guard."""


class InfeasiblePatternError(SeqSubsetError, ValueError):
    pass


class UndefinedMinimumError(SeqSubsetError, ValueError):
    pass


class UnsupportedError(SeqSubsetError, ValueError):
    pass


class NotApplicableError(SeqSubsetError, ValueError):
    """A bound's hypotheses fail for the given parameters."""


class ContradictionError(SeqSubsetError, AssertionError):
    """A proved inequality was violated; always an implementation bug."""
