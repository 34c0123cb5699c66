"""
Engine exceptions

Every error raised by the engine derives from EngineError and carries the exit
status the command line reports for it.
"""
from app.Helper.helper_constant import ExitCode


class EngineError(Exception):
    """Base class for all engine errors."""

    exit_code = ExitCode.FAILED


class ParseError(EngineError):
    """Malformed ring spec, polynomial, ideal, word, tree or certificate text."""

    exit_code = ExitCode.USAGE

    def __init__(self, message: str, text: str = "", position: int = -1):
        if position >= 0:
            message = f"{message} at position {position} in {text!r}"
        super().__init__(message)
        self.text = text
        self.position = position


class UsageError(EngineError):
    """Invalid parameters: bad indices, ring mismatch, unknown names."""

    exit_code = ExitCode.USAGE


class NotSupportedError(EngineError):
    """A construction that is only known for larger matrix sizes."""

    exit_code = ExitCode.NOT_SUPPORTED


class CapExceededError(EngineError):
    """A closure or size cap was hit."""

    exit_code = ExitCode.CAP_EXCEEDED

    def __init__(self, what: str, cap: int):
        super().__init__(f"{what} exceeded cap {cap}")
        self.cap = cap


class CertificationError(EngineError):
    """A construction step did not evaluate to what it claims."""

    exit_code = ExitCode.FAILED
