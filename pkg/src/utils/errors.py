from typing import Optional


class NicLabError(Exception):
    """Base exception for niclab failures"""
    def __init__(self, message: str, original: Optional[Exception] = None):
        super().__init__(message)
        self.original = original
        self.message = message

    def __str__(self) -> str:
        if self.original is None:
            return self.message
        return f"{self.message}: {self.original}"


class InputError(NicLabError):
    """Malformed or schema-violating input document"""


class ResourceLimitError(NicLabError):
    """Requested dimension exceeds the configured limit"""


class PreconditionError(NicLabError):
    """Input does not satisfy the operation's stated precondition"""
