"""Exception hierarchy shared by the library, the CLI and the MCP tools.

Every error carries a stable ``code`` so callers can report failures in a
machine-parsable way without matching on message text.
"""

from __future__ import annotations


class NilorbitError(ValueError):
    """Base class for all domain errors raised by ``nilorbit``."""

    code = "nilorbit"

    def __init__(self, message: str) -> None:
        super().__init__(message)
        self.message = message

    def to_dict(self) -> dict[str, str]:
        return {"error": self.message, "code": self.code}


class ParseError(NilorbitError):
    code = "parse"


class EmptyRangeError(NilorbitError):
    code = "empty-range"


class UndefinedSupportError(NilorbitError):
    code = "undefined-support"


class InvalidArgumentError(NilorbitError):
    code = "invalid-argument"


class InvalidModulusError(NilorbitError):
    code = "invalid-modulus"


class DivisibilityError(NilorbitError):
    code = "divisibility"


class WrongDegreeError(NilorbitError):
    code = "wrong-degree"


class NotDynamicalError(NilorbitError):
    """Raised for constant polynomials and for ``a = 0`` linear maps."""

    code = "not-a-dynamical-map"


class OutOfRangeError(NilorbitError):
    code = "out-of-range"


class UnknownSuiteError(NilorbitError):
    code = "unknown-suite"
