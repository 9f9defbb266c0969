from __future__ import annotations

from pathlib import Path


class CesaroCAError(Exception):
    """Base class for every error raised by cesaro_ca."""


class ParseError(CesaroCAError):
    def __init__(
        self, message: str, *, path: Path | str | None = None, line: int = 0, column: int = 0
    ) -> None:
        self.message = message
        self.path = str(path) if path is not None else "<input>"
        self.line = line
        self.column = column
        super().__init__(f"{self.path}:{line}:{column}: {message}")


class CapExceededError(CesaroCAError):
    """A resource cap would be exceeded. Raise it through CESARO_CA_CAPS."""

    def __init__(self, cap: str, requested: int, limit: int) -> None:
        self.cap = cap
        self.requested = requested
        self.limit = limit
        super().__init__(
            f"cap '{cap}' exceeded: needs {requested}, limit is {limit} "
            f"(set CESARO_CA_CAPS={cap}=<n> to raise it)"
        )


class EmptyLanguageError(CesaroCAError):
    pass


class NonTransitiveSpaceError(CesaroCAError):
    pass


class WindowTooShortError(CesaroCAError):
    pass


class InadmissibleWordError(CesaroCAError):
    pass


class RuleClosureError(CesaroCAError):
    pass


class HorizonExceededError(CesaroCAError):
    def __init__(self, message: str, *, preperiod: int | None = None) -> None:
        self.preperiod = preperiod
        super().__init__(message)


class HypothesisNotMetError(CesaroCAError):
    """A theorem's hypotheses do not hold for the given inputs."""


class UnsupportedDomainError(CesaroCAError):
    pass
