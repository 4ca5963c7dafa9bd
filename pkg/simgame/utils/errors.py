from typing import NamedTuple, Tuple


class Violation(NamedTuple):
    """A single failed requirement found by one of the validators.

    Attributes
    ----------
    condition : str
        Short name of the violated condition, e.g. ``"4b"`` or ``"labels"``.
    strategies : tuple of str
        The strategies (or document fields) involved.
    message : str
        Human readable description.
    """
    condition: str
    strategies: Tuple[str, ...]
    message: str

    def __str__(self):
        involved = ", ".join(self.strategies)
        return f"({self.condition}) {self.message}" + (f" [{involved}]" if involved else "")


class ValidationError(ValueError):
    """Raised when a game, strategy or document does not fulfil its invariants.
    All violations found are collected before raising.
    """

    def __init__(self, violations):
        self.violations = list(violations)
        super().__init__("; ".join(str(v) for v in self.violations))


class RefusalError(ValueError):
    """Raised by the closed-form analyzers when their preconditions fail.

    Parameters
    ----------
    reason : str
        Machine readable reason, e.g. ``"trivial"``, ``"cost_too_high"``.
    message : str
        Human readable explanation.
    details : dict, optional
        Exact values relevant to the refusal (bounds, failing index, ...).
    """

    def __init__(self, reason, message, details=None):
        self.reason = reason
        self.details = dict(details or {})
        super().__init__(message)


class GameFormatError(ValueError):
    """Raised when a game or graph document cannot be parsed."""

    def __init__(self, message, line=None, column=None):
        self.line = line
        self.column = column
        if line is not None:
            message = f"line {line} column {column}: {message}"
        super().__init__(message)
