"""Exception hierarchy shared by the loader, parser, encoder and solver."""

from __future__ import annotations


class ReqConflictError(Exception):
    """Base class for every error raised by this package."""


# -- data dictionary ---------------------------------------------------------


class DictionaryError(ReqConflictError):
    def __init__(self, message: str, line: int | None = None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


class DuplicateDataName(DictionaryError):
    pass


class EmptyRange(DictionaryError):
    pass


class MalformedRow(DictionaryError):
    pass


class DuplicateRangeValue(DictionaryError):
    pass


class UnknownData(ReqConflictError, KeyError):
    def __init__(self, name: str):
        self.name = name
        super().__init__(name)

    def __str__(self) -> str:
        return f"unknown data name {self.name!r}"


class ValueOutOfRange(ReqConflictError):
    def __init__(self, data: str, value: str, allowed: tuple[str, ...]):
        self.data = data
        self.value = value
        self.allowed = allowed
        super().__init__(f"value {value!r} is not in the range of {data!r} ({', '.join(allowed)})")


# -- requirement parsing -----------------------------------------------------


class RequirementSyntaxError(ReqConflictError):
    """Raised for malformed requirement text; carries the source position."""

    def __init__(self, message: str, line: int, column: int, token: str | None = None):
        self.message = message
        self.line = line
        self.column = column
        self.token = token
        self.source: str | None = None
        where = f"line {line}, column {column}"
        if token is not None:
            where += f", near {token!r}"
        super().__init__(f"{where}: {message}")

    def __str__(self) -> str:
        base = super().__str__()
        return f"{self.source}: {base}" if self.source else base


class MixedConnectiveError(RequirementSyntaxError):
    pass


class MissingThenError(RequirementSyntaxError):
    pass


class DuplicateIdError(RequirementSyntaxError):
    pass


# -- logic -------------------------------------------------------------------


class ExpressionSyntaxError(ReqConflictError):
    def __init__(self, message: str, position: int):
        self.position = position
        super().__init__(f"at offset {position}: {message}")


class TooManyAtoms(ReqConflictError):
    pass


# -- pipeline ----------------------------------------------------------------


class ValidationFailed(ReqConflictError):
    """Strict-mode dictionary validation found problems."""

    def __init__(self, diagnostics):
        self.diagnostics = list(diagnostics)
        super().__init__(f"{len(self.diagnostics)} dictionary violation(s)")


class ConfigError(ReqConflictError):
    pass
