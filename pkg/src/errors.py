"""Exception hierarchy shared by every forestalg package.

Each class carries the exit code the command line maps it to.
"""
from typing import Optional


class ForestAlgError(Exception):
    exit_code = 1


class UsageError(ForestAlgError):
    exit_code = 3


class ForestSyntaxError(ForestAlgError):
    exit_code = 3

    def __init__(self, message: str, text: str = "", position: int = 0):
        self.text = text
        self.position = position
        super().__init__(f"{message} at position {position}")


class UnknownLabelError(ForestAlgError):
    exit_code = 3

    def __init__(self, label: str, position: Optional[int] = None):
        self.label = label
        self.position = position
        where = f" at position {position}" if position is not None else ""
        super().__init__(f"unknown label '{label}'{where}")


class AlphabetMismatchError(ForestAlgError):
    exit_code = 3


class FormatError(ForestAlgError):
    exit_code = 3

    def __init__(self, message: str, path: str = "<string>", line: int = 0):
        self.path = path
        self.line = line
        super().__init__(f"{path}:{line}: {message}")


class UnknownLanguageError(ForestAlgError):
    exit_code = 3


class MalformedTableError(ForestAlgError):
    pass


class AlgebraPreconditionError(ForestAlgError):
    pass


class EndpointMismatchError(ForestAlgError):
    pass


class InconsistentDiagramError(ForestAlgError):
    pass


class PartialAssignmentError(ForestAlgError):
    pass


class ResourceLimitError(ForestAlgError):
    """A configured cap fired; `partial` reports how far the computation got."""
    exit_code = 4

    def __init__(self, cap_name: str, cap: int, partial: int = 0):
        self.cap_name = cap_name
        self.cap = cap
        self.partial = partial
        super().__init__(f"{cap_name} exceeded (cap {cap}, reached {partial})")
