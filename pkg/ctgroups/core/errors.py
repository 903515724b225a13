"""Exception hierarchy shared by every layer of the package.

Failures that are legitimate answers (no witness, a check that does not hold)
are returned as values. Exceptions are reserved for bad input and exhausted
budgets.
"""


class CTError(Exception):
    """Base class for all package errors."""


# ---------------------------------------------------------------------------
# Arithmetic
# ---------------------------------------------------------------------------

class FieldError(CTError, ValueError):
    """Unsupported field parameters or an illegal field operation."""


class FieldTooSmallError(FieldError):
    """The field has fewer than 4 elements where at least 4 are required."""

    def __init__(self, order: int, what: str = "this operation"):
        super().__init__(f"{what} needs a field of order at least 4, got {order}")
        self.order = order


class MatrixError(CTError, ValueError):
    """Singular matrix, dimension mismatch or ill-formed matrix request."""


# ---------------------------------------------------------------------------
# Input documents
# ---------------------------------------------------------------------------

class ParseError(CTError, ValueError):
    """Base for line-oriented input errors; remembers the offending line."""

    def __init__(self, message: str, line_no: int | None = None):
        prefix = f"line {line_no}: " if line_no is not None else ""
        super().__init__(f"{prefix}{message}")
        self.line_no = line_no


class DiagramParseError(ParseError):
    pass


class PointingParseError(ParseError):
    pass


class PresentationParseError(ParseError):
    pass


class InadmissibleDiagramError(CTError, ValueError):
    """Raised where an admissible diagram is a precondition."""

    def __init__(self, violations: list[str]):
        super().__init__("diagram is not admissible: " + "; ".join(violations))
        self.violations = violations


class DisconnectedError(CTError, ValueError):
    pass


class WitnessScopeError(CTError, ValueError):
    """A completion witness was requested for an amalgam it does not cover."""


# ---------------------------------------------------------------------------
# Searches
# ---------------------------------------------------------------------------

class SearchBudgetExceeded(CTError, RuntimeError):
    def __init__(self, what: str, size: int, budget: int):
        super().__init__(f"{what}: search size {size} exceeds budget {budget}")
        self.size = size
        self.budget = budget


class AmalgamConstructionError(CTError, RuntimeError):
    """A freshly built amalgam failed one of its defining checks."""
