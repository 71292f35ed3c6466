"""Exceptions raised by the toolkit.

Library code raises these; only the scenario runner catches them and turns
them into per-query error records.
"""


class ToolkitError(ValueError):
    """Base class for every toolkit error."""


class NotHermitian(ToolkitError):
    pass


class NoConvergence(ToolkitError):
    pass


class ShapeMismatch(ToolkitError):
    pass


class DimensionMismatch(ToolkitError):
    pass


class NotNormalized(ToolkitError):
    pass


class NotAState(ToolkitError):
    pass


class NotPiNormal(ToolkitError):
    pass


class NotSubcentral(ToolkitError):
    pass


class UnknownLabel(ToolkitError):
    pass


class NotInAlgebra(ToolkitError):
    pass


class NotFactorState(ToolkitError):
    pass


class UnknownOutcome(ToolkitError):
    pass


class LabelMismatch(ToolkitError):
    pass


class MppcFailed(ToolkitError):
    """The measurement process does not satisfy the spectral-equivalence
    condition, so the classical Born rule does not apply."""


class NotUnitary(ToolkitError):
    pass


class NotProductFamily(ToolkitError):
    pass


class ScenarioSyntaxError(ToolkitError):
    def __init__(self, line: int, col: int, expected: str, found: str = ""):
        self.line = line
        self.col = col
        self.expected = expected
        self.found = found
        detail = f"expected {expected}"
        if found:
            detail += f", found {found!r}"
        super().__init__(f"{line}:{col}: syntax error: {detail}")


class ScenarioSemanticError(ToolkitError):
    def __init__(self, message: str, line: int = 0, col: int = 0, name: str | None = None):
        self.line = line
        self.col = col
        self.name = name
        super().__init__(f"{line}:{col}: {message}")
