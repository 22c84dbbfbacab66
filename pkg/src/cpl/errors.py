"""Exception hierarchy.  Every diagnostic the REPL prints is a ``CPLError``."""
from __future__ import annotations


class CPLError(Exception):
    """Base class for all interpreter diagnostics."""


class CPLSyntaxError(CPLError):
    def __init__(self, message: str, line: int = 1, column: int = 1):
        super().__init__(f"syntax error at {line}:{column}: {message}")
        self.line = line
        self.column = column


class UnificationError(CPLError):
    def __init__(self, left, right, unifier=None, cyclic: bool = False):
        self.left = left
        self.right = right
        self.cyclic = cyclic
        what = "occurs check" if cyclic else "cannot unify"
        super().__init__(f"{what}: {left} with {right}")


class DeclarationError(CPLError):
    """A left/right object declaration was rejected."""


class CPLTypeError(CPLError):
    """An expression is ill-typed."""


class ReductionError(CPLError):
    """Raised by the reduction machines."""


class StuckError(ReductionError):
    """No rule applies; a validation or implementation bug, never user error."""


class FuelExhausted(ReductionError):
    def __init__(self, fuel: int):
        super().__init__(f"reduction did not finish within {fuel} steps")
        self.fuel = fuel


class UnboundNameError(CPLError):
    """An identifier does not name an object, natural, factorizer or definition."""
