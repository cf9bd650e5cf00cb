"""Error hierarchy shared by the engine, the CLI and the HTTP routes

Every error carries a short machine-parsable ``category`` so that the CLI can
report failures as a single ``error[<category>]: <message>`` line.
"""
from typing import Optional


class CQError(Exception):
    """Base class for all engine errors"""

    category: str = "error"

    def __str__(self) -> str:
        return self.args[0] if self.args else self.category


class InvalidArgumentError(CQError, ValueError):
    category = "invalid-argument"


class SingularSymbolError(CQError):
    """A symbol evaluation hit a pole or a numerically singular matrix"""

    category = "singular-symbol"

    def __init__(self, message: str, s: Optional[complex] = None):
        super().__init__(message)
        self.s = s


class NodeEvaluationError(CQError):
    """Symbol evaluation or solve failed at a contour node"""

    category = "node-evaluation"

    def __init__(self, message: str, node: int, s: Optional[complex] = None):
        super().__init__(message)
        self.node = node
        self.s = s


class UnsolvableEquationError(CQError):
    category = "unsolvable-equation"


class GeneratorSingularError(CQError):
    """The inner matrix of the Runge-Kutta generator is singular at zeta"""

    category = "generator-singular"

    def __init__(self, message: str, zeta: Optional[complex] = None):
        super().__init__(message)
        self.zeta = zeta


class IllConditionedSpectrumError(CQError):
    category = "ill-conditioned-spectrum"


class SpectrumOutsideHalfPlaneError(CQError):
    category = "spectrum-outside-halfplane"


class TableauValidationError(CQError):
    category = "tableau-validation"


class GeometryError(CQError):
    category = "geometry"


class OracleFailureError(CQError):
    category = "oracle-failure"


class ConvergenceReportError(CQError):
    category = "convergence-report"


class WeightFormatError(CQError):
    category = "weight-format"
