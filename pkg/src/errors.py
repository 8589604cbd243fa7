"""Exception hierarchy for gyrovector computations, scenes and campaigns."""

from __future__ import annotations

from collections import Counter
from typing import Iterable, List, Mapping, Optional


class GyroError(Exception):
    """Base exception for every error raised by this package."""


class BallMismatchError(GyroError):
    """Raised when points of different Möbius balls are combined."""


class NonFiniteError(GyroError):
    """Raised when a coordinate or scalar is NaN or infinite."""


class OutsideBallError(GyroError):
    """Raised when a point does not lie strictly inside its ball."""


class DomainError(GyroError):
    """Raised when a real argument is outside the domain of a formula."""


class DegenerateInputError(GyroError):
    """Raised for coincident points, collinear vertices and similar input."""


class IncidenceError(DegenerateInputError):
    """Raised when a point is required to lie on a gyroline but does not."""


class IndeterminateError(GyroError):
    """Raised when two gyrolines are identical and have no unique meet."""


class InternalConsistencyError(GyroError):
    """Raised when a numerical invariant that must hold is violated."""


class VertexProximityError(GyroError):
    """Raised when a transversal passes through (or too close to) a vertex."""


class NonTransversalError(GyroError):
    """Raised when a transversal misses a side gyroline inside the ball."""


class AuxiliaryPointError(GyroError):
    """Raised when the diagonal DB does not meet the transversal."""


class NotCollinearError(GyroError):
    """Raised when points required to be collinear are not."""


class ConfigError(GyroError):
    """Raised when configuration loading or validation fails."""


class GeneratorExhaustedError(GyroError):
    """Raised when rejection sampling runs out of retries."""

    def __init__(self, kind: str, retries: int, histogram: Mapping[str, int]) -> None:
        self.kind = kind
        self.retries = retries
        self.histogram = Counter(histogram)
        summary = ", ".join(f"{name}={count}" for name, count in self.histogram.most_common())
        super().__init__(
            f"No valid {kind} configuration after {retries} draws "
            f"(rejections: {summary or 'none'})"
        )


class SceneError(GyroError):
    """Raised when a scene document has lexical, syntax or semantic errors."""

    def __init__(self, diagnostics: Iterable[object], source: Optional[str] = None) -> None:
        self.diagnostics: List[object] = list(diagnostics)
        self.source = source
        prefix = f"{source}:" if source else ""
        lines = [f"{prefix}{diagnostic}" for diagnostic in self.diagnostics]
        super().__init__("\n".join(lines) or "invalid scene")
