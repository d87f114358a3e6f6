"""
errors.py — Failure taxonomy for zetameans

Every numeric operation signals failure through one of these classes, never
by returning NaN/Inf. The CLI and the HTTP layer translate them into exit
codes and JSON bodies through `to_dict()`.
"""

from typing import Any, Dict, Optional


class ZetaMeansError(Exception):
    """Base class for all library failures."""

    def __init__(self, message: str, **context: Any):
        super().__init__(message)
        self.message = message
        self.context = context

    def to_dict(self) -> Dict[str, Any]:
        return {
            "error_type": type(self).__name__,
            "error": self.message,
            "detail": {k: _jsonable(v) for k, v in self.context.items()},
        }


class DomainError(ZetaMeansError):
    """Argument outside the operation's domain (α ≤ 0, η ∉ (0,½), ...)."""


class StripConditionError(DomainError):
    """Strip condition −N+1 < Re u, Re v < N+1 of the exact J_x identity violated."""


class PoleError(ZetaMeansError):
    """Evaluation requested at a pole (Γ at 0,−1,…; ζ at 1)."""


class ConvergenceError(ZetaMeansError):
    """A series or iteration failed to reach tolerance within its budget."""


class ToleranceNotMet(ZetaMeansError):
    """Adaptive quadrature stopped before reaching the requested tolerance."""

    def __init__(
        self,
        message: str,
        best_estimate: Any = None,
        error_estimate: float = float("inf"),
        cell: Optional[int] = None,
        **context: Any,
    ):
        super().__init__(message, error_estimate=error_estimate, cell=cell, **context)
        self.best_estimate = best_estimate
        self.error_estimate = error_estimate
        self.cell = cell

    def with_cell(self, cell: int) -> "ToleranceNotMet":
        return ToleranceNotMet(
            f"{self.message} (cell x={cell})",
            best_estimate=self.best_estimate,
            error_estimate=self.error_estimate,
            cell=cell,
        )


class BranchMismatch(ZetaMeansError):
    """Two independent evaluations of a multivalued expression disagree."""


class ExcludedSetError(ZetaMeansError):
    """(u, v) lies in the excluded set E of the exact J_x identity."""


class DegenerateSigmaError(ZetaMeansError):
    """2σ−1 hits {1, 0, −1, …}; use the critical-line path instead."""


class InsufficientData(ZetaMeansError):
    """Not enough usable rows for a least-squares exponent fit."""


def _jsonable(value: Any) -> Any:
    if value is None or isinstance(value, (bool, int, float, str)):
        return value
    if isinstance(value, complex) or type(value).__name__ == "mpc":
        value = complex(value)
        return [value.real, value.imag]
    try:
        return float(value)
    except (TypeError, ValueError):
        return str(value)
