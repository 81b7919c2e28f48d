"""Verdicts returned by every check in the workbench."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any

from .errors import ShapeMismatch
from .tensor import Operator, count_differences, first_difference


@dataclass
class CheckReport:
    """Outcome of one exact (or tolerance-gated) check.

    ``holds`` is true exactly when ``residual_nonzero == 0``; ``witness`` is
    populated exactly when the check fails.  ``details`` carries sub-results
    such as the per-equality residuals of a chained identity.
    """

    equation: str
    holds: bool
    residual_nonzero: int
    witness: dict | None = None
    details: dict[str, Any] = field(default_factory=dict)

    def __post_init__(self):
        if self.holds != (self.residual_nonzero == 0):
            raise ValueError("holds must agree with residual_nonzero == 0")
        if self.holds != (self.witness is None):
            raise ValueError("witness must be present exactly when the check fails")

    def __bool__(self) -> bool:
        return self.holds

    def to_dict(self) -> dict:
        return {
            "equation": self.equation,
            "holds": self.holds,
            "residual_nonzero": self.residual_nonzero,
            "witness": _jsonable(self.witness),
            "details": _jsonable(self.details),
        }


def _jsonable(x):
    if isinstance(x, Fraction):
        return str(x)
    if isinstance(x, dict):
        return {str(k): _jsonable(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [_jsonable(v) for v in x]
    if isinstance(x, CheckReport):
        return x.to_dict()
    return x


def compare(equation: str, lhs: Operator, rhs: Operator, **details) -> CheckReport:
    """Entrywise comparison of two operators with the same matrix size."""
    if (lhs.rows, lhs.cols) != (rhs.rows, rhs.cols):
        raise ShapeMismatch(f"{equation}: sides have different sizes")
    diff = first_difference(lhs, rhs)
    if diff is None:
        return CheckReport(equation, True, 0, None, details)
    row, col, x, y = diff
    return CheckReport(
        equation,
        False,
        count_differences(lhs, rhs),
        {"row": row, "column": col, "lhs": x, "rhs": y},
        details,
    )


def combine(equation: str, parts: dict[str, CheckReport], **details) -> CheckReport:
    """Conjunction of sub-reports; the witness is the first failing part's."""
    residual = sum(p.residual_nonzero for p in parts.values())
    witness = None
    for name, p in parts.items():
        if not p.holds:
            witness = {"part": name, **p.witness}
            break
    details = {**details, "parts": {k: v.to_dict() for k, v in parts.items()}}
    return CheckReport(equation, residual == 0, residual, witness, details)


def failure(equation: str, reason: str, **witness) -> CheckReport:
    """A failed report for a precondition that could not be met."""
    return CheckReport(equation, False, 1, {"error": reason, **witness})
