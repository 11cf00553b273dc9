"""Numeric results that carry their own uncertainty and provenance."""

from __future__ import annotations

import math
from dataclasses import dataclass, field

__all__ = ["LimitEstimate"]


@dataclass(frozen=True)
class LimitEstimate:
    """A value with a standard error and how it was produced.

    std_error is 0 only for closed-form or fixed-tolerance quadrature
    entries; Monte Carlo entries always report the sample standard error.
    """

    value: float
    std_error: float
    method: str  # "closed-form" | "quadrature" | "monte-carlo"
    samples: int = 0
    seed: tuple = field(default=())

    def __post_init__(self):
        if self.std_error < 0:
            raise ValueError("std_error must be nonnegative")
        if self.method not in ("closed-form", "quadrature", "monte-carlo"):
            raise ValueError(f"unknown method {self.method!r}")
        if self.method == "monte-carlo" and self.samples <= 0:
            raise ValueError("monte-carlo estimates must record their sample count")

    def z_against(self, other: "LimitEstimate") -> float:
        """Gap in combined standard errors (inf if both SEs are zero)."""
        se = math.hypot(self.std_error, other.std_error)
        if se == 0.0:
            return math.inf if self.value != other.value else 0.0
        return abs(self.value - other.value) / se

    def to_dict(self) -> dict:
        return {
            "value": self.value,
            "std_error": self.std_error,
            "method": self.method,
            "samples": self.samples,
            "seed": list(self.seed),
        }
