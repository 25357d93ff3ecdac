# algebra/report.py
from __future__ import annotations

import math
from typing import Any, Dict, Iterable, List, Optional

from pydantic import BaseModel, Field


class VerificationReport(BaseModel):
    """Structured outcome of one check."""

    check_id: str = Field(..., description="Stable id of the check, e.g. '02-group-metric/real-add'.")
    anchor: str = Field(..., description="Tag of the definition or theorem this check exercises.")
    description: str = Field("", description="One-line human description.")
    samples: int = Field(0, description="Number of sample points or tuples tried.")
    skipped: int = Field(0, description="Samples skipped as degenerate.")
    max_violation: float = Field(0.0, description="Largest signed violation observed.")
    tolerance: float = Field(0.0, description="Tolerance the violation was compared against.")
    passed: bool = Field(..., description="Verdict.")
    witness: Optional[Dict[str, Any]] = Field(None, description="Serialized inputs of the worst sample.")
    details: Dict[str, Any] = Field(default_factory=dict, description="Check-specific extras.")


def relative_bound(tolerance: float, *magnitudes: float) -> float:
    """tolerance scaled by the largest magnitude involved (never below the absolute value)."""
    return tolerance * max([1.0, *(abs(m) for m in magnitudes if math.isfinite(m))])


def is_non_increasing(values: Iterable[float], slack: float) -> bool:
    seq: List[float] = list(values)
    return all(b <= a + slack for a, b in zip(seq, seq[1:]))


def finite_or_none(value: float) -> Optional[float]:
    """JSON has no infinity; unbounded radii are reported as null."""
    return value if math.isfinite(value) else None
