# derivative/oracle.py
"""Finite-difference cross-check of a derivative on groups that are vector spaces."""
from __future__ import annotations

import logging
import sys
from typing import Callable, List, Optional, Sequence

from algebra.elements import GroupElement
from algebra.errors import ContractViolation, UnsupportedOperation
from algebra.report import VerificationReport, is_non_increasing, relative_bound
from derivative.checks import derivative_at
from derivative.slope import GroupFunction, SlopeFunction
from utils.settings import Tolerances

logger = logging.getLogger(__name__)

ANCHOR_ORACLE = "oracle:matrix-square/frechet-agreement"

DEFAULT_STEPS = (1e-1, 1e-2, 1e-3)
# ulps of |f(a)| lost to cancellation in f(a + hY) - f(a); residual / h amplifies them by 1/h^2
CANCELLATION_ULPS = 16


def frechet_fd_oracle(f: GroupFunction, a: GroupElement, y: GroupElement, h: float) -> GroupElement:
    """(f(a + h Y) - f(a)) / h, written with the group operation and the scalar action."""
    g, k = f.domain, f.codomain
    if not g.has_scalar_action or not k.has_scalar_action:
        raise UnsupportedOperation(f"finite differences need scalar actions on both sides of {f!r}")
    if not h > 0:
        raise ContractViolation(f"step must be positive, got {h}")
    shifted = g.compose(a, g.scalar_action(h, y))
    return k.scalar_action(1.0 / h, k.divide(f(shifted), f(a)))


def check_oracle_agreement(
    s: SlopeFunction,
    y: GroupElement,
    steps: Sequence[float] = DEFAULT_STEPS,
    expected_ratio: Optional[Callable[[GroupElement], float]] = None,
    tolerances: Optional[Tolerances] = None,
) -> VerificationReport:
    """
    Distance between the difference quotient and f'(a)[Y] for each step h.

    The distances must shrink with h. Without `expected_ratio` the last one
    must be below τ_limit; with it (the exact value of distance / h, e.g.
    ||Y^2|| for squaring) every ratio must match within τ_fp relative.
    """
    if not steps:
        raise ContractViolation("steps must not be empty")
    tol = tolerances or Tolerances()
    f, k = s.function, s.codomain
    ordered = sorted((float(h) for h in steps), reverse=True)
    exact = derivative_at(s)(y)

    residuals: List[float] = [k.metric(frechet_fd_oracle(f, s.base_point, y, h), exact) for h in ordered]
    ratios = [r / h for r, h in zip(residuals, ordered)]
    shrinking = is_non_increasing(residuals, tol.fp)
    target = None
    if expected_ratio is None:
        passed = shrinking and residuals[-1] < tol.limit
        violation = residuals[-1] - tol.limit
    else:
        # residual = h * ratio
        target = float(expected_ratio(y))
        scale = max(1.0, k.norm(f(s.base_point)))
        excess = [
            abs(q - target) - relative_bound(tol.fp, target) - CANCELLATION_ULPS * sys.float_info.epsilon * scale / h**2
            for q, h in zip(ratios, ordered)
        ]
        passed = shrinking and max(excess) <= 0
        violation = max(excess)
    if not passed:
        logger.warning(f"finite differences disagree with {s.label}: residuals={residuals}, ratios={ratios}")
    return VerificationReport(
        check_id="check_oracle_agreement",
        anchor=ANCHOR_ORACLE,
        description=f"difference quotients of {f.label} approach {s.label} at the base point",
        samples=len(ordered),
        max_violation=violation,
        tolerance=tol.limit if target is None else tol.fp,
        passed=passed,
        witness=None if passed else {"y": s.domain.serialize(y), "steps": ordered, "residuals": residuals},
        details={"steps": ordered, "residuals": residuals, "ratios": ratios, "expected_ratio": target},
    )
