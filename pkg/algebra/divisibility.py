# algebra/divisibility.py
from __future__ import annotations

import logging
from typing import List, Optional

from algebra.axioms import WorstCase
from algebra.elements import GroupElement
from algebra.errors import ContractViolation, UnsupportedOperation
from algebra.metric_group import MetricGroupSpec, Seed
from algebra.report import VerificationReport, relative_bound
from utils.settings import Tolerances

logger = logging.getLogger(__name__)

ANCHOR_ROOTS = "definition:divisible-group/unique-root"
ANCHOR_ROOT_LIMIT = "definition:divisible-group/root-limit"


def _require_divisible(spec: MetricGroupSpec) -> None:
    if not spec.claims_divisible or not spec.has_nth_root:
        raise UnsupportedOperation(f"group '{spec.group_id}' is not registered as divisible")


def nth_root(spec: MetricGroupSpec, g: GroupElement, n: int) -> GroupElement:
    """The root x with x^n = g; deterministic (the circle uses the principal branch)."""
    _require_divisible(spec)
    return spec.nth_root(g, n)


def root_indices(n_max: int) -> List[int]:
    """1, 2, 4, ... up to n_max, always ending at n_max."""
    indices, n = [], 1
    while n < n_max:
        indices.append(n)
        n *= 2
    indices.append(n_max)
    return indices


def check_root_roundtrip(
    spec: MetricGroupSpec,
    seed: Seed,
    count: int,
    n_max: int = 64,
    tolerances: Optional[Tolerances] = None,
) -> VerificationReport:
    """n-fold power of nth_root(g, n) recovers g for every n <= n_max on sampled g."""
    _require_divisible(spec)
    if count < 1 or n_max < 1:
        raise ContractViolation("count and n_max must be positive")
    tol = tolerances or Tolerances()
    worst = WorstCase()
    for g in spec.sample(seed, count):
        magnitude = spec.norm(g)
        for n in range(1, n_max + 1):
            root = spec.nth_root(g, n)
            error = spec.metric(spec.power(root, n), g)
            worst.observe(
                error,
                relative_bound(tol.root, magnitude),
                lambda: {"g": spec.serialize(g), "n": n, "root": spec.serialize(root), "error": error},
            )
    return worst.report(
        check_id="check_root_roundtrip",
        anchor=ANCHOR_ROOTS,
        description=f"(g^(1/n))^n = g for n <= {n_max} on {spec.label}",
        samples=count * n_max,
        tolerance=tol.root,
        details={"n_max": n_max},
    )


def check_root_limit(
    spec: MetricGroupSpec,
    x: GroupElement,
    n_max: int,
    tolerances: Optional[Tolerances] = None,
) -> VerificationReport:
    """
    d(x^(1/n), e) along n = 1, 2, 4, ..., n_max must not increase (and must
    strictly decrease while still above τ_fp) and end below root_limit.
    """
    _require_divisible(spec)
    if n_max < 2:
        raise ContractViolation(f"n_max must be >= 2, got {n_max}")
    tol = tolerances or Tolerances()
    indices = root_indices(n_max)
    distances = [spec.norm(spec.nth_root(x, n)) for n in indices]

    envelope_ok = True
    for prev, cur in zip(distances, distances[1:]):
        if cur > prev + tol.fp or (prev > tol.fp and not cur < prev):
            envelope_ok = False
            break
    tail = distances[-1]
    passed = envelope_ok and tail < tol.root_limit
    if not passed:
        logger.warning(f"root limit failed on {spec.group_id}: distances={distances}")
    return VerificationReport(
        check_id="check_root_limit",
        anchor=ANCHOR_ROOT_LIMIT,
        description=f"x^(1/n) -> e on {spec.label}",
        samples=len(indices),
        max_violation=tail - tol.root_limit,
        tolerance=tol.root_limit,
        passed=passed,
        witness=None if passed else {"x": spec.serialize(x), "distances": distances},
        details={"x": spec.serialize(x), "n": indices, "distances": distances, "decreasing": envelope_ok},
    )
