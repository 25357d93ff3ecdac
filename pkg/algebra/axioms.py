# algebra/axioms.py
"""
Sampled checks of the metric-space axioms, the group axioms and the two
group-metric conditions (product bound and Lipschitz right translation).
"""
from __future__ import annotations

import logging
import math
from typing import Any, Callable, Dict, Optional

from algebra.elements import GroupElement
from algebra.errors import ContractViolation, EstimationError
from algebra.metric_group import MetricGroupSpec, Seed, TranslationConstant, spawn_seeds
from algebra.report import VerificationReport, relative_bound
from utils.settings import Tolerances

logger = logging.getLogger(__name__)

ANCHOR_METRIC = "definition:metric-space/axioms"
ANCHOR_GROUP = "definition:group/axioms"
ANCHOR_PRODUCT_BOUND = "definition:group-metric/product-bound"
ANCHOR_TRANSLATION = "definition:group-metric/translation-constant"


class WorstCase:
    """Keeps the largest violation and the witness of the worst excess over its allowance."""

    def __init__(self):
        self.max_violation = -math.inf
        self.worst_excess = -math.inf
        self.failures = 0
        self.witness: Optional[Dict[str, Any]] = None

    def observe(self, violation: float, allowed: float, witness: Callable[[], Dict[str, Any]]) -> None:
        if not math.isfinite(violation):
            violation = math.inf
        self.max_violation = max(self.max_violation, violation)
        excess = violation - allowed
        if excess > 0:
            self.failures += 1
        if excess > self.worst_excess:
            self.worst_excess = excess
            if excess > 0 or self.witness is None:
                self.witness = witness()

    @property
    def passed(self) -> bool:
        return self.failures == 0

    @classmethod
    def combine(cls, *cases: "WorstCase") -> "WorstCase":
        """Merged view; the witness comes from the first failing case in argument order."""
        merged = cls()
        for case in cases:
            merged.max_violation = max(merged.max_violation, case.max_violation)
            merged.failures += case.failures
            if merged.witness is None and case.failures:
                merged.witness = case.witness
        return merged

    def report(self, **fields) -> VerificationReport:
        if math.isfinite(self.max_violation):
            max_violation = self.max_violation
        else:
            max_violation = 1e308 if self.max_violation > 0 else 0.0
        report = VerificationReport(
            max_violation=max_violation,
            passed=self.passed,
            witness=self.witness if not self.passed else None,
            **fields,
        )
        if not report.passed:
            logger.warning(f"{report.check_id} failed: {self.failures} violation(s), witness={report.witness}")
        return report


def _require_count(count: int) -> None:
    if count < 1:
        raise ContractViolation(f"count must be >= 1, got {count}")


def check_metric_axioms(
    spec: MetricGroupSpec, seed: Seed, count: int, tolerances: Optional[Tolerances] = None
) -> VerificationReport:
    """Non-negativity, d(x,x)=0 and exact symmetry on pairs; triangle inequality on triples."""
    _require_count(count)
    tol = tolerances or Tolerances()
    xs_seed, ys_seed, zs_seed = spawn_seeds(seed, 3)
    xs, ys, zs = (spec.sample(s, count) for s in (xs_seed, ys_seed, zs_seed))
    positivity, self_distance, symmetry, triangle = WorstCase(), WorstCase(), WorstCase(), WorstCase()
    ser = spec.serialize

    for x, y, z in zip(xs, ys, zs):
        dxy, dyx = spec.metric(x, y), spec.metric(y, x)
        dxx = spec.metric(x, x)
        dyz, dxz = spec.metric(y, z), spec.metric(x, z)

        self_distance.observe(dxx, 0.0, lambda: {"axiom": "self-distance", "x": ser(x), "value": dxx})
        positivity.observe(-dxy, 0.0, lambda: {"axiom": "non-negativity", "x": ser(x), "y": ser(y), "value": dxy})
        symmetry.observe(
            abs(dxy - dyx), 0.0,
            lambda: {"axiom": "symmetry", "x": ser(x), "y": ser(y), "d_xy": dxy, "d_yx": dyx},
        )
        triangle.observe(
            dxz - dxy - dyz,
            relative_bound(tol.fp, dxz, dxy, dyz),
            lambda: {"axiom": "triangle", "x": ser(x), "y": ser(y), "z": ser(z), "d_xz": dxz, "d_xy": dxy, "d_yz": dyz},
        )

    worst = WorstCase.combine(positivity, self_distance, symmetry, triangle)
    return worst.report(
        check_id="check_metric_axioms",
        anchor=ANCHOR_METRIC,
        description=f"metric axioms of {spec.label}",
        samples=count,
        tolerance=tol.fp,
    )


def check_group_axioms(
    spec: MetricGroupSpec, seed: Seed, count: int, tolerances: Optional[Tolerances] = None
) -> VerificationReport:
    """Associativity, identity and inverse on sampled triples; commutativity when the group is Abelian."""
    _require_count(count)
    tol = tolerances or Tolerances()
    xs_seed, ys_seed, zs_seed = spawn_seeds(seed, 3)
    xs, ys, zs = (spec.sample(s, count) for s in (xs_seed, ys_seed, zs_seed))
    e = spec.identity
    worst = WorstCase()
    ser = spec.serialize

    for x, y, z in zip(xs, ys, zs):
        xy = spec.compose(x, y)
        left = spec.compose(xy, z)
        right = spec.compose(x, spec.compose(y, z))
        scale = max(spec.norm(x), spec.norm(y), spec.norm(z), spec.norm(left))
        allowed = relative_bound(tol.fp, scale)

        assoc = spec.metric(left, right)
        worst.observe(assoc, allowed, lambda: {"axiom": "associativity", "x": ser(x), "y": ser(y), "z": ser(z), "value": assoc})

        ident = max(spec.metric(spec.compose(x, e), x), spec.metric(spec.compose(e, x), x))
        worst.observe(ident, allowed, lambda: {"axiom": "identity", "x": ser(x), "value": ident})

        x_inv = spec.inverse(x)
        inv = max(spec.norm(spec.compose(x, x_inv)), spec.norm(spec.compose(x_inv, x)))
        worst.observe(inv, relative_bound(tol.fp, scale, spec.norm(x_inv)), lambda: {"axiom": "inverse", "x": ser(x), "value": inv})

        if spec.is_abelian:
            comm = spec.metric(xy, spec.compose(y, x))
            worst.observe(comm, allowed, lambda: {"axiom": "commutativity", "x": ser(x), "y": ser(y), "value": comm})

    return worst.report(
        check_id="check_group_axioms",
        anchor=ANCHOR_GROUP,
        description=f"group axioms of {spec.label}" + (" (Abelian)" if spec.is_abelian else ""),
        samples=count,
        tolerance=tol.fp,
    )


def check_group_metric_axiom1(
    spec: MetricGroupSpec, seed: Seed, count: int, tolerances: Optional[Tolerances] = None
) -> VerificationReport:
    """d(x*y, e) <= d(x,e) d(y,e) + d(x,e) + d(y,e) on sampled pairs."""
    _require_count(count)
    tol = tolerances or Tolerances()
    xs_seed, ys_seed = spawn_seeds(seed, 2)
    xs, ys = spec.sample(xs_seed, count), spec.sample(ys_seed, count)
    worst = WorstCase()
    ser = spec.serialize

    for x, y in zip(xs, ys):
        dx, dy = spec.norm(x), spec.norm(y)
        lhs = spec.norm(spec.compose(x, y))
        rhs = dx * dy + dx + dy
        worst.observe(
            lhs - rhs,
            relative_bound(tol.fp, rhs),
            lambda: {"x": ser(x), "y": ser(y), "lhs": lhs, "rhs": rhs},
        )

    return worst.report(
        check_id="check_group_metric_axiom1",
        anchor=ANCHOR_PRODUCT_BOUND,
        description=f"product bound d(xy,e) <= d(x,e)d(y,e)+d(x,e)+d(y,e) on {spec.label}",
        samples=count,
        tolerance=tol.fp,
    )


def estimate_translation_constant(
    spec: MetricGroupSpec, k: GroupElement, seed: Seed, count: int
) -> TranslationConstant:
    """
    c_k = max over sampled pairs of d(x*k, y*k) / d(x, y).

    Pairs with d(x, y) = 0 are skipped and counted. When the group knows c_k in
    closed form that value is returned and flagged exact; the observed maximum
    is kept alongside either way. The observed maximum over a fixed seed never
    decreases as count grows, since each stream keeps its prefix.
    """
    _require_count(count)
    if not spec.claims_group_metric:
        raise ContractViolation(f"group '{spec.group_id}' does not claim a group metric")
    k.require_group(spec.group_id)

    xs_seed, ys_seed = spawn_seeds(seed, 2)
    xs, ys = spec.sample(xs_seed, count), spec.sample(ys_seed, count)
    observed = 0.0
    skipped = 0
    for x, y in zip(xs, ys):
        dxy = spec.metric(x, y)
        if dxy == 0:
            skipped += 1
            continue
        observed = max(observed, spec.metric(spec.compose(x, k), spec.compose(y, k)) / dxy)

    if skipped == count:
        raise EstimationError(f"all {count} sampled pairs of '{spec.group_id}' were degenerate")

    if spec.translation_constant_fn is not None:
        c_k, exact = float(spec.translation_constant_fn(k.payload)), True
    else:
        c_k, exact = observed, False
    logger.debug(f"translation constant on {spec.group_id}: c_k={c_k} observed={observed} skipped={skipped}")
    return TranslationConstant(k=k, c_k=c_k, exact=exact, observed=observed, samples=count, skipped=skipped)


def check_translation_constant(
    spec: MetricGroupSpec, k: GroupElement, seed: Seed, count: int, tolerances: Optional[Tolerances] = None
) -> VerificationReport:
    """
    Report form: c_k bounds every observed ratio within τ_fp. A closed form
    must also be attained, so the observed maximum has to match it within
    τ_fp relative.
    """
    tol = tolerances or Tolerances()
    constant = estimate_translation_constant(spec, k, seed, count)
    violation = constant.observed - constant.c_k
    if constant.exact:
        violation = abs(violation)
    allowed = relative_bound(tol.fp, constant.c_k)
    passed = violation <= allowed
    return VerificationReport(
        check_id="estimate_translation_constant",
        anchor=ANCHOR_TRANSLATION,
        description=f"right-translation constant on {spec.label}",
        samples=constant.samples,
        skipped=constant.skipped,
        max_violation=violation,
        tolerance=tol.fp,
        passed=passed,
        witness=None if passed else {"k": spec.serialize(k), "c_k": constant.c_k, "observed": constant.observed},
        details={"k": spec.serialize(k), "c_k": constant.c_k, "exact": constant.exact, "observed": constant.observed},
    )
