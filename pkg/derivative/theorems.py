# derivative/theorems.py
"""
Evaluation-level checks of the sum, scalar-multiple and chain rules.

Each check builds the combined slope, confirms it factors the combined
function on sampled points, sweeps the radii with check_differentiable so a
combined slope that is not continuous at the base point fails, and compares
its derivative on a probe with the value the rule predicts from the
derivatives of the parts.
"""
from __future__ import annotations

import logging
from typing import Callable, Optional, Sequence

from algebra.axioms import WorstCase
from algebra.elements import GroupElement
from algebra.metric_group import Seed
from algebra.report import VerificationReport, relative_bound
from derivative.checks import check_differentiable, derivative_at
from derivative.combinators import slope_chain, slope_scale, slope_sum
from derivative.slope import SlopeFunction
from homspace.probe import ProbeSet
from utils.settings import DEFAULT_RADII, Tolerances

logger = logging.getLogger(__name__)

ANCHOR_SUM_RULE = "theorem:sum-rule"
ANCHOR_SCALE_RULE = "theorem:scalar-multiple-rule"
ANCHOR_CHAIN_RULE = "theorem:chain-rule"

# factorization samples stay within this many sampling scales of the base point
FACTOR_REACH = 1.0


def _rule_report(
    check_id: str,
    anchor: str,
    combined: SlopeFunction,
    expected: Callable[[GroupElement], GroupElement],
    probe: ProbeSet,
    seed: Seed,
    count: int,
    tol: Tolerances,
    radii: Sequence[float],
) -> VerificationReport:
    g, h, f, a = combined.domain, combined.codomain, combined.function, combined.base_point

    factor = WorstCase()
    reach = min(FACTOR_REACH * g.sampling_scale, 0.5 * combined.neighborhood_radius)
    f_a = f(a)
    for x in g.sample_near(a, reach, seed, count):
        fx = f(x)
        lhs = h.divide(fx, f_a)
        rhs = combined.slope_at(x)(g.divide(x, a))
        factor.observe(
            h.metric(lhs, rhs),
            tol.factorization_bound(max(h.norm(fx), h.norm(f_a))),
            lambda: {"part": "factorization", "x": g.serialize(x), "lhs": h.serialize(lhs), "rhs": h.serialize(rhs)},
        )

    evaluation = WorstCase()
    derivative = derivative_at(combined)
    for t in probe:
        got, want = derivative(t), expected(t)
        evaluation.observe(
            h.metric(got, want),
            relative_bound(tol.fp, h.norm(got), h.norm(want)),
            lambda: {"part": "evaluation", "t": g.serialize(t), "derivative": h.serialize(got), "expected": h.serialize(want)},
        )

    # only radii inside the neighbourhood of the combined slope are swept
    inside = [r for r in radii if r < combined.neighborhood_radius] or [combined.neighborhood_radius / 2]
    sweep = check_differentiable(f, combined, inside, seed, count, tol)

    worst = WorstCase.combine(factor, evaluation)
    logger.debug(
        f"{check_id} {combined.label}: factorization={factor.max_violation:.3e}, "
        f"evaluation={evaluation.max_violation:.3e}, continuity={sweep.continuity_profile[-1][1]:.3e}"
    )
    report = worst.report(
        check_id=check_id,
        anchor=anchor,
        description=f"derivative of {f.label} at {g.serialize(a)} follows the rule",
        samples=count + len(probe) + sweep.samples,
        tolerance=tol.fp,
        details={
            "slope": combined.label,
            "max_factorization_residual": max(factor.max_violation, sweep.max_factorization_residual),
            "max_evaluation_error": evaluation.max_violation,
            "factorization_reach": reach,
            "continuity_profile": sweep.continuity_profile,
            "probe": probe.description,
        },
    )
    if report.passed and not sweep.passed:
        logger.warning(f"{check_id} failed: combined slope {combined.label} fails check_differentiable")
        return report.model_copy(update={"passed": False, "witness": {"part": "differentiability", **(sweep.witness or {})}})
    return report


def check_sum_rule(
    s_f: SlopeFunction,
    s_g: SlopeFunction,
    probe: ProbeSet,
    seed: Seed,
    count: int,
    tolerances: Optional[Tolerances] = None,
    radii: Sequence[float] = DEFAULT_RADII,
) -> VerificationReport:
    """(f + g)'(a)[t] = f'(a)[t] * g'(a)[t] on the probe."""
    tol = tolerances or Tolerances()
    combined = slope_sum(s_f, s_g)
    h = combined.codomain
    df, dg = derivative_at(s_f), derivative_at(s_g)
    return _rule_report(
        "check_sum_rule", ANCHOR_SUM_RULE, combined, lambda t: h.compose(df(t), dg(t)), probe, seed, count, tol, radii
    )


def check_scale_rule(
    alpha: float,
    s_f: SlopeFunction,
    probe: ProbeSet,
    seed: Seed,
    count: int,
    tolerances: Optional[Tolerances] = None,
    radii: Sequence[float] = DEFAULT_RADII,
) -> VerificationReport:
    """(alpha f)'(a)[t] = alpha . f'(a)[t] on the probe."""
    tol = tolerances or Tolerances()
    combined = slope_scale(alpha, s_f)
    h = combined.codomain
    df = derivative_at(s_f)
    return _rule_report(
        "check_scale_rule", ANCHOR_SCALE_RULE, combined, lambda t: h.scalar_action(alpha, df(t)), probe, seed, count, tol, radii
    )


def check_chain_rule(
    s_g: SlopeFunction,
    s_f: SlopeFunction,
    probe: ProbeSet,
    seed: Seed,
    count: int,
    tolerances: Optional[Tolerances] = None,
    radii: Sequence[float] = DEFAULT_RADII,
) -> VerificationReport:
    """(g o f)'(a)[t] = g'(f(a))[f'(a)[t]] on the probe."""
    tol = tolerances or Tolerances()
    combined = slope_chain(s_g, s_f, seed=seed)
    dg, df = derivative_at(s_g), derivative_at(s_f)
    return _rule_report(
        "check_chain_rule", ANCHOR_CHAIN_RULE, combined, lambda t: dg(df(t)), probe, seed, count, tol, radii
    )
