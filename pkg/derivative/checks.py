# derivative/checks.py
"""
Numerical certification of slope functions: the factorization identity near
the base point, continuity of the slope at the base point, agreement of two
slopes along a root sequence, and continuity of the function itself.
"""
from __future__ import annotations

import logging
from typing import List, Optional, Sequence

from algebra.axioms import WorstCase
from algebra.divisibility import root_indices
from algebra.elements import GroupElement
from algebra.errors import ContractViolation, UnsupportedOperation
from algebra.metric_group import Seed, spawn_seeds
from algebra.report import VerificationReport, finite_or_none, is_non_increasing
from derivative.slope import DifferentiabilityReport, GroupFunction, SlopeFunction
from homspace.homomorphism import Homomorphism
from homspace.metric import hom_metric
from homspace.probe import ProbeSet, standard_probe
from utils.settings import Tolerances

logger = logging.getLogger(__name__)

ANCHOR_DIFFERENTIABLE = "definition:caratheodory-derivative"
ANCHOR_UNIQUENESS = "theorem:derivative-uniqueness"
ANCHOR_CONTINUITY = "theorem:differentiable-implies-continuous"

# slope continuity is measured on unit-scale probe points
CONTINUITY_PROBE_COUNT = 32
CONTINUITY_PROBE_SCALES = (1e-2, 1.0)
# sampled x per radius whose slope is compared against the derivative
CONTINUITY_SUBSET = 16


def _same_point(x: GroupElement, y: GroupElement, s: SlopeFunction) -> bool:
    return s.domain.metric(x, y) == 0.0


def _require_factors(f: GroupFunction, s: SlopeFunction) -> None:
    if s.function is not f:
        raise ContractViolation(f"{s!r} does not factor {f!r}")


def _descending_radii(radii: Sequence[float], s: SlopeFunction) -> List[float]:
    if not radii:
        raise ContractViolation("radii must not be empty")
    ordered = sorted((float(r) for r in radii), reverse=True)
    if ordered[-1] <= 0:
        raise ContractViolation(f"radii must be positive, got {ordered[-1]}")
    if ordered[0] >= s.neighborhood_radius:
        raise ContractViolation(
            f"radius {ordered[0]} is outside the neighbourhood of {s!r} (radius {s.neighborhood_radius})"
        )
    return ordered


def derivative_at(s: SlopeFunction) -> Homomorphism:
    """The derivative f'(a) = slope_at(a)."""
    return s.slope_at(s.base_point)


def factorization_residual(s: SlopeFunction, x: GroupElement) -> float:
    """d_H(f(x) * f(a)^-1, slope_at(x)[x * a^-1])."""
    g, h, f, a = s.domain, s.codomain, s.function, s.base_point
    return h.metric(h.divide(f(x), f(a)), s.slope_at(x)(g.divide(x, a)))


def check_differentiable(
    f: GroupFunction,
    s: SlopeFunction,
    radii: Sequence[float],
    seed: Seed,
    count: int,
    tolerances: Optional[Tolerances] = None,
    probe: Optional[ProbeSet] = None,
) -> DifferentiabilityReport:
    """
    Samples `count` points at each radius around a, records the factorization
    residual of every point and, per radius, the largest hom_metric between
    slope_at(x) and slope_at(a). Passes when every residual is within
    τ_fact (absolute plus relative) and the profile does not increase and
    ends below τ_limit.
    """
    _require_factors(f, s)
    if count < 1:
        raise ContractViolation(f"count must be >= 1, got {count}")
    tol = tolerances or Tolerances()
    ordered = _descending_radii(radii, s)
    g, h, a = s.domain, s.codomain, s.base_point
    near_seed, probe_seed = spawn_seeds(seed, 2)
    if probe is None:
        probe = standard_probe(g, probe_seed, CONTINUITY_PROBE_COUNT, CONTINUITY_PROBE_SCALES)

    derivative = derivative_at(s)
    f_a = f(a)
    worst = WorstCase()
    profile: List[float] = []
    for r in ordered:
        points = g.sample_near(a, r, near_seed, count)
        for x in points:
            fx = f(x)
            lhs = h.divide(fx, f_a)
            rhs = s.slope_at(x)(g.divide(x, a))
            worst.observe(
                h.metric(lhs, rhs),
                tol.factorization_bound(max(h.norm(fx), h.norm(f_a))),
                lambda: {"radius": r, "x": g.serialize(x), "f(x)f(a)^-1": h.serialize(lhs), "slope[xa^-1]": h.serialize(rhs)},
            )
        profile.append(max(hom_metric(s.slope_at(x), derivative, probe) for x in points[:CONTINUITY_SUBSET]))

    continuous = is_non_increasing(profile, tol.fp) and profile[-1] < tol.limit
    passed = worst.passed and continuous
    if not continuous:
        logger.warning(f"{s!r} is not continuous at the base point on the probe: {profile}")
    elif not worst.passed:
        logger.warning(f"{s!r} violates the factorization identity: witness={worst.witness}")
    logger.debug(f"check_differentiable {s.label}: residual={worst.max_violation:.3e}, profile={profile}")

    witness = worst.witness if not worst.passed else (None if continuous else {"radii": ordered, "profile": profile})
    return DifferentiabilityReport(
        check_id="check_differentiable",
        anchor=ANCHOR_DIFFERENTIABLE,
        description=f"{s.label} factors {f.label} near {g.serialize(a)} and is continuous there",
        samples=count * len(ordered),
        max_violation=worst.max_violation,
        tolerance=tol.fact,
        passed=passed,
        witness=witness,
        details={
            "relative_tolerance": tol.fact_rel,
            "continuity_limit": tol.limit,
            "neighborhood_radius": finite_or_none(s.neighborhood_radius),
            "probe": probe.description,
        },
        max_factorization_residual=worst.max_violation,
        radii_swept=ordered,
        continuity_profile=list(zip(ordered, profile)),
    )


def uniqueness_probe(
    s1: SlopeFunction,
    s2: SlopeFunction,
    z: GroupElement,
    n_max: int,
    probe: ProbeSet,
    tolerances: Optional[Tolerances] = None,
) -> VerificationReport:
    """
    Follows x_n = z^(1/n) * a for n = 1, 2, 4, ..., n_max. Passes when the two
    derivatives are within τ_limit of each other on the probe and each slope
    sequence approaches its own derivative within τ_limit.
    """
    if s1.function is not s2.function:
        raise ContractViolation(f"{s1!r} and {s2!r} factor different functions")
    if not _same_point(s1.base_point, s2.base_point, s1):
        raise ContractViolation(f"{s1!r} and {s2!r} have different base points")
    g = s1.domain
    if not g.claims_divisible or not g.has_nth_root:
        raise UnsupportedOperation(f"uniqueness probe needs a divisible domain, '{g.group_id}' is not")
    if n_max < 1:
        raise ContractViolation(f"n_max must be >= 1, got {n_max}")
    tol = tolerances or Tolerances()
    a = s1.base_point
    d1, d2 = derivative_at(s1), derivative_at(s2)

    at_base = hom_metric(d1, d2, probe)
    indices = root_indices(n_max)
    first: List[float] = []
    second: List[float] = []
    for n in indices:
        x_n = g.compose(g.nth_root(z, n), a)
        first.append(hom_metric(s1.slope_at(x_n), d1, probe))
        second.append(hom_metric(s2.slope_at(x_n), d2, probe))

    violation = max(at_base, first[-1], second[-1]) - tol.limit
    passed = violation < 0
    if not passed:
        logger.warning(
            f"uniqueness probe failed for {s1.label} vs {s2.label}: d~ at a = {at_base:.3e}, "
            f"tails = {first[-1]:.3e}, {second[-1]:.3e}"
        )
    return VerificationReport(
        check_id="uniqueness_probe",
        anchor=ANCHOR_UNIQUENESS,
        description=f"{s1.label} and {s2.label} have the same derivative at {g.serialize(a)}",
        samples=len(indices) * len(probe),
        max_violation=violation,
        tolerance=tol.limit,
        passed=passed,
        witness=None if passed else {"z": g.serialize(z), "a": g.serialize(a), "hom_metric_at_base": at_base},
        details={
            "hom_metric_at_base": at_base,
            "indices": indices,
            "first": first,
            "second": second,
            "probe": probe.description,
        },
    )


def continuity_from_differentiability(
    f: GroupFunction,
    s: SlopeFunction,
    radii: Sequence[float],
    seed: Seed,
    count: int,
    tolerances: Optional[Tolerances] = None,
) -> VerificationReport:
    """Empirical modulus of continuity of f at a: max d_H(f(x), f(a)) over d_G(x, a) <= r."""
    _require_factors(f, s)
    tol = tolerances or Tolerances()
    ordered = _descending_radii(radii, s)
    g, h, a = s.domain, s.codomain, s.base_point
    f_a = f(a)
    modulus = [max(h.metric(f(x), f_a) for x in g.sample_near(a, r, seed, count)) for r in ordered]

    monotone = is_non_increasing(modulus, tol.fp)
    passed = monotone and modulus[-1] < tol.limit
    if not passed:
        logger.warning(f"{f.label} does not look continuous at {g.serialize(a)}: {modulus}")
    return VerificationReport(
        check_id="continuity_from_differentiability",
        anchor=ANCHOR_CONTINUITY,
        description=f"{f.label} is continuous at {g.serialize(a)}",
        samples=count * len(ordered),
        max_violation=modulus[-1] - tol.limit,
        tolerance=tol.limit,
        passed=passed,
        witness=None if passed else {"radii": ordered, "modulus": modulus},
        details={"radii": ordered, "modulus": modulus, "monotone": monotone},
    )
