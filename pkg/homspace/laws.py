# homspace/laws.py
"""
Sampled law checks on Hom(G; H): the homomorphism law, the Abelian group
structure under (+), continuity at the identity, and the pointwise-to-metric
convergence probe.
"""
from __future__ import annotations

import logging
from typing import List, Optional, Sequence

from algebra.axioms import WorstCase
from algebra.errors import ContractViolation
from algebra.metric_group import Seed, spawn_seeds
from algebra.report import VerificationReport, is_non_increasing, relative_bound
from homspace.homomorphism import Homomorphism, hom_inverse, oplus, sigma
from homspace.metric import hom_metric
from homspace.probe import ProbeSet
from utils.settings import Tolerances

logger = logging.getLogger(__name__)

ANCHOR_HOMOMORPHISM = "definition:hom-space/homomorphism"
ANCHOR_CLOSURE = "proposition:hom-space/oplus-closure"
ANCHOR_COMPOSE = "proposition:hom-space/compose-closure"
ANCHOR_ABELIAN = "proposition:hom-space/abelian-group"
ANCHOR_CONTINUITY = "definition:hom-space/continuity-at-identity"
ANCHOR_POINTWISE = "theorem:hom-space/pointwise-implies-metric"


def check_homomorphism_law(
    h: Homomorphism, seed: Seed, count: int, tolerances: Optional[Tolerances] = None
) -> VerificationReport:
    """d_H(h(x*y), h(x)*h(y)) <= τ_hom (relative) on sampled pairs, plus h(e) = e_H."""
    if count < 1:
        raise ContractViolation(f"count must be >= 1, got {count}")
    tol = tolerances or Tolerances()
    g, k = h.domain, h.codomain
    xs_seed, ys_seed = spawn_seeds(seed, 2)
    xs, ys = g.sample(xs_seed, count), g.sample(ys_seed, count)
    worst = WorstCase()

    at_identity = k.norm(h(g.identity))
    worst.observe(at_identity, tol.fp, lambda: {"x": g.serialize(g.identity), "h(e)": k.serialize(h(g.identity))})

    for x, y in zip(xs, ys):
        lhs = h(g.compose(x, y))
        rhs = k.compose(h(x), h(y))
        residual = k.metric(lhs, rhs)
        worst.observe(
            residual,
            relative_bound(tol.hom, k.norm(lhs), k.norm(rhs)),
            lambda: {"x": g.serialize(x), "y": g.serialize(y), "h(xy)": k.serialize(lhs), "h(x)h(y)": k.serialize(rhs)},
        )

    return worst.report(
        check_id="check_homomorphism_law",
        anchor=ANCHOR_HOMOMORPHISM,
        description=f"h(xy) = h(x)h(y) for {h.label}",
        samples=count,
        tolerance=tol.hom,
    )


def check_group_laws_on_hom(
    phi: Homomorphism,
    psi: Homomorphism,
    chi: Homomorphism,
    probe: ProbeSet,
    tolerances: Optional[Tolerances] = None,
) -> VerificationReport:
    """Associativity and commutativity of (+), neutrality of sigma and phi (+) phi^-1 = sigma, pointwise on the probe."""
    tol = tolerances or Tolerances()
    for other in (psi, chi):
        if other.domain_id != phi.domain_id or other.codomain_id != phi.codomain_id:
            raise ContractViolation(f"{other!r} is not in the space of {phi!r}")
    h = phi.codomain
    neutral = sigma(phi.domain, phi.codomain)
    left_assoc, right_assoc = oplus(oplus(phi, psi), chi), oplus(phi, oplus(psi, chi))
    phi_psi, psi_phi = oplus(phi, psi), oplus(psi, phi)
    with_sigma = oplus(phi, neutral)
    cancelled = oplus(phi, hom_inverse(phi))

    assoc, comm, neutrality, inverse = WorstCase(), WorstCase(), WorstCase(), WorstCase()

    def compare(case: WorstCase, law: str, t, lhs, rhs, scale: float) -> None:
        value = h.metric(lhs, rhs)
        allowed = relative_bound(tol.fp, scale, h.norm(lhs), h.norm(rhs))
        case.observe(value, allowed, lambda: {"law": law, "t": phi.domain.serialize(t), "value": value})

    for t in probe:
        phi_t = phi(t)
        compare(assoc, "associativity", t, left_assoc(t), right_assoc(t), 0.0)
        compare(comm, "commutativity", t, phi_psi(t), psi_phi(t), 0.0)
        compare(neutrality, "sigma-neutrality", t, with_sigma(t), phi_t, 0.0)
        # judged relative to |phi(t)|, the size of the cancelled terms
        compare(inverse, "inverse", t, cancelled(t), h.identity, h.norm(phi_t))

    worst = WorstCase.combine(assoc, comm, neutrality, inverse)
    return worst.report(
        check_id="check_group_laws_on_hom",
        anchor=ANCHOR_ABELIAN,
        description=f"(Hom, (+)) is an Abelian group on {phi.label}, {psi.label}, {chi.label}",
        samples=len(probe),
        tolerance=tol.fp,
        details={
            "probe": probe.description,
            "associativity": assoc.max_violation,
            "commutativity": comm.max_violation,
            "sigma_neutrality": neutrality.max_violation,
            "inverse": inverse.max_violation,
        },
    )


def check_continuity_at_identity(
    h: Homomorphism,
    radii: Sequence[float],
    seed: Seed,
    count: int,
    tolerances: Optional[Tolerances] = None,
) -> VerificationReport:
    """
    Radius sweep of max d_H(h(x), e_H) over d_G(x, e) <= r.

    With a modulus hint the profile must stay under modulus(r) (within τ_fp);
    without one it must not increase as r shrinks and must end below τ_limit.
    """
    tol = tolerances or Tolerances()
    if not radii:
        raise ContractViolation("radii must not be empty")
    g, k = h.domain, h.codomain
    ordered = sorted(radii, reverse=True)
    seeds = spawn_seeds(seed, 1) * len(ordered)
    profile: List[float] = []
    for r, child in zip(ordered, seeds):
        points = g.sample_near(g.identity, r, child, count)
        profile.append(max(k.norm(h(x)) for x in points))

    modulus = getattr(h, "modulus", None)
    if modulus is not None:
        excess = [value - modulus(r) - relative_bound(tol.fp, modulus(r)) for r, value in zip(ordered, profile)]
        passed = all(e <= 0 for e in excess)
        violation = max(excess)
        tolerance = tol.fp
    else:
        passed = is_non_increasing(profile, tol.fp) and profile[-1] < tol.limit
        violation = profile[-1] - tol.limit
        tolerance = tol.limit
    if not passed:
        logger.warning(f"{h!r} does not look continuous at the identity: {profile}")
    return VerificationReport(
        check_id="check_continuity_at_identity",
        anchor=ANCHOR_CONTINUITY,
        description=f"{h.label} is continuous at e",
        samples=count * len(ordered),
        max_violation=violation,
        tolerance=tolerance,
        passed=passed,
        witness=None if passed else {"radii": ordered, "profile": profile},
        details={"radii": ordered, "profile": profile, "modulus_hint": modulus is not None},
    )


def pointwise_to_metric_convergence_probe(
    sequence: Sequence[Homomorphism],
    limit: Homomorphism,
    probe: ProbeSet,
    tolerances: Optional[Tolerances] = None,
) -> VerificationReport:
    """
    d~(sequence[i], limit) on the probe for every i; passes when the tail is
    below τ_limit and the second half of the sequence does not increase.
    """
    if not sequence:
        raise ContractViolation("sequence must not be empty")
    tol = tolerances or Tolerances()
    distances = [hom_metric(h, limit, probe) for h in sequence]
    tail = distances[len(distances) // 2:]
    passed = distances[-1] < tol.limit and is_non_increasing(tail, tol.fp)
    if not passed:
        logger.warning(f"sequence does not approach {limit!r} on the probe: {distances}")
    return VerificationReport(
        check_id="pointwise_to_metric_convergence_probe",
        anchor=ANCHOR_POINTWISE,
        description=f"pointwise convergence to {limit.label} seen in the sup metric",
        samples=len(sequence) * len(probe),
        max_violation=distances[-1] - tol.limit,
        tolerance=tol.limit,
        passed=passed,
        witness=None if passed else {"distances": distances},
        details={"distances": distances, "lower_bound": True, "probe": probe.description},
    )
