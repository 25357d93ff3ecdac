# homspace/metric.py
from __future__ import annotations

import logging
import math
from typing import Optional, Sequence

from algebra.axioms import WorstCase
from algebra.errors import ContractViolation
from algebra.report import VerificationReport, relative_bound
from homspace.homomorphism import Homomorphism
from homspace.probe import ProbeSet
from utils.settings import Tolerances

logger = logging.getLogger(__name__)

ANCHOR_SUP_METRIC = "definition:hom-space/sup-metric"

# d / (1 + d) rounds to 1.0 once d passes 2^53; the bounded metric stays below 1
BELOW_ONE = math.nextafter(1.0, 0.0)


def _bounded(d: float) -> float:
    if not math.isfinite(d):
        return BELOW_ONE
    return min(d / (1.0 + d), BELOW_ONE)


def hom_metric(phi: Homomorphism, psi: Homomorphism, probe: ProbeSet) -> float:
    """
    max over the probe of d_H(phi[t], psi[t]) / (1 + d_H(phi[t], psi[t])).

    A lower bound of the supremum over the whole group; values lie in [0, 1).
    """
    if phi.domain_id != psi.domain_id or phi.codomain_id != psi.codomain_id:
        raise ContractViolation(f"hom_metric between different spaces: {phi!r} vs {psi!r}")
    if len(probe) == 0:
        raise ContractViolation("empty probe")
    if probe.group_id != phi.domain_id:
        raise ContractViolation(f"probe lives in '{probe.group_id}', not in '{phi.domain_id}'")
    h = phi.codomain
    return max(_bounded(h.metric(phi(t), psi(t))) for t in probe)


def hom_metric_report(phi: Homomorphism, psi: Homomorphism, probe: ProbeSet) -> VerificationReport:
    """Report form of hom_metric, labelled as a probe-relative lower bound."""
    value = hom_metric(phi, psi, probe)
    return VerificationReport(
        check_id="hom_metric",
        anchor=ANCHOR_SUP_METRIC,
        description=f"d~({phi.label}, {psi.label})",
        samples=len(probe),
        max_violation=0.0,
        passed=0.0 <= value < 1.0,
        details={"value": value, "lower_bound": True, "probe": probe.description},
    )


def check_hom_metric_properties(
    homs: Sequence[Homomorphism],
    probe: ProbeSet,
    enlarged_probe: ProbeSet,
    tolerances: Optional[Tolerances] = None,
) -> VerificationReport:
    """
    Over consecutive triples of `homs`: exact symmetry, triangle inequality
    within τ_fp, range [0, 1), and no decrease when the probe is enlarged.
    `enlarged_probe` must contain every point of `probe`.
    """
    if len(homs) < 3:
        raise ContractViolation("need at least three homomorphisms")
    tol = tolerances or Tolerances()
    symmetry, triangle, in_range, monotone = WorstCase(), WorstCase(), WorstCase(), WorstCase()
    triples = 0

    for phi, psi, chi in zip(homs, homs[1:], homs[2:]):
        triples += 1
        d_pp = hom_metric(phi, psi, probe)
        d_qp = hom_metric(psi, phi, probe)
        d_pc = hom_metric(phi, chi, probe)
        d_sc = hom_metric(psi, chi, probe)
        labels = {"phi": phi.label, "psi": psi.label, "chi": chi.label}

        symmetry.observe(abs(d_pp - d_qp), 0.0, lambda: {**labels, "property": "symmetry", "d": [d_pp, d_qp]})
        triangle.observe(
            d_pc - d_pp - d_sc,
            relative_bound(tol.fp, d_pc),
            lambda: {**labels, "property": "triangle", "d_phi_chi": d_pc, "d_phi_psi": d_pp, "d_psi_chi": d_sc},
        )
        for value in (d_pp, d_pc, d_sc):
            in_range.observe(0.0 if 0.0 <= value < 1.0 else 1.0, 0.0, lambda: {**labels, "property": "range", "value": value})
        enlarged = hom_metric(phi, psi, enlarged_probe)
        monotone.observe(d_pp - enlarged, 0.0, lambda: {**labels, "property": "monotone", "probe": d_pp, "enlarged": enlarged})

    worst = WorstCase.combine(symmetry, in_range, monotone, triangle)
    return worst.report(
        check_id="check_hom_metric_properties",
        anchor=ANCHOR_SUP_METRIC,
        description="sup metric: symmetry, triangle inequality, range [0,1), probe monotonicity",
        samples=triples,
        tolerance=tol.fp,
        details={
            "probe": probe.description,
            "enlarged_probe": enlarged_probe.description,
            "lower_bound": True,
            "max_triangle_violation": triangle.max_violation,
        },
    )
