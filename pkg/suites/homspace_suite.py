# suites/homspace_suite.py
from typing import List

from algebra.metric_group import MetricGroupSpec, derive_seed
from groups.registry import resolve_group
from homspace import laws, metric
from homspace.endomorphisms import random_endomorphisms
from homspace.homomorphism import Homomorphism, hom_compose, hom_scalar, oplus, sigma
from homspace.probe import ProbeSet, standard_probe
from suites.planned_check import PlannedCheck
from utils.settings import SuiteConfig

HOMS_PER_GROUP = 3
METRIC_TRIPLES = 100
# 1 + 2^-k for k = 1 .. CONVERGENCE_STEPS
CONVERGENCE_STEPS = 40


class HomSpaceSuite:
    def __init__(self, config: SuiteConfig):
        self.config = config
        self.groups = [resolve_group(name) for name in config.groups]
        self.name = "homspace"
        self.description = "Hom(G; G): homomorphism laws, the Abelian group under (+), the bounded sup metric."

    def seed(self, check_id: str) -> int:
        return derive_seed(self.config.seed, check_id)

    def probe(self, spec: MetricGroupSpec, key: str = "probe") -> ProbeSet:
        cfg = self.config
        return standard_probe(
            spec,
            derive_seed(cfg.seed, f"{key}/{spec.group_id}"),
            cfg.probe_count,
            (cfg.probe_scale_min, cfg.probe_scale_max),
        )

    def homs(self, spec: MetricGroupSpec, count: int = HOMS_PER_GROUP) -> List[Homomorphism]:
        return random_endomorphisms(spec, derive_seed(self.config.seed, f"homs/{spec.group_id}/{count}"), count)

    def create_checks(self) -> List[PlannedCheck]:
        cfg, tol = self.config, self.config.tolerances
        checks: List[PlannedCheck] = []
        for spec in self.groups:
            gid = spec.group_id

            for i in range(HOMS_PER_GROUP):
                cid = f"05-hom-laws/{gid}/homomorphism-{i}"
                checks.append(PlannedCheck(
                    check_id=cid,
                    anchor=laws.ANCHOR_HOMOMORPHISM,
                    description=f"sampled endomorphism {i} of {spec.label} is a homomorphism",
                    run=lambda spec=spec, i=i, s=self.seed(cid): laws.check_homomorphism_law(
                        self.homs(spec)[i], s, cfg.samples, tol
                    ),
                    tolerances=("fp", "hom"),
                ))

                cid = f"05-hom-laws/{gid}/continuity-{i}"
                checks.append(PlannedCheck(
                    check_id=cid,
                    anchor=laws.ANCHOR_CONTINUITY,
                    description=f"sampled endomorphism {i} of {spec.label} is continuous at e",
                    run=lambda spec=spec, i=i, s=self.seed(cid): laws.check_continuity_at_identity(
                        self.homs(spec)[i], cfg.radii, s, cfg.probe_count, tol
                    ),
                    tolerances=("fp", "limit"),
                ))

            cid = f"05-hom-laws/{gid}/oplus-closure"
            checks.append(PlannedCheck(
                check_id=cid,
                anchor=laws.ANCHOR_CLOSURE,
                description=f"phi (+) psi of two sampled endomorphisms of {spec.label} is a homomorphism",
                run=lambda spec=spec, s=self.seed(cid): laws.check_homomorphism_law(
                    oplus(*self.homs(spec)[:2]), s, cfg.samples, tol
                ),
                tolerances=("fp", "hom"),
            ))

            cid = f"05-hom-laws/{gid}/compose-closure"
            checks.append(PlannedCheck(
                check_id=cid,
                anchor=laws.ANCHOR_COMPOSE,
                description=f"phi o psi of two sampled endomorphisms of {spec.label} is a homomorphism",
                run=lambda spec=spec, s=self.seed(cid): laws.check_homomorphism_law(
                    hom_compose(*self.homs(spec)[:2]), s, cfg.samples, tol
                ),
                tolerances=("fp", "hom"),
            ))

            cid = f"05-hom-laws/{gid}/group-laws"
            checks.append(PlannedCheck(
                check_id=cid,
                anchor=laws.ANCHOR_ABELIAN,
                description=f"(Hom, (+)) on {spec.label} is an Abelian group",
                run=lambda spec=spec: laws.check_group_laws_on_hom(*self.homs(spec), self.probe(spec), tol),
                tolerances=("fp",),
            ))

            cid = f"06-hom-metric/{gid}/properties"
            checks.append(PlannedCheck(
                check_id=cid,
                anchor=metric.ANCHOR_SUP_METRIC,
                description=f"sup metric on Hom({spec.label}) over {METRIC_TRIPLES} triples",
                run=lambda spec=spec: metric.check_hom_metric_properties(
                    self.homs(spec, METRIC_TRIPLES + 2),
                    self.probe(spec),
                    self.probe(spec).union(self.probe(spec, "enlarged-probe")),
                    tol,
                ),
                tolerances=("fp",),
            ))

            cid = f"06-hom-metric/{gid}/sigma-distance"
            checks.append(PlannedCheck(
                check_id=cid,
                anchor=metric.ANCHOR_SUP_METRIC,
                description=f"d~ between a sampled endomorphism of {spec.label} and sigma lies in [0, 1)",
                run=lambda spec=spec: metric.hom_metric_report(self.homs(spec)[0], sigma(spec, spec), self.probe(spec)),
            ))

            if spec.has_scalar_action:
                cid = f"06-hom-metric/{gid}/pointwise-convergence"
                checks.append(PlannedCheck(
                    check_id=cid,
                    anchor=laws.ANCHOR_POINTWISE,
                    description=f"(1 + 2^-k) phi -> phi pointwise, seen in d~ on {spec.label}",
                    run=lambda spec=spec: self._convergence(spec),
                    tolerances=("fp", "limit"),
                ))
        return checks

    def _convergence(self, spec: MetricGroupSpec):
        phi = self.homs(spec)[0]
        sequence = [hom_scalar(1.0 + 2.0 ** -k, phi) for k in range(1, CONVERGENCE_STEPS + 1)]
        return laws.pointwise_to_metric_convergence_probe(sequence, phi, self.probe(spec), self.config.tolerances)
