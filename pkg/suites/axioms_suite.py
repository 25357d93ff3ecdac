# suites/axioms_suite.py
from typing import List

from algebra import axioms, divisibility
from algebra.metric_group import derive_seed
from groups.registry import resolve_group
from suites.planned_check import PlannedCheck
from utils.settings import SuiteConfig

# round trips cost O(count * n^2) group operations
ROUNDTRIP_SAMPLES = 64
ROUNDTRIP_N_MAX = 64


class AxiomsSuite:
    def __init__(self, config: SuiteConfig):
        self.config = config
        self.groups = [resolve_group(name) for name in config.groups]
        self.name = "axioms"
        self.description = "Metric and group axioms, group-metric conditions, translation constants, divisibility."

    def seed(self, check_id: str) -> int:
        return derive_seed(self.config.seed, check_id)

    def create_checks(self) -> List[PlannedCheck]:
        cfg, tol = self.config, self.config.tolerances
        checks: List[PlannedCheck] = []
        for spec in self.groups:
            gid = spec.group_id

            cid = f"01-metric-axioms/{gid}"
            checks.append(PlannedCheck(
                check_id=cid,
                anchor=axioms.ANCHOR_METRIC,
                description=f"non-negativity, symmetry, separation and triangle inequality on {spec.label}",
                run=lambda spec=spec, s=self.seed(cid): axioms.check_metric_axioms(spec, s, cfg.samples, tol),
                tolerances=("fp",),
            ))

            cid = f"02-group-metric/{gid}/group-axioms"
            checks.append(PlannedCheck(
                check_id=cid,
                anchor=axioms.ANCHOR_GROUP,
                description=f"associativity, identity, inverses (and commutativity) on {spec.label}",
                run=lambda spec=spec, s=self.seed(cid): axioms.check_group_axioms(spec, s, cfg.samples, tol),
                tolerances=("fp",),
            ))

            if spec.claims_group_metric:
                cid = f"02-group-metric/{gid}/product-bound"
                checks.append(PlannedCheck(
                    check_id=cid,
                    anchor=axioms.ANCHOR_PRODUCT_BOUND,
                    description=f"d(xy, e) <= d(x, e) d(y, e) + d(x, e) + d(y, e) on {spec.label}",
                    run=lambda spec=spec, s=self.seed(cid): axioms.check_group_metric_axiom1(spec, s, cfg.samples, tol),
                    tolerances=("fp",),
                ))

                cid = f"03-translation/{gid}"
                checks.append(PlannedCheck(
                    check_id=cid,
                    anchor=axioms.ANCHOR_TRANSLATION,
                    description=f"d(xk, yk) <= c_k d(x, y) on {spec.label}",
                    run=lambda spec=spec, s=self.seed(cid): axioms.check_translation_constant(
                        spec, spec.sample(derive_seed(s, "k"), 1)[0], s, cfg.samples, tol
                    ),
                    tolerances=("fp",),
                ))

            if spec.claims_divisible and spec.has_nth_root:
                cid = f"04-divisibility/{gid}/roundtrip"
                checks.append(PlannedCheck(
                    check_id=cid,
                    anchor=divisibility.ANCHOR_ROOTS,
                    description=f"(g^(1/n))^n = g for n <= {ROUNDTRIP_N_MAX} on {spec.label}",
                    run=lambda spec=spec, s=self.seed(cid): divisibility.check_root_roundtrip(
                        spec, s, ROUNDTRIP_SAMPLES, ROUNDTRIP_N_MAX, tol
                    ),
                    tolerances=("root",),
                ))

                cid = f"04-divisibility/{gid}/limit"
                checks.append(PlannedCheck(
                    check_id=cid,
                    anchor=divisibility.ANCHOR_ROOT_LIMIT,
                    description=f"d(x^(1/n), e) decreases to below τ_root_limit by n = {cfg.root_n_max} on {spec.label}",
                    run=lambda spec=spec, s=self.seed(cid): divisibility.check_root_limit(
                        spec, spec.sample(s, 1)[0], cfg.root_n_max, tol
                    ),
                    tolerances=("fp", "root_limit"),
                ))
        return checks
