# suites/derivative_suite.py
from itertools import combinations
from typing import List

from algebra.metric_group import derive_seed
from derivative import checks
from derivative.cases import DerivativeCase, resolve_case
from derivative.oracle import ANCHOR_ORACLE, check_oracle_agreement
from homspace.laws import ANCHOR_HOMOMORPHISM, check_homomorphism_law
from homspace.probe import standard_probe
from suites.planned_check import PlannedCheck
from utils.settings import SuiteConfig


class DerivativeSuite:
    def __init__(self, config: SuiteConfig):
        self.config = config
        self.cases = [resolve_case(name) for name in config.functions]
        self.name = "derivative"
        self.description = "Slope functions of the shipped cases: factorization, uniqueness, finite-difference oracle."

    def seed(self, check_id: str) -> int:
        return derive_seed(self.config.seed, check_id)

    def base_point(self, case: DerivativeCase):
        return case.base_point(derive_seed(self.config.seed, f"base-point/{case.name}"))

    def create_checks(self) -> List[PlannedCheck]:
        planned: List[PlannedCheck] = []
        for case in self.cases:
            planned.extend(self._differentiability(case))
            planned.extend(self._uniqueness(case))
            if case.group.has_scalar_action:
                planned.append(self._oracle(case))
        return planned

    def _differentiability(self, case: DerivativeCase) -> List[PlannedCheck]:
        cfg = self.config
        planned = []
        for variant in sorted(case.slopes):
            cid = f"07-differentiability/{case.name}/{variant}"

            def run(variant=variant, s=self.seed(cid)):
                f = case.function()
                slope = case.slope(variant, f, self.base_point(case))
                return checks.check_differentiable(f, slope, cfg.radii, s, cfg.derivative_samples, cfg.tolerances)

            invalid = variant in case.invalid_slopes
            planned.append(PlannedCheck(
                check_id=cid,
                anchor=checks.ANCHOR_DIFFERENTIABLE,
                description=(
                    f"counterexample slope '{variant}' is rejected for {case.description}"
                    if invalid else f"slope '{variant}' factors {case.description}"
                ),
                run=run,
                tolerances=("fact", "fact_rel", "fp", "limit"),
                expect_failure=invalid,
            ))
            if not invalid:
                planned.append(self._slope_value_law(case, variant))
        return planned

    def _slope_value_law(self, case: DerivativeCase, variant: str) -> PlannedCheck:
        cfg = self.config
        cid = f"07-differentiability/{case.name}/{variant}/slope-homomorphism"

        def run(s=self.seed(cid)):
            f = case.function()
            slope = case.slope(variant, f, self.base_point(case))
            x = case.group.sample(derive_seed(s, "x"), 1)[0]
            return check_homomorphism_law(slope.slope_at(x), s, cfg.derivative_samples, cfg.tolerances)

        return PlannedCheck(
            check_id=cid,
            anchor=ANCHOR_HOMOMORPHISM,
            description=f"slope '{variant}' of {case.description} takes homomorphism values",
            run=run,
            tolerances=("fp", "hom"),
        )

    def _uniqueness(self, case: DerivativeCase) -> List[PlannedCheck]:
        cfg = self.config
        valid = case.valid_slopes
        pairs = list(combinations(valid, 2)) or [(valid[0], valid[0])]
        pairs += [(valid[0], bad) for bad in sorted(case.invalid_slopes)]
        planned = []
        for first, second in pairs:
            cid = f"09-uniqueness/{case.name}/{first}~{second}"

            def run(first=first, second=second, s=self.seed(cid)):
                f = case.function()
                a = self.base_point(case)
                spec = case.group
                probe = standard_probe(spec, derive_seed(s, "probe"), cfg.probe_count, (cfg.probe_scale_min, cfg.probe_scale_max))
                z = spec.sample(derive_seed(s, "z"), 1)[0]
                return checks.uniqueness_probe(
                    case.slope(first, f, a), case.slope(second, f, a), z, cfg.uniqueness_n_max, probe, cfg.tolerances
                )

            invalid = second in case.invalid_slopes
            planned.append(PlannedCheck(
                check_id=cid,
                anchor=checks.ANCHOR_UNIQUENESS,
                description=(
                    f"'{first}' and counterexample '{second}' are told apart"
                    if invalid else f"'{first}' and '{second}' give the same derivative of {case.description}"
                ),
                run=run,
                tolerances=("limit",),
                expect_failure=invalid,
            ))
        return planned

    def _oracle(self, case: DerivativeCase) -> PlannedCheck:
        cfg = self.config
        cid = f"10-oracle/{case.name}"

        def run(s=self.seed(cid)):
            f = case.function()
            slope = case.slope(case.valid_slopes[0], f, self.base_point(case))
            y = case.group.sample(s, 1)[0]
            return check_oracle_agreement(slope, y, expected_ratio=case.oracle_ratio, tolerances=cfg.tolerances)

        return PlannedCheck(
            check_id=cid,
            anchor=ANCHOR_ORACLE,
            description=f"finite differences agree with the derivative of {case.description}",
            run=run,
            tolerances=("fp", "limit"),
        )
