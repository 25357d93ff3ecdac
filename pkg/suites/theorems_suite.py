# suites/theorems_suite.py
from typing import Callable, List, Tuple

from algebra.metric_group import MetricGroupSpec, derive_seed
from algebra.report import VerificationReport
from derivative import theorems
from derivative.cases import (
    DerivativeCase,
    const_function,
    const_slope,
    identity_function,
    identity_slope,
    resolve_case,
    scaling_function,
    scaling_slope,
)
from derivative.checks import ANCHOR_CONTINUITY, continuity_from_differentiability
from derivative.slope import SlopeFunction
from groups.registry import resolve_group
from homspace.probe import standard_probe
from suites.planned_check import PlannedCheck
from utils.settings import SuiteConfig

SCALARS = (0.0, 1.0, 2.0, -3.5)


class TheoremsSuite:
    """
    Continuity of every differentiable case, then the sum, scalar-multiple
    and chain rules on the cases whose functions are selected.
    """

    def __init__(self, config: SuiteConfig):
        self.config = config
        self.cases = {name: resolve_case(name) for name in config.functions}
        self.name = "theorems"
        self.description = "Continuity of differentiable functions; sum, scalar-multiple and chain rules."

    def seed(self, check_id: str) -> int:
        return derive_seed(self.config.seed, check_id)

    def base_point(self, case: DerivativeCase):
        return case.base_point(derive_seed(self.config.seed, f"base-point/{case.name}"))

    def valid_slope(self, case: DerivativeCase) -> SlopeFunction:
        f = case.function()
        return case.slope(case.valid_slopes[0], f, self.base_point(case))

    def probe(self, spec: MetricGroupSpec, seed: int):
        cfg = self.config
        return standard_probe(spec, derive_seed(seed, "probe"), cfg.probe_count, (cfg.probe_scale_min, cfg.probe_scale_max))

    def _selected(self, *names: str) -> bool:
        return all(name in self.cases for name in names)

    def create_checks(self) -> List[PlannedCheck]:
        return [*self._continuity(), *self._sum_rules(), *self._scale_rules(), *self._chain_rules()]

    def _continuity(self) -> List[PlannedCheck]:
        cfg = self.config
        planned = []
        for name, case in sorted(self.cases.items()):
            cid = f"08-theorems/continuity/{name}"

            def run(case=case, s=self.seed(cid)):
                slope = self.valid_slope(case)
                return continuity_from_differentiability(
                    slope.function, slope, cfg.radii, s, cfg.derivative_samples, cfg.tolerances
                )

            planned.append(PlannedCheck(
                check_id=cid,
                anchor=ANCHOR_CONTINUITY,
                description=f"differentiable {case.description} is continuous at the base point",
                run=run,
                tolerances=("fp", "limit"),
            ))
        return planned

    def _rule(
        self,
        cid: str,
        anchor: str,
        description: str,
        build: Callable[[int], Tuple[tuple, MetricGroupSpec]],
        check: Callable[..., VerificationReport],
    ) -> PlannedCheck:
        cfg = self.config

        def run(s=self.seed(cid)):
            args, spec = build(s)
            return check(*args, self.probe(spec, s), s, cfg.derivative_samples, cfg.tolerances, cfg.radii)

        return PlannedCheck(cid, anchor, description, run, ("fact", "fact_rel", "fp", "limit"))

    def _sum_rules(self) -> List[PlannedCheck]:
        planned = []
        if self._selected("square-matrix"):
            square = self.cases["square-matrix"]

            def doubled(s):
                slope = self.valid_slope(square)
                return (slope, slope), square.group

            def plus_constant(s):
                slope = self.valid_slope(square)
                const = const_slope(const_function(square.group, square.group), slope.base_point)
                return (slope, const), square.group

            planned.append(self._rule(
                "08-theorems/sum/square-matrix+square-matrix", theorems.ANCHOR_SUM_RULE,
                "(X^2 + X^2)'(A) = 2(AY + YA)", doubled, theorems.check_sum_rule,
            ))
            planned.append(self._rule(
                "08-theorems/sum/square-matrix+const", theorems.ANCHOR_SUM_RULE,
                "adding a constant leaves the derivative of X^2 unchanged", plus_constant, theorems.check_sum_rule,
            ))

        def linear(s):
            spec = resolve_group("real-add")
            a = spec.sample(s, 1)[0]
            return (scaling_slope(scaling_function(spec, 2.0), a, 2.0), scaling_slope(scaling_function(spec, 3.0), a, 3.0)), spec

        planned.append(self._rule(
            "08-theorems/sum/linear-2x+3x", theorems.ANCHOR_SUM_RULE,
            "(2x + 3x)'(a)[t] = 5t on (R,+)", linear, theorems.check_sum_rule,
        ))
        return planned

    def _scale_rules(self) -> List[PlannedCheck]:
        if not self._selected("square-matrix"):
            return []
        square = self.cases["square-matrix"]
        planned = []
        for alpha in SCALARS:

            def scaled(s, alpha=alpha):
                return (alpha, self.valid_slope(square)), square.group

            planned.append(self._rule(
                f"08-theorems/scale/square-matrix/{alpha:g}", theorems.ANCHOR_SCALE_RULE,
                f"({alpha:g} X^2)'(A) = {alpha:g}(AY + YA)", scaled, theorems.check_scale_rule,
            ))
        return planned

    def _chain_rules(self) -> List[PlannedCheck]:
        planned = []
        for name in ("square-matrix", "cube-circle"):
            if not self._selected(name):
                continue
            case = self.cases[name]

            def self_composed(s, case=case):
                inner = self.valid_slope(case)
                outer_f = case.function()
                outer = case.slope(case.valid_slopes[0], outer_f, inner.function(inner.base_point))
                return (outer, inner), case.group

            planned.append(self._rule(
                f"08-theorems/chain/{name}-o-{name}", theorems.ANCHOR_CHAIN_RULE,
                f"chain rule for {case.description} composed with itself", self_composed, theorems.check_chain_rule,
            ))

        if self._selected("square-matrix"):
            square = self.cases["square-matrix"]

            def after_identity(s):
                inner = self.valid_slope(square)
                ident = identity_function(square.group)
                return (identity_slope(ident, inner.function(inner.base_point)), inner), square.group

            planned.append(self._rule(
                "08-theorems/chain/identity-o-square-matrix", theorems.ANCHOR_CHAIN_RULE,
                "composing with the identity leaves the derivative of X^2 unchanged", after_identity,
                theorems.check_chain_rule,
            ))
        return planned
