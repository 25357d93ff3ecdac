# derivative/slope.py
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Any, Callable, List, Optional, Tuple

from pydantic import Field

from algebra.elements import GroupElement
from algebra.errors import ContractViolation, UnsupportedOperation
from algebra.metric_group import MetricGroupSpec
from algebra.report import VerificationReport
from homspace.homomorphism import Homomorphism


@dataclass(frozen=True, eq=False)
class GroupFunction:
    """A total map f: G -> H between registered groups."""

    domain: MetricGroupSpec
    codomain: MetricGroupSpec
    fn: Callable[[GroupElement], GroupElement]
    label: str

    @property
    def domain_id(self) -> str:
        return self.domain.group_id

    @property
    def codomain_id(self) -> str:
        return self.codomain.group_id

    def __call__(self, x: GroupElement) -> GroupElement:
        x.require_group(self.domain_id)
        return self.fn(x).require_group(self.codomain_id)

    def __repr__(self) -> str:
        return f"GroupFunction[{self.domain_id}->{self.codomain_id}]({self.label})"


def lift(domain: MetricGroupSpec, codomain: MetricGroupSpec, payload_fn: Callable[[Any], Any], label: str) -> GroupFunction:
    """GroupFunction from a payload-level map, e.g. `lambda X: X @ X`."""
    return GroupFunction(domain, codomain, lambda x: codomain.element(payload_fn(x.payload)), label)


@dataclass(frozen=True, eq=False)
class SlopeFunction:
    """
    A slope function for `function` at `base_point`: every x with
    d(x, a) < neighborhood_radius gets a homomorphism slope_at(x) with
    f(x) * f(a)^-1 = slope_at(x)[x * a^-1]. The derivative is slope_at(a).

    `neighborhood_radius` is math.inf for slopes that factor f globally.
    """

    function: GroupFunction
    base_point: GroupElement
    neighborhood_radius: float
    slope_fn: Callable[[GroupElement], Homomorphism]
    label: str

    def __post_init__(self):
        self.base_point.require_group(self.function.domain_id)
        if not self.neighborhood_radius > 0:
            raise ContractViolation(f"neighbourhood radius must be positive, got {self.neighborhood_radius}")
        if not self.function.codomain.is_abelian:
            raise UnsupportedOperation(
                f"slope functions need an Abelian codomain, '{self.function.codomain_id}' is not"
            )

    @property
    def domain(self) -> MetricGroupSpec:
        return self.function.domain

    @property
    def codomain(self) -> MetricGroupSpec:
        return self.function.codomain

    @property
    def bounded(self) -> bool:
        return math.isfinite(self.neighborhood_radius)

    def slope_at(self, x: GroupElement) -> Homomorphism:
        x.require_group(self.function.domain_id)
        h = self.slope_fn(x)
        if h.domain_id != self.function.domain_id or h.codomain_id != self.function.codomain_id:
            raise ContractViolation(f"slope {self.label} returned {h!r}, outside Hom of {self.function!r}")
        return h

    def __repr__(self) -> str:
        return f"Slope({self.label} for {self.function.label} at {self.base_point!r})"


class DifferentiabilityReport(VerificationReport):
    """VerificationReport with the factorization and continuity measurements of one slope."""

    max_factorization_residual: float = Field(0.0, description="Largest residual over all sampled x.")
    radii_swept: List[float] = Field(default_factory=list, description="Radii around the base point, descending.")
    continuity_profile: List[Tuple[float, float]] = Field(
        default_factory=list, description="(radius, max hom_metric(slope_at(x), slope_at(a))) per radius."
    )
    uniqueness_profile: Optional[List[float]] = Field(None, description="Distances from the uniqueness probe, if run.")
