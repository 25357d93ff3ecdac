# derivative/cases.py
"""
The shipped differentiable functions and their slope functions.

Squaring on matrices comes with three slopes: the left form AY + YX, the
right form XY + YA (both exact factorizations of X^2 - A^2) and a
counterexample that agrees with the left form except at A itself. Cubing
on the circle comes with the power slope t -> t^3 and the inner-automorphism
form t -> t . ad_a(t . ad_a(t)), which coincide on Abelian groups.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable, Dict, FrozenSet, List, Mapping, Optional

from algebra.elements import GroupElement
from algebra.errors import ConfigurationError
from algebra.metric_group import MetricGroupSpec, Seed
from derivative.slope import GroupFunction, SlopeFunction, lift
from groups.elements import MatrixElement
from groups.registry import resolve_group
from homspace.endomorphisms import power_hom, scaling_hom
from homspace.homomorphism import identity_hom, primitive, sigma

SlopeBuilder = Callable[[GroupFunction, GroupElement], SlopeFunction]


def _global(f: GroupFunction, a: GroupElement, slope_fn, label: str) -> SlopeFunction:
    return SlopeFunction(function=f, base_point=a, neighborhood_radius=math.inf, slope_fn=slope_fn, label=label)


# -- squaring on matrices -----------------------------------------------------

def square_function(spec: MetricGroupSpec) -> GroupFunction:
    return lift(spec, spec, lambda x: x @ x, "X^2")


def square_slope_left(f: GroupFunction, a: GroupElement) -> SlopeFunction:
    """slope_at(X)[Y] = AY + YX."""
    spec, pa = f.domain, a.payload
    return _global(f, a, lambda x: primitive(spec, spec, lambda y: pa @ y + y @ x.payload, "AY+YX"), "left")


def square_slope_right(f: GroupFunction, a: GroupElement) -> SlopeFunction:
    """slope_at(X)[Y] = XY + YA."""
    spec, pa = f.domain, a.payload
    return _global(f, a, lambda x: primitive(spec, spec, lambda y: x.payload @ y + y @ pa, "XY+YA"), "right")


def square_slope_perturbed(f: GroupFunction, a: GroupElement) -> SlopeFunction:
    """The left form everywhere except at A, where it is Y -> AY + YA + Y."""
    spec, pa = f.domain, a.payload

    def slope_fn(x: GroupElement):
        if spec.metric(x, a) == 0.0:
            return primitive(spec, spec, lambda y: pa @ y + y @ pa + y, "AY+YA+Y")
        return primitive(spec, spec, lambda y: pa @ y + y @ x.payload, "AY+YX")

    return _global(f, a, slope_fn, "perturbed")


def square_oracle_ratio(y: GroupElement) -> float:
    """(f(A + hY) - f(A))/h - (AY + YA) = hY^2, so residual / h is ||Y^2||."""
    return (y.payload @ y.payload).norm()


# -- cubing on the circle -----------------------------------------------------

def cube_function(spec: MetricGroupSpec) -> GroupFunction:
    return lift(spec, spec, lambda x: x ** 3, "x^3")


def cube_slope_power(f: GroupFunction, a: GroupElement) -> SlopeFunction:
    t_cubed = power_hom(f.domain, 3)
    return _global(f, a, lambda x: t_cubed, "power")


def cube_slope_ad_form(f: GroupFunction, a: GroupElement) -> SlopeFunction:
    """slope_at(x)[t] = t . ad_a(t . ad_a(t)) with ad_a(y) = a y a^-1."""
    spec = f.domain
    pa, pa_inv = a.payload, spec.inverse_fn(a.payload)

    def ad(y):
        return spec.compose_fn(spec.compose_fn(pa, y), pa_inv)

    hom = primitive(spec, spec, lambda t: spec.compose_fn(t, ad(spec.compose_fn(t, ad(t)))), "t.ad_a(t.ad_a(t))")
    return _global(f, a, lambda x: hom, "ad-form")


# -- constants, identities and scalings ----------------------------------------

def const_function(domain: MetricGroupSpec, codomain: MetricGroupSpec) -> GroupFunction:
    e = codomain.identity
    return GroupFunction(domain, codomain, lambda x: e, "e")


def const_slope(f: GroupFunction, a: GroupElement) -> SlopeFunction:
    neutral = sigma(f.domain, f.codomain)
    return _global(f, a, lambda x: neutral, "sigma")


def identity_function(spec: MetricGroupSpec) -> GroupFunction:
    return GroupFunction(spec, spec, lambda x: x, "x")


def identity_slope(f: GroupFunction, a: GroupElement) -> SlopeFunction:
    ident = identity_hom(f.domain)
    return _global(f, a, lambda x: ident, "identity")


def scaling_function(spec: MetricGroupSpec, c: float) -> GroupFunction:
    return lift(spec, spec, lambda x: c * x, f"{c:g}x")


def scaling_slope(f: GroupFunction, a: GroupElement, c: float) -> SlopeFunction:
    hom = scaling_hom(f.domain, c)
    return _global(f, a, lambda x: hom, f"{c:g}t")


# -- registry -------------------------------------------------------------------

@dataclass(frozen=True)
class DerivativeCase:
    """A registered function together with the slopes shipped for it."""

    name: str
    group_name: str
    description: str
    build: Callable[[MetricGroupSpec], GroupFunction]
    slopes: Mapping[str, SlopeBuilder]
    # variants expected to fail check_differentiable
    invalid_slopes: FrozenSet[str] = field(default_factory=frozenset)
    oracle_ratio: Optional[Callable[[GroupElement], float]] = None

    @property
    def group(self) -> MetricGroupSpec:
        return resolve_group(self.group_name)

    @property
    def valid_slopes(self) -> List[str]:
        return [v for v in sorted(self.slopes) if v not in self.invalid_slopes]

    def function(self) -> GroupFunction:
        return self.build(self.group)

    def base_point(self, seed: Seed) -> GroupElement:
        return self.group.sample(seed, 1)[0]

    def slope(self, variant: str, f: GroupFunction, a: GroupElement) -> SlopeFunction:
        if variant not in self.slopes:
            raise ConfigurationError(f"unknown slope '{self.name}/{variant}'")
        return self.slopes[variant](f, a)


CASES: Dict[str, DerivativeCase] = {
    "const": DerivativeCase(
        name="const",
        group_name="matrix-add:2",
        description="X -> 0 on 2x2 matrices, slope constantly sigma",
        build=lambda spec: const_function(spec, spec),
        slopes={"sigma": const_slope},
    ),
    "cube-circle": DerivativeCase(
        name="cube-circle",
        group_name="circle",
        description="x -> x^3 on the unit circle",
        build=cube_function,
        slopes={"power": cube_slope_power, "ad-form": cube_slope_ad_form},
    ),
    "identity": DerivativeCase(
        name="identity",
        group_name="real-add",
        description="x -> x on (R,+), slope constantly the identity homomorphism",
        build=identity_function,
        slopes={"identity": identity_slope},
    ),
    "square-matrix": DerivativeCase(
        name="square-matrix",
        group_name="matrix-add:2",
        description="X -> X^2 on 2x2 matrices",
        build=square_function,
        slopes={"left": square_slope_left, "right": square_slope_right, "perturbed": square_slope_perturbed},
        invalid_slopes=frozenset({"perturbed"}),
        oracle_ratio=square_oracle_ratio,
    ),
}


def list_functions() -> List[str]:
    return sorted(CASES)


def list_slopes() -> List[str]:
    return sorted(f"{name}/{variant}" for name, case in CASES.items() for variant in case.slopes)


def resolve_case(name: str) -> DerivativeCase:
    try:
        return CASES[name]
    except KeyError:
        raise ConfigurationError(f"unknown function '{name}' (known: {', '.join(list_functions())})") from None
