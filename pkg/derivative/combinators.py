# derivative/combinators.py
"""Slopes of f + g, alpha f and g o f built from the slopes of f and g."""
from __future__ import annotations

import logging
from typing import Optional

from algebra.errors import ContractViolation, EstimationError, UnsupportedOperation
from algebra.metric_group import Seed
from derivative.slope import GroupFunction, SlopeFunction
from homspace.homomorphism import hom_compose, hom_scalar, oplus

logger = logging.getLogger(__name__)

# halvings tried when shrinking the neighbourhood of a composed slope
CHAIN_RADIUS_HALVINGS = 48
CHAIN_RADIUS_SAMPLES = 256


def _require_same_base(s_f: SlopeFunction, s_g: SlopeFunction) -> None:
    if s_f.function.domain_id != s_g.function.domain_id or s_f.function.codomain_id != s_g.function.codomain_id:
        raise ContractViolation(f"{s_f!r} and {s_g!r} live on different groups")
    if s_f.domain.metric(s_f.base_point, s_g.base_point) != 0.0:
        raise ContractViolation(f"{s_f!r} and {s_g!r} have different base points")


def slope_sum(s_f: SlopeFunction, s_g: SlopeFunction) -> SlopeFunction:
    """Slope of (f + g)(x) = f(x) * g(x): slope_at(x) = s_f.slope_at(x) (+) s_g.slope_at(x)."""
    _require_same_base(s_f, s_g)
    f, g = s_f.function, s_g.function
    h = f.codomain
    total = GroupFunction(f.domain, h, lambda x: h.compose(f(x), g(x)), f"({f.label} + {g.label})")
    return SlopeFunction(
        function=total,
        base_point=s_f.base_point,
        neighborhood_radius=min(s_f.neighborhood_radius, s_g.neighborhood_radius),
        slope_fn=lambda x: oplus(s_f.slope_at(x), s_g.slope_at(x)),
        label=f"({s_f.label} (+) {s_g.label})",
    )


def slope_scale(alpha: float, s_f: SlopeFunction) -> SlopeFunction:
    """Slope of (alpha f)(x) = alpha . f(x) for a codomain with a scalar action."""
    f = s_f.function
    h = f.codomain
    if not h.has_scalar_action:
        raise UnsupportedOperation(f"cannot scale {f!r}: '{h.group_id}' has no scalar action")
    alpha = float(alpha)
    scaled = GroupFunction(f.domain, h, lambda x: h.scalar_action(alpha, f(x)), f"{alpha:g}*{f.label}")
    return SlopeFunction(
        function=scaled,
        base_point=s_f.base_point,
        neighborhood_radius=s_f.neighborhood_radius,
        slope_fn=lambda x: hom_scalar(alpha, s_f.slope_at(x)),
        label=f"{alpha:g}*{s_f.label}",
    )


def chain_radius(s_g: SlopeFunction, s_f: SlopeFunction, seed: Seed = 0, count: int = CHAIN_RADIUS_SAMPLES) -> float:
    """
    Neighbourhood radius for the slope of g o f: s_f's radius when s_g is
    global, otherwise the largest radius r <= s_f's (halving from there) for
    which every sampled x with d(x, a) <= r has d(f(x), f(a)) < s_g's radius.
    """
    if not s_g.bounded:
        return s_f.neighborhood_radius
    f, g_spec, a = s_f.function, s_f.domain, s_f.base_point
    h = f.codomain
    f_a = f(a)
    r = s_f.neighborhood_radius if s_f.bounded else max(s_g.neighborhood_radius, 1.0)
    for _ in range(CHAIN_RADIUS_HALVINGS):
        reach = max(h.metric(f(x), f_a) for x in g_spec.sample_near(a, r, seed, count))
        if reach < s_g.neighborhood_radius:
            logger.debug(f"chain radius for {s_g.label} o {s_f.label}: {r:g} (reach {reach:.3e})")
            return r
        r /= 2.0
    raise EstimationError(
        f"could not find a neighbourhood of {g_spec.serialize(a)} that {f.label} maps inside {s_g!r}"
    )


def slope_chain(
    s_g: SlopeFunction,
    s_f: SlopeFunction,
    f: Optional[GroupFunction] = None,
    seed: Seed = 0,
) -> SlopeFunction:
    """Slope of g o f at a: slope_at(x) = s_g.slope_at(f(x)) o s_f.slope_at(x), with s_g based at f(a)."""
    f = s_f.function if f is None else f
    if s_f.function is not f:
        raise ContractViolation(f"{s_f!r} does not factor {f!r}")
    g = s_g.function
    if f.codomain_id != g.domain_id:
        raise ContractViolation(f"cannot compose {g!r} after {f!r}")
    f_a = f(s_f.base_point)
    if g.domain.metric(s_g.base_point, f_a) != 0.0:
        raise ContractViolation(f"{s_g!r} must be based at f(a) = {g.domain.serialize(f_a)}")
    radius = chain_radius(s_g, s_f, seed)
    composite = GroupFunction(f.domain, g.codomain, lambda x: g(f(x)), f"{g.label} o {f.label}")
    return SlopeFunction(
        function=composite,
        base_point=s_f.base_point,
        neighborhood_radius=radius,
        slope_fn=lambda x: hom_compose(s_g.slope_at(f(x)), s_f.slope_at(x)),
        label=f"{s_g.label} o {s_f.label}",
    )
