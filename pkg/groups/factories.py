# groups/factories.py
"""
Concrete metric groups: (R,+), (R+,*), (C*,*), (S^1,*) and (M_nxn(R),+).

Each factory returns an immutable MetricGroupSpec. Additive groups sample
zero-mean uniform values of the given scale; multiplicative groups sample
exp of such values so payloads stay away from zero.
"""
from __future__ import annotations

import cmath
import math
from functools import lru_cache
from typing import Any, List

import numpy as np

from algebra.errors import ConfigurationError, ContractViolation
from algebra.metric_group import MetricGroupSpec
from groups.elements import CircleElement, MatrixElement

# exp of larger log-magnitudes overflows once cubed or multiplied a few times
MAX_LOG_SCALE = 30.0


def _finite_real(payload: Any) -> float:
    if isinstance(payload, (complex, np.complexfloating)):
        raise ContractViolation(f"expected a real number, got {payload!r}")
    value = float(payload)
    if not math.isfinite(value):
        raise ContractViolation(f"payload must be finite, got {payload!r}")
    return value


def _signed_magnitudes(rng: np.random.Generator, count: int, radius: float) -> np.ndarray:
    """Offsets with |offset| in [radius/2, radius] and random sign."""
    draws = rng.uniform(0.0, 1.0, size=(count, 2))
    return np.where(draws[:, 1] < 0.5, -1.0, 1.0) * (0.5 + 0.5 * draws[:, 0]) * radius


# -- (R, +) -----------------------------------------------------------------

def _real_sampler(rng: np.random.Generator, count: int, scale: float) -> List[float]:
    return rng.uniform(-scale, scale, size=count).tolist()


def _real_near(center: float, radius: float, rng: np.random.Generator, count: int) -> List[float]:
    return (center + _signed_magnitudes(rng, count, radius)).tolist()


@lru_cache(maxsize=None)
def make_real_additive() -> MetricGroupSpec:
    return MetricGroupSpec(
        group_id="real-add",
        kind="real-add",
        label="(R,+)",
        compose_fn=lambda x, y: x + y,
        inverse_fn=lambda x: -x,
        identity_payload=0.0,
        metric_fn=lambda x, y: abs(x - y),
        sampler_fn=_real_sampler,
        near_fn=_real_near,
        validate_fn=_finite_real,
        serialize_fn=float,
        is_abelian=True,
        claims_group_metric=True,
        claims_divisible=True,
        nth_root_fn=lambda g, n: g / n,
        scalar_fn=lambda alpha, x: x * float(alpha),
        translation_constant_fn=lambda k: 1.0,
    )


# -- (R+, *) ----------------------------------------------------------------

def _positive_real(payload: Any) -> float:
    value = _finite_real(payload)
    if value <= 0:
        raise ContractViolation(f"positive reals exclude {value}")
    return value


def _positive_sampler(rng: np.random.Generator, count: int, scale: float) -> List[float]:
    width = min(scale, MAX_LOG_SCALE)
    return np.exp(rng.uniform(-width, width, size=count)).tolist()


def _positive_near(center: float, radius: float, rng: np.random.Generator, count: int) -> List[float]:
    # stays inside (center/2, ...) so the point is still positive
    return (center + _signed_magnitudes(rng, count, min(radius, 0.5 * center))).tolist()


@lru_cache(maxsize=None)
def make_positive_reals() -> MetricGroupSpec:
    return MetricGroupSpec(
        group_id="pos-real-mul",
        kind="pos-real-mul",
        label="(R+,*)",
        compose_fn=lambda x, y: x * y,
        inverse_fn=lambda x: 1.0 / x,
        identity_payload=1.0,
        metric_fn=lambda x, y: abs(x - y),
        sampler_fn=_positive_sampler,
        near_fn=_positive_near,
        validate_fn=_positive_real,
        serialize_fn=float,
        is_abelian=True,
        claims_group_metric=True,
        claims_divisible=True,
        nth_root_fn=lambda g, n: g ** (1.0 / n),
        translation_constant_fn=lambda k: k,
    )


# -- (C*, *) ----------------------------------------------------------------

def _nonzero_complex(payload: Any) -> complex:
    value = complex(payload)
    if not (math.isfinite(value.real) and math.isfinite(value.imag)):
        raise ContractViolation(f"payload must be finite, got {payload!r}")
    if value == 0:
        raise ContractViolation("0 is not an element of C*")
    return value


def _complex_sampler(rng: np.random.Generator, count: int, scale: float) -> List[complex]:
    width = min(scale, MAX_LOG_SCALE)
    draws = rng.uniform(-1.0, 1.0, size=(count, 2))
    return [cmath.exp(complex(width * a, math.pi * b)) for a, b in draws]


def _complex_near(center: complex, radius: float, rng: np.random.Generator, count: int) -> List[complex]:
    reach = min(radius, 0.5 * abs(center))
    draws = rng.uniform(0.0, 1.0, size=(count, 2))
    return [center + reach * (0.5 + 0.5 * m) * cmath.exp(2j * math.pi * p) for m, p in draws]


@lru_cache(maxsize=None)
def make_complex_multiplicative() -> MetricGroupSpec:
    return MetricGroupSpec(
        group_id="complex-mul",
        kind="complex-mul",
        label="(C*,*)",
        compose_fn=lambda x, y: x * y,
        inverse_fn=lambda x: 1.0 / x,
        identity_payload=complex(1.0, 0.0),
        metric_fn=lambda x, y: abs(x - y),
        sampler_fn=_complex_sampler,
        near_fn=_complex_near,
        validate_fn=_nonzero_complex,
        serialize_fn=lambda z: {"re": z.real, "im": z.imag},
        is_abelian=True,
        claims_group_metric=True,
        # no canonical unique root is needed; the positive reals and the circle cover divisibility
        claims_divisible=False,
        translation_constant_fn=abs,
    )


# -- (S^1, *) ---------------------------------------------------------------

def _circle_payload(payload: Any) -> CircleElement:
    if isinstance(payload, CircleElement):
        return payload
    if isinstance(payload, complex):
        return CircleElement.from_complex(payload)
    return CircleElement(_finite_real(payload))


def _circle_sampler(rng: np.random.Generator, count: int, scale: float) -> List[CircleElement]:
    width = min(math.pi, scale * math.pi)
    return [CircleElement(theta) for theta in rng.uniform(-width, width, size=count)]


def _circle_near(center: CircleElement, radius: float, rng: np.random.Generator, count: int) -> List[CircleElement]:
    # chord 2|sin(d/2)| <= radius  <=>  |d| <= 2 asin(radius/2)
    max_offset = 2.0 * math.asin(min(radius / 2.0, 1.0))
    return [CircleElement(center.angle + d) for d in _signed_magnitudes(rng, count, max_offset)]


@lru_cache(maxsize=None)
def make_circle() -> MetricGroupSpec:
    """Unit circle with the chord metric and principal-branch roots."""
    return MetricGroupSpec(
        group_id="circle",
        kind="circle",
        label="(S1,*)",
        compose_fn=lambda x, y: x * y,
        inverse_fn=lambda x: x.inverse(),
        identity_payload=CircleElement(0.0),
        metric_fn=lambda x, y: x.chord(y),
        sampler_fn=_circle_sampler,
        near_fn=_circle_near,
        validate_fn=_circle_payload,
        serialize_fn=lambda x: x.to_json(),
        is_abelian=True,
        claims_group_metric=True,
        claims_divisible=True,
        nth_root_fn=lambda g, n: g.root(n),
        translation_constant_fn=lambda k: 1.0,
    )


# -- (M_nxn(R), +) ----------------------------------------------------------

def _matrix_payload(n: int):
    def validate(payload: Any) -> MatrixElement:
        element = payload if isinstance(payload, MatrixElement) else MatrixElement(np.asarray(payload))
        if element.n != n:
            raise ContractViolation(f"expected a {n}x{n} matrix, got {element.n}x{element.n}")
        return element
    return validate


def _matrix_sampler(n: int):
    def sample(rng: np.random.Generator, count: int, scale: float) -> List[MatrixElement]:
        return [MatrixElement(m) for m in rng.uniform(-scale, scale, size=(count, n, n))]
    return sample


def _matrix_near(n: int):
    def near(center: MatrixElement, radius: float, rng: np.random.Generator, count: int) -> List[MatrixElement]:
        directions = rng.uniform(-1.0, 1.0, size=(count, n, n))
        magnitudes = rng.uniform(0.5, 1.0, size=count) * radius
        points = []
        for direction, magnitude in zip(directions, magnitudes):
            length = np.linalg.norm(direction)
            if length == 0:
                direction, length = np.eye(n), math.sqrt(n)
            points.append(center + MatrixElement(direction * (magnitude / length)))
        return points
    return near


@lru_cache(maxsize=None)
def make_matrix_additive(n: int = 2) -> MetricGroupSpec:
    """Real n x n matrices under addition, metric ||X - Y|| (Frobenius)."""
    if not isinstance(n, int) or n < 1:
        raise ConfigurationError(f"matrix dimension must be a positive integer, got {n!r}")
    return MetricGroupSpec(
        group_id=f"matrix-add:{n}",
        kind="matrix-add",
        label=f"(M_{n}x{n}(R),+)",
        compose_fn=lambda x, y: x + y,
        inverse_fn=lambda x: -x,
        identity_payload=MatrixElement.zeros(n),
        metric_fn=lambda x, y: (x - y).norm(),
        sampler_fn=_matrix_sampler(n),
        near_fn=_matrix_near(n),
        validate_fn=_matrix_payload(n),
        serialize_fn=lambda x: x.to_json(),
        is_abelian=True,
        claims_group_metric=True,
        claims_divisible=True,
        nth_root_fn=lambda g, n_: g / n_,
        scalar_fn=lambda alpha, x: x * float(alpha),
        translation_constant_fn=lambda k: 1.0,
    )
