# algebra/metric_group.py
from __future__ import annotations

import hashlib
import logging
from dataclasses import dataclass
from typing import Any, Callable, List, Optional, Union

import numpy as np

from algebra.elements import GroupElement, require_same_group
from algebra.errors import ConfigurationError, ContractViolation, UnsupportedOperation

logger = logging.getLogger(__name__)

Seed = Union[int, np.random.SeedSequence]

Payload = Any
Sampler = Callable[[np.random.Generator, int, float], List[Payload]]
NearSampler = Callable[[Payload, float, np.random.Generator, int], List[Payload]]


def make_rng(seed: Seed) -> np.random.Generator:
    return np.random.default_rng(seed)


def spawn_seeds(seed: Seed, count: int) -> List[np.random.SeedSequence]:
    """Independent child streams, so each stream keeps its prefix when counts grow."""
    root = seed if isinstance(seed, np.random.SeedSequence) else np.random.SeedSequence(seed)
    return root.spawn(count)


def derive_seed(root_seed: int, key: str) -> int:
    """Child seed for one check: stable under adding or removing other checks."""
    digest = hashlib.sha256(f"{root_seed}:{key}".encode("utf-8")).digest()
    return int.from_bytes(digest[:8], "big")


@dataclass(frozen=True)
class MetricGroupSpec:
    """
    A metric group described by its operations on payloads plus metadata.

    Factories in `groups.factories` build these; everything else talks to the
    group through the GroupElement-level methods below, which enforce that
    elements are never mixed across groups.
    """

    group_id: str
    kind: str
    label: str
    compose_fn: Callable[[Payload, Payload], Payload]
    inverse_fn: Callable[[Payload], Payload]
    identity_payload: Payload
    metric_fn: Callable[[Payload, Payload], float]
    sampler_fn: Sampler
    near_fn: NearSampler
    validate_fn: Callable[[Payload], Payload]
    serialize_fn: Callable[[Payload], Any]
    is_abelian: bool
    claims_group_metric: bool
    claims_divisible: bool
    nth_root_fn: Optional[Callable[[Payload, int], Payload]] = None
    scalar_fn: Optional[Callable[[float, Payload], Payload]] = None
    translation_constant_fn: Optional[Callable[[Payload], float]] = None
    sampling_scale: float = 1.0

    # -- construction -------------------------------------------------------

    def element(self, payload: Payload) -> GroupElement:
        return GroupElement(self.group_id, self.validate_fn(payload))

    @property
    def identity(self) -> GroupElement:
        return GroupElement(self.group_id, self.identity_payload)

    def _own(self, *elements: GroupElement) -> None:
        require_same_group(*elements)
        elements[0].require_group(self.group_id)

    # -- group structure ------------------------------------------------------

    def compose(self, x: GroupElement, y: GroupElement) -> GroupElement:
        self._own(x, y)
        return GroupElement(self.group_id, self.compose_fn(x.payload, y.payload))

    def inverse(self, x: GroupElement) -> GroupElement:
        self._own(x)
        return GroupElement(self.group_id, self.inverse_fn(x.payload))

    def divide(self, x: GroupElement, y: GroupElement) -> GroupElement:
        """x * y^-1, the right quotient used by the factorization identity."""
        return self.compose(x, self.inverse(y))

    def power(self, x: GroupElement, n: int) -> GroupElement:
        """n-fold composition of x with itself (n >= 0)."""
        if n < 0:
            return self.power(self.inverse(x), -n)
        result = self.identity
        for _ in range(n):
            result = self.compose(result, x)
        return result

    def metric(self, x: GroupElement, y: GroupElement) -> float:
        self._own(x, y)
        return float(self.metric_fn(x.payload, y.payload))

    def norm(self, x: GroupElement) -> float:
        """d(x, e)."""
        return self.metric(x, self.identity)

    # -- optional structure ---------------------------------------------------

    @property
    def has_nth_root(self) -> bool:
        return self.nth_root_fn is not None

    @property
    def has_scalar_action(self) -> bool:
        return self.scalar_fn is not None

    def nth_root(self, g: GroupElement, n: int) -> GroupElement:
        if self.nth_root_fn is None or not self.claims_divisible:
            raise UnsupportedOperation(f"group '{self.group_id}' has no n-th root operation")
        if n < 1:
            raise ContractViolation(f"root index must be positive, got {n}")
        self._own(g)
        if n == 1:
            return g
        return GroupElement(self.group_id, self.nth_root_fn(g.payload, n))

    def scalar_action(self, alpha: float, x: GroupElement) -> GroupElement:
        if self.scalar_fn is None:
            raise UnsupportedOperation(f"group '{self.group_id}' has no scalar action")
        self._own(x)
        return GroupElement(self.group_id, self.scalar_fn(alpha, x.payload))

    # -- sampling -------------------------------------------------------------

    def sample(self, seed: Seed, count: int, scale: Optional[float] = None) -> List[GroupElement]:
        if count < 1:
            raise ContractViolation(f"sample count must be >= 1, got {count}")
        scale = self.sampling_scale if scale is None else scale
        try:
            payloads = self.sampler_fn(make_rng(seed), count, scale)
        except Exception as e:
            raise ConfigurationError(f"sampler for '{self.group_id}' failed: {e}") from e
        return [self.element(p) for p in payloads]

    def sample_near(
        self, center: GroupElement, radius: float, seed: Seed, count: int
    ) -> List[GroupElement]:
        """Points x with d(x, center) <= radius."""
        if radius <= 0:
            raise ContractViolation(f"radius must be positive, got {radius}")
        self._own(center)
        try:
            payloads = self.near_fn(center.payload, radius, make_rng(seed), count)
        except Exception as e:
            raise ConfigurationError(f"neighbourhood sampler for '{self.group_id}' failed: {e}") from e
        return [self.element(p) for p in payloads]

    def serialize(self, x: GroupElement) -> Any:
        self._own(x)
        return self.serialize_fn(x.payload)


@dataclass(frozen=True)
class TranslationConstant:
    """Lipschitz constant c_k of right translation by k, estimated or exact."""

    k: GroupElement
    c_k: float
    exact: bool
    observed: float
    samples: int
    skipped: int

    def __post_init__(self):
        if not self.c_k > 0:
            raise ContractViolation(f"translation constant must be positive, got {self.c_k}")
