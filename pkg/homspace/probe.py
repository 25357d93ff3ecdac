# homspace/probe.py
from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence, Tuple

import numpy as np

from algebra.elements import GroupElement
from algebra.errors import ContractViolation
from algebra.metric_group import MetricGroupSpec, Seed, spawn_seeds

# share of probe points spent on the near-identity neighbourhood
NEAR_IDENTITY_FRACTION = 0.125


@dataclass(frozen=True)
class ProbeSet:
    """Finite stand-in for "all t in G" when a supremum or a pointwise law is checked."""

    points: Tuple[GroupElement, ...]
    description: str

    def __post_init__(self):
        if not self.points:
            raise ContractViolation("probe set must not be empty")
        group_id = self.points[0].group_id
        for point in self.points:
            point.require_group(group_id)
        object.__setattr__(self, "points", tuple(self.points))

    @property
    def group_id(self) -> str:
        return self.points[0].group_id

    def __len__(self) -> int:
        return len(self.points)

    def __iter__(self):
        return iter(self.points)

    def union(self, other: "ProbeSet") -> "ProbeSet":
        return ProbeSet(self.points + other.points, f"{self.description} + {other.description}")


def probe_from_points(points: Sequence[GroupElement], description: str = "explicit") -> ProbeSet:
    return ProbeSet(tuple(points), description)


def standard_probe(
    spec: MetricGroupSpec,
    seed: Seed,
    count: int = 64,
    scale_range: Tuple[float, float] = (1e-2, 1e2),
) -> ProbeSet:
    """
    Log-spaced sampling scales over scale_range (times the group's sampling
    scale) plus a handful of points near the identity.
    """
    if count < 1:
        raise ContractViolation(f"probe count must be >= 1, got {count}")
    low, high = scale_range
    near_count = max(1, int(round(count * NEAR_IDENTITY_FRACTION))) if count > 1 else 0
    far_count = count - near_count
    near_seed, *scale_seeds = spawn_seeds(seed, far_count + 1)

    points = []
    for scale, child in zip(np.geomspace(low, high, num=far_count), scale_seeds):
        points.extend(spec.sample(child, 1, scale=float(scale) * spec.sampling_scale))
    if near_count:
        radius = low * spec.sampling_scale
        points.extend(spec.sample_near(spec.identity, radius, near_seed, near_count))

    description = (
        f"standard probe on {spec.group_id}: seed={seed if isinstance(seed, int) else 'derived'}, "
        f"count={count}, scales=[{low:g}, {high:g}] x {spec.sampling_scale:g}, near-identity={near_count}"
    )
    return ProbeSet(tuple(points), description)
