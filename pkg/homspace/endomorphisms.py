# homspace/endomorphisms.py
"""Families of continuous endomorphisms of the shipped groups, for the Hom-space suites."""
from __future__ import annotations

from typing import List

from algebra.errors import UnsupportedOperation
from algebra.metric_group import MetricGroupSpec, Seed, make_rng
from groups.elements import MatrixElement
from homspace.homomorphism import Homomorphism, primitive


def scaling_hom(spec: MetricGroupSpec, c: float) -> Homomorphism:
    """t -> c t on (R, +)."""
    c = float(c)
    return primitive(spec, spec, lambda t: c * t, f"{c:g}t", modulus=lambda r: abs(c) * r)


def sylvester_hom(spec: MetricGroupSpec, left: MatrixElement, right: MatrixElement) -> Homomorphism:
    """Y -> L Y + Y R on (M_nxn(R), +)."""
    bound = left.norm() + right.norm()
    return primitive(spec, spec, lambda y: left @ y + y @ right, "LY+YR", modulus=lambda r: bound * r)


def power_hom(spec: MetricGroupSpec, k: float) -> Homomorphism:
    """t -> t^k on a multiplicative Abelian group (integer k off the positive reals)."""
    return primitive(spec, spec, lambda t: t ** k, f"t^{k:g}")


def random_endomorphisms(spec: MetricGroupSpec, seed: Seed, count: int) -> List[Homomorphism]:
    rng = make_rng(seed)
    if spec.kind == "real-add":
        return [scaling_hom(spec, c) for c in rng.uniform(-3.0, 3.0, size=count)]
    if spec.kind == "matrix-add":
        n = spec.identity_payload.n
        draws = rng.uniform(-1.0, 1.0, size=(count, 2, n, n))
        return [sylvester_hom(spec, MatrixElement(b), MatrixElement(c)) for b, c in draws]
    if spec.kind == "pos-real-mul":
        return [power_hom(spec, float(c)) for c in rng.uniform(-2.0, 2.0, size=count)]
    if spec.kind in ("complex-mul", "circle"):
        return [power_hom(spec, int(k)) for k in rng.integers(-3, 4, size=count)]
    raise UnsupportedOperation(f"no endomorphism family for group kind '{spec.kind}'")
