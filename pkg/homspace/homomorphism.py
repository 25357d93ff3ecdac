# homspace/homomorphism.py
"""
Homomorphisms G -> H as immutable expression trees.

A tree is built from a closed set of constructors: a primitive evaluable map,
the pointwise product (phi (+) psi)[x] = phi[x] * psi[x], the inverse
phi^-1[x] = phi[x^-1], composition across Hom spaces, and a scalar multiple
when the codomain carries a scalar action. Evaluation walks the tree.
"""
from __future__ import annotations

from abc import ABC, abstractmethod
from dataclasses import dataclass, field
from typing import Any, Callable, Optional

from algebra.elements import GroupElement
from algebra.errors import ContractViolation, UnsupportedOperation
from algebra.metric_group import MetricGroupSpec

PayloadMap = Callable[[Any], Any]
Modulus = Callable[[float], float]


@dataclass(frozen=True, eq=False)
class Homomorphism(ABC):
    domain: MetricGroupSpec
    codomain: MetricGroupSpec
    label: str

    @property
    def domain_id(self) -> str:
        return self.domain.group_id

    @property
    def codomain_id(self) -> str:
        return self.codomain.group_id

    def __call__(self, x: GroupElement) -> GroupElement:
        x.require_group(self.domain_id)
        return self._apply(x)

    @abstractmethod
    def _apply(self, x: GroupElement) -> GroupElement:
        ...

    def __repr__(self) -> str:
        return f"Hom[{self.domain_id}->{self.codomain_id}]({self.label})"


@dataclass(frozen=True, eq=False, repr=False)
class Primitive(Homomorphism):
    """Wraps a payload-level map; `modulus` optionally bounds d(h(x), e) by modulus(d(x, e))."""

    fn: PayloadMap = field(default=None)
    modulus: Optional[Modulus] = None

    def _apply(self, x: GroupElement) -> GroupElement:
        return self.codomain.element(self.fn(x.payload))


@dataclass(frozen=True, eq=False, repr=False)
class OPlus(Homomorphism):
    left: Homomorphism = field(default=None)
    right: Homomorphism = field(default=None)

    def _apply(self, x: GroupElement) -> GroupElement:
        return self.codomain.compose(self.left(x), self.right(x))


@dataclass(frozen=True, eq=False, repr=False)
class HomInverse(Homomorphism):
    inner: Homomorphism = field(default=None)

    def _apply(self, x: GroupElement) -> GroupElement:
        return self.inner(self.domain.inverse(x))


@dataclass(frozen=True, eq=False, repr=False)
class Composed(Homomorphism):
    outer: Homomorphism = field(default=None)
    inner: Homomorphism = field(default=None)

    def _apply(self, x: GroupElement) -> GroupElement:
        return self.outer(self.inner(x))


@dataclass(frozen=True, eq=False, repr=False)
class Scaled(Homomorphism):
    alpha: float = 0.0
    inner: Homomorphism = field(default=None)

    def _apply(self, x: GroupElement) -> GroupElement:
        return self.codomain.scalar_action(self.alpha, self.inner(x))


# -- constructors -------------------------------------------------------------

def evaluate(h: Homomorphism, x: GroupElement) -> GroupElement:
    return h(x)


def primitive(
    domain: MetricGroupSpec,
    codomain: MetricGroupSpec,
    fn: PayloadMap,
    label: str,
    modulus: Optional[Modulus] = None,
) -> Homomorphism:
    return Primitive(domain=domain, codomain=codomain, label=label, fn=fn, modulus=modulus)


def sigma(domain: MetricGroupSpec, codomain: MetricGroupSpec) -> Homomorphism:
    """The neutral element of Hom(G; H): every x goes to e_H."""
    e_h = codomain.identity_payload
    return primitive(domain, codomain, lambda _: e_h, "sigma", modulus=lambda r: 0.0)


def identity_hom(spec: MetricGroupSpec) -> Homomorphism:
    return primitive(spec, spec, lambda x: x, "id", modulus=lambda r: r)


def _require_parallel(phi: Homomorphism, psi: Homomorphism) -> None:
    if phi.domain_id != psi.domain_id or phi.codomain_id != psi.codomain_id:
        raise ContractViolation(
            f"homomorphisms live in different spaces: {phi!r} vs {psi!r}"
        )


def oplus(phi: Homomorphism, psi: Homomorphism) -> Homomorphism:
    _require_parallel(phi, psi)
    return OPlus(domain=phi.domain, codomain=phi.codomain, label=f"({phi.label} (+) {psi.label})", left=phi, right=psi)


def hom_inverse(phi: Homomorphism) -> Homomorphism:
    return HomInverse(domain=phi.domain, codomain=phi.codomain, label=f"{phi.label}^-1", inner=phi)


def hom_compose(outer: Homomorphism, inner: Homomorphism) -> Homomorphism:
    if outer.domain_id != inner.codomain_id:
        raise ContractViolation(
            f"cannot compose {outer!r} after {inner!r}: '{inner.codomain_id}' != '{outer.domain_id}'"
        )
    return Composed(domain=inner.domain, codomain=outer.codomain, label=f"{outer.label} o {inner.label}", outer=outer, inner=inner)


def hom_scalar(alpha: float, phi: Homomorphism) -> Homomorphism:
    if not phi.codomain.has_scalar_action:
        raise UnsupportedOperation(f"codomain '{phi.codomain_id}' has no scalar action")
    return Scaled(domain=phi.domain, codomain=phi.codomain, label=f"{alpha:g}*{phi.label}", alpha=float(alpha), inner=phi)
