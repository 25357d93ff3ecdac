# groups/elements.py
from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from typing import List, Union

import numpy as np

from algebra.errors import ContractViolation

Scalar = Union[int, float]


@dataclass(frozen=True, eq=False)
class MatrixElement:
    """
    A real n x n matrix with finite entries.

    Supports the arithmetic the worked examples need (`+`, `-`, `@`, scalar `*`
    and `/`), so slope bodies can be written as `A @ Y + Y @ X`.
    """

    entries: np.ndarray

    def __post_init__(self):
        entries = np.array(self.entries, dtype=float)
        if entries.ndim != 2 or entries.shape[0] != entries.shape[1] or entries.shape[0] == 0:
            raise ContractViolation(f"matrix must be square and non-empty, got shape {entries.shape}")
        if not np.all(np.isfinite(entries)):
            raise ContractViolation("matrix entries must be finite")
        entries.setflags(write=False)
        object.__setattr__(self, "entries", entries)

    @property
    def n(self) -> int:
        return self.entries.shape[0]

    @classmethod
    def zeros(cls, n: int) -> "MatrixElement":
        return cls(np.zeros((n, n)))

    @classmethod
    def eye(cls, n: int) -> "MatrixElement":
        return cls(np.eye(n))

    def norm(self) -> float:
        """Euclidean (Frobenius) norm."""
        return float(np.linalg.norm(self.entries))

    def to_json(self) -> List[List[float]]:
        return self.entries.tolist()

    def _other(self, other: "MatrixElement") -> np.ndarray:
        if not isinstance(other, MatrixElement):
            return NotImplemented
        if other.n != self.n:
            raise ContractViolation(f"dimension mismatch: {self.n} vs {other.n}")
        return other.entries

    def __add__(self, other):
        rhs = self._other(other)
        if rhs is NotImplemented:
            return NotImplemented
        return MatrixElement(self.entries + rhs)

    def __sub__(self, other):
        rhs = self._other(other)
        if rhs is NotImplemented:
            return NotImplemented
        return MatrixElement(self.entries - rhs)

    def __matmul__(self, other):
        rhs = self._other(other)
        if rhs is NotImplemented:
            return NotImplemented
        return MatrixElement(self.entries @ rhs)

    def __neg__(self):
        return MatrixElement(-self.entries)

    def __mul__(self, alpha: Scalar):
        if isinstance(alpha, MatrixElement):
            return NotImplemented
        return MatrixElement(float(alpha) * self.entries)

    __rmul__ = __mul__

    def __truediv__(self, alpha: Scalar):
        return MatrixElement(self.entries / float(alpha))

    def __repr__(self) -> str:
        return f"MatrixElement({self.to_json()})"


def normalize_angle(theta: float) -> float:
    """Canonical representative in (-pi, pi]."""
    theta = math.remainder(float(theta), 2.0 * math.pi)
    if theta <= -math.pi:
        theta += 2.0 * math.pi
    return theta


@dataclass(frozen=True)
class CircleElement:
    """A point e^{i angle} of the unit circle; the angle is kept in (-pi, pi]."""

    angle: float

    def __post_init__(self):
        if not math.isfinite(self.angle):
            raise ContractViolation("circle angle must be finite")
        object.__setattr__(self, "angle", normalize_angle(self.angle))

    @classmethod
    def from_complex(cls, z: complex) -> "CircleElement":
        if z == 0:
            raise ContractViolation("0 is not on the unit circle")
        return cls(cmath.phase(z))

    def to_complex(self) -> complex:
        return cmath.exp(1j * self.angle)

    def to_json(self) -> float:
        return self.angle

    def chord(self, other: "CircleElement") -> float:
        """|e^{i a} - e^{i b}| = 2 |sin((a - b) / 2)|."""
        return abs(2.0 * math.sin((self.angle - other.angle) / 2.0))

    def inverse(self) -> "CircleElement":
        return CircleElement(-self.angle)

    def root(self, n: int) -> "CircleElement":
        """Principal n-th root: angle / n with the angle taken in (-pi, pi]."""
        return CircleElement(self.angle / n)

    def __mul__(self, other):
        if not isinstance(other, CircleElement):
            return NotImplemented
        return CircleElement(self.angle + other.angle)

    def __pow__(self, k: int):
        return CircleElement(self.angle * k)
