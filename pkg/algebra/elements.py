# algebra/elements.py
from __future__ import annotations

from dataclasses import dataclass
from typing import Any

from algebra.errors import ContractViolation


@dataclass(frozen=True, eq=False)
class GroupElement:
    """
    A value of a registered group, tagged with the id of the group it belongs to.

    The payload is opaque here; only the owning MetricGroupSpec knows how to
    compose, invert or measure it.
    """

    group_id: str
    payload: Any

    def require_group(self, group_id: str) -> "GroupElement":
        if self.group_id != group_id:
            raise ContractViolation(
                f"element of group '{self.group_id}' used where '{group_id}' is required"
            )
        return self

    def __repr__(self) -> str:
        return f"GroupElement({self.group_id}: {self.payload!r})"


def require_same_group(*elements: GroupElement) -> str:
    """Returns the shared group id, or raises if the elements come from different groups."""
    if not elements:
        raise ContractViolation("no elements given")
    group_id = elements[0].group_id
    for element in elements[1:]:
        element.require_group(group_id)
    return group_id
