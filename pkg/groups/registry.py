# groups/registry.py
from typing import Callable, Dict, List

from algebra.errors import ConfigurationError
from algebra.metric_group import MetricGroupSpec
from groups.factories import (
    make_circle,
    make_complex_multiplicative,
    make_matrix_additive,
    make_positive_reals,
    make_real_additive,
)

GROUP_FACTORIES: Dict[str, Callable[[], MetricGroupSpec]] = {
    "circle": make_circle,
    "complex-mul": make_complex_multiplicative,
    "pos-real-mul": make_positive_reals,
    "real-add": make_real_additive,
}

MATRIX_PREFIX = "matrix-add"
DEFAULT_MATRIX_DIMENSION = 2

# groups left out of the divisibility suites, with the reason shown by `list`
NOT_DIVISIBLE = {"complex-mul": "no canonical unique n-th root; registered without nth_root"}


def list_groups() -> List[str]:
    return sorted([*GROUP_FACTORIES, f"{MATRIX_PREFIX}:n"])


def resolve_group(name: str) -> MetricGroupSpec:
    """Looks a group up by registry name; 'matrix-add:3' selects the dimension."""
    key = name.strip()
    if key in GROUP_FACTORIES:
        return GROUP_FACTORIES[key]()
    if key == MATRIX_PREFIX:
        return make_matrix_additive(DEFAULT_MATRIX_DIMENSION)
    if key.startswith(f"{MATRIX_PREFIX}:"):
        raw = key.split(":", 1)[1]
        try:
            n = int(raw)
        except ValueError:
            raise ConfigurationError(f"unknown group '{name}': matrix dimension '{raw}' is not an integer")
        return make_matrix_additive(n)
    raise ConfigurationError(f"unknown group '{name}' (known: {', '.join(list_groups())})")
