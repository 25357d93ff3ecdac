# suites/registry.py
from typing import Dict, List

from algebra.errors import ConfigurationError
from suites.axioms_suite import AxiomsSuite
from suites.derivative_suite import DerivativeSuite
from suites.homspace_suite import HomSpaceSuite
from suites.theorems_suite import TheoremsSuite
from utils.settings import SuiteConfig

SUITE_CLASSES = {
    "axioms": AxiomsSuite,
    "homspace": HomSpaceSuite,
    "derivative": DerivativeSuite,
    "theorems": TheoremsSuite,
}
ALL_SUITES = "all"


def list_suites() -> List[str]:
    return sorted([*SUITE_CLASSES, ALL_SUITES])


def build_suites(config: SuiteConfig) -> Dict[str, object]:
    """Suite instances for config.suite ('all' selects every suite), keyed by name."""
    if config.suite == ALL_SUITES:
        names = list(SUITE_CLASSES)
    elif config.suite in SUITE_CLASSES:
        names = [config.suite]
    else:
        raise ConfigurationError(f"unknown suite '{config.suite}' (known: {', '.join(list_suites())})")
    return {name: SUITE_CLASSES[name](config) for name in names}
