# graph/suite_graph.py
import logging
import time
from concurrent.futures import ThreadPoolExecutor
from datetime import datetime, timezone
from typing import Any, Dict, List, Optional

from pydantic import BaseModel, Field, SerializeAsAny

from algebra.errors import CaratheodoryError, ConfigurationError
from algebra.report import VerificationReport
from suites.planned_check import PlannedCheck
from suites.registry import build_suites
from utils.settings import ARTIFACT_VERSION, SCHEMA_VERSION, SuiteConfig

logger = logging.getLogger(__name__)


class Comparison(BaseModel):
    """The run-independent part of a report: equal configs give byte-identical JSON here."""

    artifact_version: str = ARTIFACT_VERSION
    config: Dict[str, Any]
    entries: List[SerializeAsAny[VerificationReport]]
    passed: bool
    failures: int


class Timing(BaseModel):
    started_at: str
    duration_seconds: float


class SuiteReport(BaseModel):
    schema_version: int = SCHEMA_VERSION
    comparison: Comparison
    timing: Timing

    @property
    def passed(self) -> bool:
        return self.comparison.passed

    @property
    def failed_entries(self) -> List[VerificationReport]:
        return [entry for entry in self.comparison.entries if not entry.passed]


class SuiteGraph:
    """Collects the planned checks of several suites and runs them on a thread pool."""

    def __init__(self, suites: Dict[str, Any], workers: int = 4):
        self.suites = suites
        self.workers = workers
        self.checks: Dict[str, PlannedCheck] = {}

    def build_graph(self) -> "SuiteGraph":
        for name, suite in self.suites.items():
            planned = suite.create_checks()
            logger.info(f"suite '{name}': {len(planned)} check(s)")
            for check in planned:
                if check.check_id in self.checks:
                    raise ConfigurationError(f"duplicate check id '{check.check_id}'")
                self.checks[check.check_id] = check
        return self

    def explain(self, check_id: str) -> PlannedCheck:
        try:
            return self.checks[check_id]
        except KeyError:
            raise ConfigurationError(f"unknown check id '{check_id}'") from None

    def run_check(self, check: PlannedCheck) -> VerificationReport:
        started = time.perf_counter()
        try:
            report = check.execute()
        except ConfigurationError:
            raise
        except CaratheodoryError as e:
            logger.warning(f"{check.check_id} raised {type(e).__name__}: {e}")
            report = VerificationReport(
                check_id=check.check_id,
                anchor=check.anchor,
                description=check.description,
                passed=False,
                witness={"error": type(e).__name__, "message": str(e)},
            )
        logger.info(f"{check.check_id}: {'pass' if report.passed else 'FAIL'} ({time.perf_counter() - started:.2f}s)")
        return report

    def run(self, config: SuiteConfig) -> SuiteReport:
        started_at = datetime.now(timezone.utc).isoformat()
        started = time.perf_counter()
        ordered = [self.checks[cid] for cid in sorted(self.checks)]

        with ThreadPoolExecutor(max_workers=self.workers) as executor:
            entries = list(executor.map(self.run_check, ordered))

        entries.sort(key=lambda entry: entry.check_id)
        failures = sum(1 for entry in entries if not entry.passed)
        return SuiteReport(
            comparison=Comparison(
                config=config.comparison_echo(),
                entries=entries,
                passed=failures == 0,
                failures=failures,
            ),
            timing=Timing(started_at=started_at, duration_seconds=time.perf_counter() - started),
        )


def run_suite(config: SuiteConfig, graph: Optional[SuiteGraph] = None) -> SuiteReport:
    """Builds the suites named by config.suite and runs every check they plan."""
    graph = graph or SuiteGraph(build_suites(config), workers=config.workers).build_graph()
    report = graph.run(config)
    logger.info(
        f"run_suite '{config.suite}': {len(report.comparison.entries)} check(s), "
        f"{report.comparison.failures} failure(s) in {report.timing.duration_seconds:.1f}s"
    )
    return report
