# suites/planned_check.py
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Tuple

from algebra.report import VerificationReport


@dataclass(frozen=True)
class PlannedCheck:
    """A check bound to its inputs, not yet run. `tolerances` names the Tolerances fields it reads."""

    check_id: str
    anchor: str
    description: str
    run: Callable[[], VerificationReport] = field(repr=False)
    tolerances: Tuple[str, ...] = ()
    # counterexamples: the entry passes when the underlying check rejects its input
    expect_failure: bool = False

    def execute(self) -> VerificationReport:
        report = self.run()
        update = {"check_id": self.check_id, "anchor": self.anchor}
        if self.expect_failure:
            update.update(
                passed=not report.passed,
                witness=None if not report.passed else {"accepted": report.details},
                details={**report.details, "expected_failure": True, "rejected_witness": report.witness},
            )
        return report.model_copy(update=update)
