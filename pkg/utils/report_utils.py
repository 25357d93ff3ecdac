# utils/report_utils.py
import sys
from pathlib import Path
from typing import Optional, TextIO

from graph.suite_graph import SuiteReport
from suites.planned_check import PlannedCheck
from utils.settings import Tolerances


def pretty_print_report(report: SuiteReport, stream: Optional[TextIO] = None, failures_only: bool = False):
    stream = stream or sys.stderr
    entries = report.comparison.entries
    width = max((len(e.check_id) for e in entries), default=8)

    print(f"{'check':<{width}}  {'result':<6}  {'max violation':>13}  {'tolerance':>9}  anchor", file=stream)
    print("-" * (width + 50), file=stream)
    for entry in entries:
        if failures_only and entry.passed:
            continue
        verdict = "pass" if entry.passed else "FAIL"
        print(
            f"{entry.check_id:<{width}}  {verdict:<6}  {entry.max_violation:>13.3e}  {entry.tolerance:>9.1e}  {entry.anchor}",
            file=stream,
        )
    print("-" * (width + 50), file=stream)

    comparison = report.comparison
    summary = "PASS" if comparison.passed else f"FAIL ({comparison.failures} failing check(s))"
    print(
        f"{len(entries)} check(s), {summary}, {report.timing.duration_seconds:.1f}s "
        f"(seed={comparison.config.get('seed')}, suite={comparison.config.get('suite')})",
        file=stream,
    )
    for entry in entries:
        if not entry.passed and entry.witness:
            print(f"\n{entry.check_id} witness: {entry.witness}", file=stream)


def render_json(report: SuiteReport) -> str:
    return report.model_dump_json(indent=2) + "\n"


def write_report(report: SuiteReport, out: Optional[str] = None, stream: Optional[TextIO] = None) -> None:
    """JSON report to `out`, or to stdout when no path is given."""
    text = render_json(report)
    if out:
        path = Path(out)
        path.parent.mkdir(parents=True, exist_ok=True)
        path.write_text(text, encoding="utf-8")
    else:
        (stream or sys.stdout).write(text)


def format_explanation(check: PlannedCheck, tolerances: Tolerances) -> str:
    lines = [
        f"check:       {check.check_id}",
        f"anchor:      {check.anchor}",
        f"description: {check.description}",
    ]
    if check.expect_failure:
        lines.append("expects:     the underlying check to reject its input (counterexample)")
    if check.tolerances:
        lines.append("tolerances:")
        lines.extend(f"  {name} = {getattr(tolerances, name):g}" for name in check.tolerances)
    else:
        lines.append("tolerances:  none")
    return "\n".join(lines)
