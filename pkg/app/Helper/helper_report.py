"""
Report formatting
Turns engine results into the line-oriented report stream printed on stdout.

Every verdict line reads `PASS <name>: <detail>` or `FAIL <name>: <detail>`;
supporting lines are indented by two spaces so scripts can grep verdicts.
"""
from typing import Iterable, List

from app.Helper.helper_pydantic import (
    CentralityResult, CheckResult, MembershipReport, OracleReport, ReductionReport,
    ShadowResult, SuiteLine,
)

INDENT = "  "


def verdict(passed: bool, name: str, detail: str = "") -> str:
    prefix = "PASS" if passed else "FAIL"
    return f"{prefix} {name}: {detail}" if detail else f"{prefix} {name}"


def suite_lines(lines: Iterable[SuiteLine]) -> List[str]:
    output = []
    for line in lines:
        output.append(verdict(line.passed, line.name, line.detail))
        output.extend(INDENT + extra for extra in line.extra)
    return output


def summary(name: str, lines: List[SuiteLine]) -> str:
    failed = sum(not line.passed for line in lines)
    detail = f"{len(lines) - failed}/{len(lines)} checks passed"
    return verdict(failed == 0 and bool(lines), name, detail)


def membership_lines(report: MembershipReport, poly_text: str, ideal_text: str) -> List[str]:
    """MEMBER / NOT MEMBER followed by one witness per monomial."""
    if report.member:
        output = [f"MEMBER {poly_text} in {ideal_text}"]
    else:
        output = [f"NOT MEMBER {poly_text} in {ideal_text}: monomial {report.failing_monomial} has no witness"]
    output.extend(INDENT + witness for witness in report.witnesses)
    return output


def check_line(name: str, result: CheckResult) -> str:
    return verdict(result.passed, name, result.detail)


def reduction_lines(report: ReductionReport) -> List[str]:
    """Overall verdict, one line per node, and every failing certificate."""
    total = sum(len(step.checks) for step in report.steps)
    output = [verdict(report.passed, f"theorem1 {report.tree} n={report.n}",
                      f"{len(report.steps)} steps, {total} certificates")]
    for step in report.steps:
        failed = [(label, result) for label, result in step.checks if not result.passed]
        detail = f"{step.case}, cut {step.cut_point}, {step.construction} in {step.target}, {len(step.checks)} certificates"
        output.append(INDENT + verdict(step.passed, f"step {step.node}", detail))
        output.extend(INDENT * 2 + check_line(label, result) for label, result in failed)
    return output


def shadow_line(result: ShadowResult) -> SuiteLine:
    detail = f"{result.failures} failures in {result.trials} trials over {result.ring}, seed {result.seed}"
    extra = [result.first_failure] if result.first_failure else []
    return SuiteLine(passed=result.passed, name=f"shadow {result.name}", detail=detail, extra=extra)


def centrality_line(name: str, result: CentralityResult) -> SuiteLine:
    state = "central" if result.central else "not central"
    extra = [result.first_failure] if result.first_failure else []
    return SuiteLine(passed=result.central, name=name,
                     detail=f"{state} after {result.checked_pairs} commutators", extra=extra)


def oracle_lines(report: OracleReport) -> List[str]:
    seed = "" if report.seed is None else f", seed {report.seed}"
    header = verdict(report.passed, f"oracle {report.task}", f"{report.ring}{seed}")
    return [header] + [INDENT + line for line in suite_lines(report.lines)]
