"""
theorem1: reduce a bracket tree of elementary subgroups node by node and check
every step certificate.
"""
import argparse
import logging
from pathlib import Path

from app.Certify.certificate import check, read_certificate, write_certificate
from app.Certify.reduction import check_plan, plan_reduction
from app.Commands.base_command import BaseCommand
from app.Helper.helper_exceptions import UsageError
from app.Helper.helper_parsing import parse_bracket_tree
from app.Helper.helper_pydantic import CommandOutcome
from app.Helper.helper_report import INDENT, reduction_lines, verdict

logger = logging.getLogger(__name__)


class Theorem1Command(BaseCommand):
    name = "theorem1"
    description = "Certify the generator-level reduction of a multiple commutator"

    @classmethod
    def add_arguments(cls, parser: argparse.ArgumentParser) -> None:
        parser.add_argument("--tree", required=True, help='Bracket tree, e.g. "[[A,B],[C,D]]"')
        parser.add_argument("--n", type=int, default=4, help="Matrix size (default 4)")
        parser.add_argument("--out", help="Also write the report to this file")
        parser.add_argument("--emit", help="Directory for the step certificates; each is re-checked from disk")

    def _run(self, args: argparse.Namespace) -> CommandOutcome:
        tree = parse_bracket_tree(args.tree)
        steps = plan_reduction(tree, args.n, self.settings)
        report = check_plan(tree, args.n, steps, self.settings.jobs)
        lines = reduction_lines(report)
        passed = report.passed

        if args.emit:
            directory = Path(args.emit)
            try:
                directory.mkdir(parents=True, exist_ok=True)
            except OSError as exc:
                raise UsageError(f"cannot create {directory}: {exc}") from None
            written = failed = 0
            for step_number, step in enumerate(steps, start=1):
                for cert_number, (_, cert) in enumerate(step.certificates, start=1):
                    path = directory / f"step{step_number:02d}_{cert_number:03d}.cert"
                    write_certificate(cert, path)
                    written += 1
                    if not check(read_certificate(path)).passed:
                        failed += 1
            lines.append(INDENT + verdict(failed == 0, f"re-check {directory}",
                                          f"{written - failed}/{written} certificates from file"))
            passed = passed and failed == 0

        if args.out:
            Path(args.out).write_text("\n".join(lines) + "\n", encoding="utf-8")
            logger.info(f"Report written to {args.out}")
        return self.outcome(lines, passed)
