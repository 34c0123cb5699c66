"""
verify: derive and evaluate one of the closed-form formula tables.
"""
import argparse

from app.Certify.formula_tables import run_suite
from app.Commands.base_command import BaseCommand
from app.Helper.helper_constant import VERIFY_SUITES
from app.Helper.helper_pydantic import CommandOutcome
from app.Helper.helper_report import suite_lines, summary


class VerifyCommand(BaseCommand):
    name = "verify"
    description = "Machine-derive and evaluate a named formula table"

    @classmethod
    def add_arguments(cls, parser: argparse.ArgumentParser) -> None:
        parser.add_argument("--suite", required=True, choices=VERIFY_SUITES)
        parser.add_argument("--n", type=int, default=3, help="Matrix size (default 3)")

    def _run(self, args: argparse.Namespace) -> CommandOutcome:
        results = run_suite(args.suite, args.n)
        lines = suite_lines(results)
        lines.append(summary(f"suite {args.suite} n={args.n}", results))
        return self.outcome(lines, all(line.passed for line in results))
