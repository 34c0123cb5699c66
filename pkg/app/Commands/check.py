"""
check: re-verify certificate files from their text alone.
"""
import argparse
import logging

from app.Certify.certificate import check_all, read_certificate
from app.Commands.base_command import BaseCommand
from app.Helper.helper_constant import ENGINE_DEFAULTS, SHADOW_RINGS
from app.Helper.helper_parsing import symbolic_ring
from app.Helper.helper_pydantic import CommandOutcome
from app.Helper.helper_report import INDENT, check_line, shadow_line, suite_lines
from app.Oracle.finite_ring import FiniteRing
from app.Oracle.shadow import shadow_certificate

logger = logging.getLogger(__name__)


class CheckCommand(BaseCommand):
    name = "check"
    description = "Re-verify certificate files"

    @classmethod
    def add_arguments(cls, parser: argparse.ArgumentParser) -> None:
        parser.add_argument("--in", dest="paths", action="append", required=True,
                            help="Certificate file (repeatable)")
        parser.add_argument("--shadow", action="store_true",
                            help="Also replay each certificate in Z/6 and Z/8 under random substitutions")
        parser.add_argument("--trials", type=int, default=None,
                            help=f"Shadow trials per ring (default {ENGINE_DEFAULTS['shadow_trials']})")
        parser.add_argument("--seed", type=int, default=None, help="Shadow seed (default 0)")

    def _run(self, args: argparse.Namespace) -> CommandOutcome:
        lines = []
        passed = True
        certs = [read_certificate(path) for path in args.paths]
        results = check_all(certs, self.settings.jobs)
        for path, cert, result in zip(args.paths, certs, results):
            passed = passed and result.passed
            lines.append(check_line(f"check {path}", result))
            if not args.shadow:
                continue
            for ring_text, divisors in SHADOW_RINGS.items():
                finite = FiniteRing(symbolic_ring(ring_text), divisors)
                shadow = shadow_certificate(cert, finite, self.settings.shadow_trials, self.settings.seed,
                                            progress=self.settings.progress)
                passed = passed and shadow.passed
                lines.extend(INDENT + line for line in suite_lines([shadow_line(shadow)]))
        logger.info(f"Checked {len(args.paths)} certificate files")
        return self.outcome(lines, passed)
