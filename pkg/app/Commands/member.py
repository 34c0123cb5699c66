"""
member: decide whether a polynomial lies in an ideal expression.
"""
import argparse
import logging

from app.Commands.base_command import BaseCommand
from app.Helper.helper_exceptions import UsageError
from app.Helper.helper_parsing import parse_ideal, parse_polynomial, symbolic_ring
from app.Helper.helper_pydantic import CommandOutcome
from app.Helper.helper_report import membership_lines, verdict
from app.Ideal.membership import brute_member, membership_report, monomial_member

logger = logging.getLogger(__name__)


class MemberCommand(BaseCommand):
    name = "member"
    description = "Decide ideal membership of a polynomial and print a witness"

    @classmethod
    def add_arguments(cls, parser: argparse.ArgumentParser) -> None:
        parser.add_argument("--ring", required=True, help='Free algebra, e.g. "free(Z; a:A, b:B, c:C)"')
        parser.add_argument("--ideal", required=True, help='Ideal expression, e.g. "(A o B) o C"')
        parser.add_argument("--poly", required=True, help='Polynomial, e.g. "b c a"')
        parser.add_argument("--brute", action="store_true",
                            help="Cross-check every monomial against the exhaustive search")

    def _run(self, args: argparse.Namespace) -> CommandOutcome:
        ring = symbolic_ring(args.ring)
        if not ring.is_free:
            raise UsageError(f"membership is decided over free algebras, got {ring.describe()}")
        ideal = parse_ideal(args.ideal)
        p = parse_polynomial(args.poly, ring)
        report = membership_report(p, ideal)
        lines = membership_lines(report, ring.to_text(p), ideal.to_text())
        if not args.brute:
            return self.outcome(lines)

        disagreements = []
        for word in sorted(p.terms):
            fast, _ = monomial_member(word, ideal, ring)
            if fast != brute_member(word, ideal, ring, self.settings.brute_degree_bound):
                disagreements.append(ring.word_text(word) or "1")
        detail = f"{len(p.terms)} monomials" if not disagreements else f"disagree on {', '.join(disagreements)}"
        lines.append(verdict(not disagreements, "brute-force agreement", detail))
        return self.outcome(lines, not disagreements)
