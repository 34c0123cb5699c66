"""
oracle: brute-force checks over finite rings.

    closure     sizes of E(n, A), E(n, B) and [E(n, A), E(n, B)]
    centrality  [E(n, A), E(n, B)] is central in E(n, R) modulo E(n, R, A o B)
    shadow      named identities or a certificate under random substitutions
"""
import argparse
import logging
from typing import List

from app.Certify.certificate import read_certificate
from app.Commands.base_command import BaseCommand
from app.Helper.helper_constant import ENGINE_DEFAULTS, ORACLE_TASKS, PLAIN_TAG
from app.Helper.helper_parsing import symbolic_ring
from app.Helper.helper_pydantic import CommandOutcome, OracleReport, SuiteLine
from app.Helper.helper_report import centrality_line, oracle_lines, shadow_line
from app.Ideal.ideal_expr import Atom, SymProd
from app.Oracle.closure import (
    SubgroupHandle, centrality_check, closure, elementary_generators, mixed_commutator_generators,
    mixed_group_generators, relative_generators,
)
from app.Oracle.finite_ring import FiniteRing, parse_divisors
from app.Oracle.shadow import SHADOW_IDENTITIES, comaximal_shadow, numeric_shadow, shadow_certificate

logger = logging.getLogger(__name__)


def _size_line(name: str, group: SubgroupHandle) -> SuiteLine:
    return SuiteLine(passed=True, name=name, detail=f"{group.size} elements from {len(group.generators)} generators")


class OracleCommand(BaseCommand):
    name = "oracle"
    description = "Brute-force closure, centrality and numeric shadow checks over a finite ring"

    @classmethod
    def add_arguments(cls, parser: argparse.ArgumentParser) -> None:
        parser.add_argument("--ring", required=True, help='Finite ring, e.g. "Z/4" or "trunc(F2; a:A, b:B; 2)"')
        parser.add_argument("--task", required=True, choices=ORACLE_TASKS)
        parser.add_argument("--ideal", default="", help='Ideal divisors for Z/m, e.g. "A=2,B=3"')
        parser.add_argument("--n", type=int, default=3, help="Matrix size (default 3)")
        parser.add_argument("--first", default="A", help="Tag of the first ideal (default A)")
        parser.add_argument("--second", default="B", help="Tag of the second ideal (default B)")
        parser.add_argument("--definition", action="store_true",
                            help="closure: also build [E(n,A),E(n,B)] from all commutators of elements")
        parser.add_argument("--identity", choices=SHADOW_IDENTITIES + ("comaximal",),
                            help="shadow: identity to replay (default: every table identity)")
        parser.add_argument("--in", dest="path", help="shadow: certificate file to replay")
        parser.add_argument("--trials", type=int, default=None,
                            help=f"shadow: substitutions (default {ENGINE_DEFAULTS['shadow_trials']})")
        parser.add_argument("--seed", type=int, default=None, help="shadow: random seed (default 0)")

    def _run(self, args: argparse.Namespace) -> CommandOutcome:
        finite = FiniteRing(symbolic_ring(args.ring), parse_divisors(args.ideal))
        if args.task == "closure":
            report = self._closure(finite, args)
        elif args.task == "centrality":
            report = self._centrality(finite, args)
        else:
            report = self._shadow(finite, args)
        return self.outcome(oracle_lines(report), report.passed)

    def _closure_of(self, gens, finite: FiniteRing, n: int) -> SubgroupHandle:
        return closure(gens, finite.ring, n, self.settings.closure_cap, self.settings.progress)

    def _closure(self, finite: FiniteRing, args: argparse.Namespace) -> OracleReport:
        n, first, second = args.n, args.first, args.second
        report = OracleReport(task="closure", ring=finite.describe())
        first_group = self._closure_of(elementary_generators(finite, n, first), finite, n)
        second_group = self._closure_of(elementary_generators(finite, n, second), finite, n)
        mixed = self._closure_of(mixed_group_generators(finite, n, first, second), finite, n)
        report.lines += [
            _size_line(f"closure E({n},{first})", first_group),
            _size_line(f"closure E({n},{second})", second_group),
            _size_line(f"closure [E({n},{first}),E({n},{second})]", mixed),
        ]
        if args.definition:
            defined = self._closure_of(mixed_commutator_generators(first_group, second_group), finite, n)
            same = defined.size == mixed.size and all(defined.contains(g) for g in mixed.generators)
            report.lines.append(SuiteLine(
                passed=same, name="generator set matches definition",
                detail=f"{defined.size} elements from {len(defined.generators)} commutators",
            ))
        return report

    def _centrality(self, finite: FiniteRing, args: argparse.Namespace) -> OracleReport:
        n, first, second = args.n, args.first, args.second
        report = OracleReport(task="centrality", ring=finite.describe())
        mixed = self._closure_of(mixed_group_generators(finite, n, first, second), finite, n)
        claim = SymProd(Atom(first), Atom(second))
        values = [x for x in finite.ideal_elements(PLAIN_TAG) if finite.ideal_contains(claim, x)]
        normal = self._closure_of(relative_generators(finite, n, values), finite, n)
        ambient = elementary_generators(finite, n, PLAIN_TAG)
        report.lines += [
            _size_line(f"closure [E({n},{first}),E({n},{second})]", mixed),
            _size_line(f"closure E({n},R,{claim.to_text()})", normal),
        ]
        report.lines.append(centrality_line(
            f"[E({n},{first}),E({n},{second})] central modulo E({n},R,{claim.to_text()})",
            centrality_check(mixed, ambient, normal),
        ))
        return report

    def _shadow(self, finite: FiniteRing, args: argparse.Namespace) -> OracleReport:
        settings = self.settings
        report = OracleReport(task="shadow", ring=finite.describe(), seed=settings.seed)
        logger.info(f"Shadow seed {settings.seed}")
        if args.path:
            result = shadow_certificate(read_certificate(args.path), finite, settings.shadow_trials,
                                        settings.seed, progress=settings.progress)
            result.name = args.path
            report.lines.append(shadow_line(result))
            return report
        if args.identity == "comaximal":
            report.lines += comaximal_shadow(finite, settings.shadow_trials, settings.seed, args.n,
                                             settings.progress)
            return report
        names: List[str] = [args.identity] if args.identity else list(SHADOW_IDENTITIES)
        for name in names:
            result = numeric_shadow(name, finite, settings.shadow_trials, settings.seed, n=args.n,
                                    progress=settings.progress)
            report.lines.append(shadow_line(result))
        return report
