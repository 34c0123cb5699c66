"""
certify: build one congruence certificate, check it, and write it out.

Lemma numbers name the constructions:

    9          conjugation invariance of y_ij(a, b)
    10         additivity and inverse forms
    11         transport y_ij(ac, b) -> y_kl(a, cb)
    12         collapse of y_ij(uv, w) or y_ij(u, vw)
    7          triple commutator [y_ij(a, b), t_hk(c)]
    8          quadruple commutator [y_ij(a, b), y_kl(c, d)]
    z          z_ij(ab, c) in the mixed commutator group
    comaximal  y_ij(aa' + ab', b) = e
"""
import argparse
import logging
from typing import Callable, Dict, List, Tuple

from app.Certify.certificate import Certificate, certificate_to_text, check, write_certificate
from app.Certify.commutators import certify_quadruple, certify_triple, certify_z_in_mixed
from app.Certify.elementary import (
    ADDITIVITY_FORMS, COLLAPSE_SIDES, certify_additivity, certify_collapse, certify_comaximal,
    certify_conjugation, certify_transport, comaximal_specialisation,
)
from app.Commands.base_command import BaseCommand
from app.Helper.helper_constant import CERTIFY_DEFAULT_ARGS, CERTIFY_DEFAULT_RINGS
from app.Helper.helper_exceptions import UsageError
from app.Helper.helper_parsing import (
    parse_ideal, parse_index_pair, parse_polynomial, parse_word, symbolic_ring,
)
from app.Helper.helper_pydantic import CommandOutcome
from app.Helper.helper_report import INDENT, check_line, verdict
from app.Ideal.ideal_expr import Atom, IdealExpr

logger = logging.getLogger(__name__)

LEMMAS = ("9", "10", "11", "12", "7", "8", "z", "comaximal")

DEFAULT_CONJUGATOR = "t[2,3](c) t[3,1](d)"
DEFAULT_WITH = {"7": "2,1", "8": "2,3"}
IDEAL_COUNTS = {"7": 3, "8": 4}
Z_VARIANTS = ("ab", "ba")


class CertifyCommand(BaseCommand):
    name = "certify"
    description = "Build, check and emit a congruence certificate"

    @classmethod
    def add_arguments(cls, parser: argparse.ArgumentParser) -> None:
        parser.add_argument("--lemma", required=True, choices=LEMMAS)
        parser.add_argument("--ring", help="Free algebra (defaults depend on the construction)")
        parser.add_argument("--n", type=int, default=3, help="Matrix size (default 3)")
        parser.add_argument("--pos", default="1,2", help="Position i,j of the left generator")
        parser.add_argument("--to", default="2,3", help="Target position k,l of a transport")
        parser.add_argument("--with", dest="with_pos",
                            help="Position of the right generator (7: t_hk, default 2,1; 8: y_kl, default 2,3)")
        for flag in ("a", "a2", "b", "b2", "c", "d", "a-prime", "b-prime"):
            parser.add_argument(f"--{flag}", help=f"Polynomial argument (default {CERTIFY_DEFAULT_ARGS[flag.replace('-', '_')]!r})")
        parser.add_argument("--x", help=f"Conjugator word for lemma 9 (default {DEFAULT_CONJUGATOR!r})")
        parser.add_argument("--form", help=f"Lemma 10: {'|'.join(ADDITIVITY_FORMS)}; lemma z: {'|'.join(Z_VARIANTS)}")
        parser.add_argument("--side", default="first", choices=COLLAPSE_SIDES,
                            help="Lemma 12: first collapses y(a*a2, b), second collapses y(a, b2*b)")
        parser.add_argument("--ideals", help='Comma-separated ideal expressions, e.g. "A,B" or "A,B,C"')
        parser.add_argument("--out", help="Certificate file; printed to stdout when omitted")

    def _run(self, args: argparse.Namespace) -> CommandOutcome:
        ring = symbolic_ring(args.ring or CERTIFY_DEFAULT_RINGS[args.lemma])
        if not ring.is_free:
            raise UsageError(f"certificates are built over free algebras, got {ring.describe()}")
        self._args, self._ring = args, ring
        ideals = self._ideals(args)
        i, j = parse_index_pair(args.pos)
        builders: Dict[str, Callable[[int, int, int, Tuple[IdealExpr, ...]], Certificate]] = {
            "9": self._conjugation,
            "10": self._additivity,
            "11": self._transport,
            "12": self._collapse,
            "7": self._triple,
            "8": self._quadruple,
            "z": self._z_in_mixed,
            "comaximal": self._comaximal,
        }
        cert = builders[args.lemma](i, j, args.n, ideals)
        result = check(cert)
        extra: List[str] = []
        passed = result.passed
        if args.lemma == "comaximal":
            specialised = comaximal_specialisation(cert, self._value("a"), self._letter("a_prime"),
                                                   self._letter("b_prime"))
            extra.append(verdict(specialised, "specialisation b' = 1 - a'",
                                 "lhs becomes y(a, b)" if specialised else "lhs does not reduce to y(a, b)"))
            passed = passed and specialised

        if args.out:
            write_certificate(cert, args.out)
            lines = []
        else:
            lines = certificate_to_text(cert).splitlines()
        lines.append(check_line(f"certify lemma {args.lemma} n={args.n}", result))
        lines.extend(INDENT + line for line in extra)
        if args.out:
            lines.append(f"{INDENT}written to {args.out}")
        return self.outcome(lines, passed)

    # ------------------------------------------------------------- arguments
    def _value(self, key: str):
        text = getattr(self._args, key) or CERTIFY_DEFAULT_ARGS[key]
        return parse_polynomial(text, self._ring)

    def _letter(self, key: str) -> str:
        name = (getattr(self._args, key) or CERTIFY_DEFAULT_ARGS[key]).strip()
        if not self._ring.has_letter(name):
            raise UsageError(f"--{key.replace('_', '-')} must name a single letter of {self._ring.describe()}")
        return name

    def _ideals(self, args: argparse.Namespace) -> Tuple[IdealExpr, ...]:
        count = IDEAL_COUNTS.get(args.lemma, 2)
        if not args.ideals:
            return tuple(Atom(tag) for tag in "ABCD"[:count])
        ideals = tuple(parse_ideal(part) for part in args.ideals.split(","))
        if len(ideals) != count:
            raise UsageError(f"lemma {args.lemma} takes {count} ideals, got {len(ideals)}")
        return ideals

    def _with(self, lemma: str) -> Tuple[int, int]:
        return parse_index_pair(self._args.with_pos or DEFAULT_WITH[lemma])

    # ---------------------------------------------------------- constructions
    def _conjugation(self, i, j, n, ideals):
        x = parse_word(self._args.x or DEFAULT_CONJUGATOR, self._ring)
        return certify_conjugation(x, i, j, self._value("a"), self._value("b"), self._ring, n,
                                   self.settings, ideals)

    def _additivity(self, i, j, n, ideals):
        form = self._args.form or "first"
        a2 = self._value("a2") if form == "first" else None
        b2 = self._value("b2") if form == "second" else None
        return certify_additivity(i, j, self._value("a"), self._value("b"), self._ring, n, form, a2, b2,
                                  self.settings, ideals)

    def _transport(self, i, j, n, ideals):
        k, l = parse_index_pair(self._args.to)
        return certify_transport(i, j, k, l, self._value("a"), self._value("c"), self._value("b"),
                                 self._ring, n, self.settings, ideals)

    def _collapse(self, i, j, n, ideals):
        side = self._args.side
        middle = self._value("a2") if side == "first" else self._value("b2")
        return certify_collapse(i, j, self._value("a"), middle, self._value("b"), self._ring, n, side,
                                self.settings, ideals)

    def _triple(self, i, j, n, ideals):
        h, k = self._with("7")
        return certify_triple(i, j, self._value("a"), self._value("b"), h, k, self._value("c"),
                              self._ring, n, self.settings, ideals)

    def _quadruple(self, i, j, n, ideals):
        k, l = self._with("8")
        return certify_quadruple(i, j, self._value("a"), self._value("b"), k, l, self._value("c"),
                                 self._value("d"), self._ring, n, self.settings, ideals)

    def _z_in_mixed(self, i, j, n, ideals):
        variant = self._args.form or "ab"
        return certify_z_in_mixed(i, j, self._value("a"), self._value("b"), self._value("c"), self._ring, n,
                                  variant, self.settings, ideals)

    def _comaximal(self, i, j, n, ideals):
        return certify_comaximal(i, j, self._value("a"), self._value("b"), self._value("a_prime"),
                                 self._value("b_prime"), self._ring, n, self.settings, ideals)
