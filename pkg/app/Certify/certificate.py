"""
Congruence certificates

A certificate states eval(lhs) = eval(rhs) * prod(eval(atom)) together with
ideal claims for every atom argument. `check` re-derives both halves from the
certificate alone, so a certificate read back from a file is as good as one
just built.
"""
import logging
import re
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from pathlib import Path
from typing import List, Optional, Tuple, Union

from app.Group.words import (
    IDENTITY, Commutator, Conjugate, Gen, Product, T, Word, evaluate, word_to_text,
)
from app.Helper.helper_constant import CERTIFICATE_VERSION, ModulusKind
from app.Helper.helper_exceptions import ParseError, UsageError
from app.Helper.helper_parsing import (
    parse_ideal, parse_ring_spec, parse_transvection, parse_word,
)
from app.Helper.helper_pydantic import CheckResult
from app.Ideal.ideal_expr import IdealExpr, SymProd
from app.Ideal.membership import poly_member
from app.Ring.rings import Ring, build_ring

logger = logging.getLogger(__name__)


# ============================================================================
# Atoms
# ============================================================================

def _conjugate(prefix: Word, conj: Word) -> Word:
    if prefix == IDENTITY:
        return conj
    if conj == IDENTITY:
        return prefix
    return Product((prefix, conj))


@dataclass(frozen=True)
class ConjTransvection:
    """^conj t_ij(arg), a generator of E(n, R, claim)."""
    conj: Word
    i: int
    j: int
    arg: object
    claim: IdealExpr

    def word(self) -> Word:
        gen = Gen(T(self.i, self.j, self.arg))
        return gen if self.conj == IDENTITY else Conjugate(self.conj, gen)

    def conjugated(self, prefix: Word) -> "ConjTransvection":
        return ConjTransvection(_conjugate(prefix, self.conj), self.i, self.j, self.arg, self.claim)

    def inverse(self, ring) -> "ConjTransvection":
        return ConjTransvection(self.conj, self.i, self.j, ring.neg(self.arg), self.claim)


@dataclass(frozen=True)
class CommAtom:
    """[left, right] for two conjugated transvections."""
    left: ConjTransvection
    right: ConjTransvection

    def word(self) -> Word:
        return Commutator(self.left.word(), self.right.word())

    def conjugated(self, prefix: Word) -> "CommAtom":
        return CommAtom(self.left.conjugated(prefix), self.right.conjugated(prefix))

    def inverse(self, ring) -> "CommAtom":
        return CommAtom(self.right, self.left)


WitnessAtom = Union[ConjTransvection, CommAtom]


@dataclass(frozen=True)
class Modulus:
    """ELEM(I) for E(n, R, I) or MIXED(I; J) for [E(n, R, I), E(n, R, J)]."""
    kind: ModulusKind
    first: IdealExpr
    second: Optional[IdealExpr] = None

    @classmethod
    def elem(cls, ideal: IdealExpr) -> "Modulus":
        return cls(ModulusKind.ELEM, ideal)

    @classmethod
    def mixed(cls, first: IdealExpr, second: IdealExpr) -> "Modulus":
        return cls(ModulusKind.MIXED, first, second)

    @property
    def target(self) -> IdealExpr:
        """Ideal whose relative elementary group is contained in the modulus group."""
        if self.kind is ModulusKind.ELEM:
            return self.first
        return SymProd(self.first, self.second)

    def to_text(self) -> str:
        if self.kind is ModulusKind.ELEM:
            return f"ELEM({self.first.to_text()})"
        return f"MIXED({self.first.to_text()};{self.second.to_text()})"


# ============================================================================
# Certificate
# ============================================================================

@dataclass(frozen=True)
class Certificate:
    lhs: Word
    rhs: Word
    modulus: Modulus
    atoms: Tuple[WitnessAtom, ...]
    n: int
    ring: Ring = field(compare=False)

    def rhs_word(self) -> Word:
        """rhs followed by every atom, as one word."""
        return Product((self.rhs,) + tuple(atom.word() for atom in self.atoms))

    def reversed(self) -> "Certificate":
        """rhs = lhs * prod(atoms)^-1."""
        inverted = tuple(atom.inverse(self.ring) for atom in reversed(self.atoms))
        return Certificate(self.rhs, self.lhs, self.modulus, inverted, self.n, self.ring)

    def conjugated(self, prefix: Word) -> "Certificate":
        """Same congruence for ^prefix lhs and ^prefix rhs."""
        return Certificate(
            Conjugate(prefix, self.lhs), Conjugate(prefix, self.rhs), self.modulus,
            tuple(atom.conjugated(prefix) for atom in self.atoms), self.n, self.ring,
        )


def _claim_error(index: int, arg, claim: IdealExpr, ring) -> str:
    return f"atom {index}: argument {ring.to_text(arg)} not in {claim.to_text()}"


def _check_atom(index: int, atom: WitnessAtom, modulus: Modulus, ring) -> Optional[str]:
    """Reason the atom's claims fail, or None."""
    if isinstance(atom, ConjTransvection):
        if not poly_member(atom.arg, atom.claim):
            return _claim_error(index, atom.arg, atom.claim, ring)
        if not poly_member(atom.arg, modulus.target):
            return _claim_error(index, atom.arg, modulus.target, ring)
        return None
    for part in (atom.left, atom.right):
        if not poly_member(part.arg, part.claim):
            return _claim_error(index, part.arg, part.claim, ring)
    left, right = atom.left.arg, atom.right.arg
    if modulus.kind is ModulusKind.MIXED:
        first, second = modulus.first, modulus.second
        oriented = (poly_member(left, first) and poly_member(right, second)) \
            or (poly_member(left, second) and poly_member(right, first))
        if not oriented:
            return f"atom {index}: commutator arguments do not lie in {first.to_text()} and {second.to_text()}"
        return None
    if not (poly_member(left, modulus.first) or poly_member(right, modulus.first)):
        return f"atom {index}: neither commutator argument lies in {modulus.first.to_text()}"
    return None


def check(cert: Certificate) -> CheckResult:
    """Verify every ideal claim, then eval(lhs) == eval(rhs * atoms)."""
    ring = cert.ring
    for index, atom in enumerate(cert.atoms):
        reason = _check_atom(index, atom, cert.modulus, ring)
        if reason is not None:
            logger.debug(f"Certificate claim failed: {reason}")
            return CheckResult(passed=False, detail=reason, atoms=len(cert.atoms))
    left = evaluate(cert.lhs, ring, cert.n)
    right = evaluate(cert.rhs_word(), ring, cert.n)
    difference = left.first_difference(right)
    if difference is not None:
        r, c, mine, theirs = difference
        detail = f"entry ({r},{c}) differs: lhs {ring.to_text(mine)} vs rhs {ring.to_text(theirs)}"
        logger.debug(f"Certificate evaluation failed: {detail}")
        return CheckResult(passed=False, detail=detail, atoms=len(cert.atoms))
    return CheckResult(passed=True, detail=f"{len(cert.atoms)} atoms, {cert.modulus.to_text()}",
                       atoms=len(cert.atoms))



def check_all(certificates: List[Certificate], jobs: int = 1) -> List[CheckResult]:
    """check every certificate, in order, over `jobs` worker processes."""
    if jobs <= 1 or len(certificates) < 2:
        return [check(cert) for cert in certificates]
    with ProcessPoolExecutor(max_workers=jobs) as pool:
        return list(pool.map(check, certificates, chunksize=max(1, len(certificates) // (4 * jobs))))


# ============================================================================
# File format
# ============================================================================

_HEADER = re.compile(r"^certificate v(\d+) n=(\d+) ring=(.+)$")
_MODULUS = re.compile(r"^modulus (ELEM|MIXED)\((.*)\)$")
_CONJ_ATOM = re.compile(r"^atom conj=(.*?) gen=(.*?) claim=(.*)$")
_COMM_ATOM = re.compile(
    r"^atom comm conj1=(.*?) gen1=(.*?) claim1=(.*?) conj2=(.*?) gen2=(.*?) claim2=(.*)$"
)


def _transvection_text(atom: ConjTransvection, ring) -> str:
    return word_to_text(Gen(T(atom.i, atom.j, atom.arg)), ring)


def certificate_to_text(cert: Certificate) -> str:
    ring = cert.ring
    lines = [
        f"certificate v{CERTIFICATE_VERSION} n={cert.n} ring={ring.spec.to_text()}",
        f"modulus {cert.modulus.to_text()}",
        f"lhs {word_to_text(cert.lhs, ring)}",
        f"rhs {word_to_text(cert.rhs, ring)}",
    ]
    for atom in cert.atoms:
        if isinstance(atom, ConjTransvection):
            lines.append(
                f"atom conj={word_to_text(atom.conj, ring)} gen={_transvection_text(atom, ring)} "
                f"claim={atom.claim.to_text()}"
            )
        else:
            left, right = atom.left, atom.right
            lines.append(
                f"atom comm conj1={word_to_text(left.conj, ring)} gen1={_transvection_text(left, ring)} "
                f"claim1={left.claim.to_text()} conj2={word_to_text(right.conj, ring)} "
                f"gen2={_transvection_text(right, ring)} claim2={right.claim.to_text()}"
            )
    return "\n".join(lines) + "\n"


def _conj_transvection(conj_text: str, gen_text: str, claim_text: str, ring) -> ConjTransvection:
    conj = parse_word(conj_text, ring)
    gen = parse_transvection(gen_text, ring)
    return ConjTransvection(conj, gen.i, gen.j, gen.c, parse_ideal(claim_text))


def parse_certificate(text: str) -> Certificate:
    """Rebuild a certificate from its text form; unknown versions are rejected."""
    lines = [line.strip() for line in text.splitlines() if line.strip()]
    if len(lines) < 4:
        raise ParseError("certificate needs header, modulus, lhs and rhs lines")
    header = _HEADER.match(lines[0])
    if header is None:
        raise ParseError("malformed certificate header", lines[0])
    version = int(header.group(1))
    if version != CERTIFICATE_VERSION:
        raise ParseError(f"unsupported certificate version v{version}")
    n = int(header.group(2))
    ring = build_ring(parse_ring_spec(header.group(3)))

    modulus_match = _MODULUS.match(lines[1])
    if modulus_match is None:
        raise ParseError("malformed modulus line", lines[1])
    if modulus_match.group(1) == "ELEM":
        modulus = Modulus.elem(parse_ideal(modulus_match.group(2)))
    else:
        parts = modulus_match.group(2).split(";")
        if len(parts) != 2:
            raise ParseError("MIXED modulus needs two ideals separated by ';'", lines[1])
        modulus = Modulus.mixed(parse_ideal(parts[0]), parse_ideal(parts[1]))

    if not lines[2].startswith("lhs ") or not lines[3].startswith("rhs "):
        raise ParseError("expected lhs and rhs lines after the modulus")
    lhs = parse_word(lines[2][4:], ring)
    rhs = parse_word(lines[3][4:], ring)

    atoms: List[WitnessAtom] = []
    for line in lines[4:]:
        comm = _COMM_ATOM.match(line)
        if comm is not None:
            atoms.append(CommAtom(
                _conj_transvection(comm.group(1), comm.group(2), comm.group(3), ring),
                _conj_transvection(comm.group(4), comm.group(5), comm.group(6), ring),
            ))
            continue
        conj = _CONJ_ATOM.match(line)
        if conj is None:
            raise ParseError("malformed atom line", line)
        atoms.append(_conj_transvection(conj.group(1), conj.group(2), conj.group(3), ring))
    return Certificate(lhs, rhs, modulus, tuple(atoms), n, ring)


def write_certificate(cert: Certificate, path: Union[str, Path]) -> None:
    try:
        Path(path).write_text(certificate_to_text(cert), encoding="utf-8")
    except OSError as exc:
        raise UsageError(f"cannot write certificate file {path}: {exc}") from None
    logger.info(f"Wrote certificate with {len(cert.atoms)} atoms to {path}")


def read_certificate(path: Union[str, Path]) -> Certificate:
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise ParseError(f"cannot read certificate file {path}: {exc}") from None
    return parse_certificate(text)
