"""
Incremental certificate construction

The builder keeps the invariant

    eval(lhs) = eval(pieces[0] ... pieces[-1]) * eval(atoms[0] ... atoms[-1])

Replacing a piece p by p' * (new atoms) moves the new atoms right across the
later pieces P, which conjugates them by P^-1; they then sit in front of the
atoms already collected.
"""
import logging
from typing import List, Optional, Sequence

from app.Certify.certificate import (
    Certificate, ConjTransvection, Modulus, WitnessAtom, check,
)
from app.Group.words import (
    IDENTITY, Conjugate, Gen, Inverse, Product, T, Word, evaluate, simplify, word_to_text,
)
from app.Helper.helper_exceptions import CertificationError, UsageError
from app.Helper.helper_pydantic import EngineSettings
from app.Ideal.ideal_expr import IdealExpr

logger = logging.getLogger(__name__)


class CongruenceBuilder:
    """Rewrites lhs step by step into rhs * atoms."""

    def __init__(self, ring, n: int, lhs: Word, modulus: Modulus,
                 settings: Optional[EngineSettings] = None, label: str = "certificate"):
        self.ring = ring
        self.n = n
        self.lhs = lhs
        self.modulus = modulus
        self.settings = settings or EngineSettings()
        self.label = label
        self.pieces: List[Word] = [lhs]
        self.atoms: List[WitnessAtom] = []
        self._lhs_matrix = None

    # ------------------------------------------------------------------ checks
    def _matrix(self, word: Word):
        return evaluate(word, self.ring, self.n)

    def _verify(self, step: str) -> None:
        if not self.settings.verify_steps:
            return
        if self._lhs_matrix is None:
            self._lhs_matrix = self._matrix(self.lhs)
        current = Product(tuple(self.pieces) + tuple(atom.word() for atom in self.atoms))
        difference = self._lhs_matrix.first_difference(self._matrix(current))
        if difference is not None:
            r, c, _, _ = difference
            raise CertificationError(f"{self.label}: step '{step}' breaks entry ({r},{c})")
        logger.debug(f"{self.label}: step '{step}' verified, {len(self.atoms)} atoms")

    def _same(self, old: Sequence[Word], new: Sequence[Word], step: str) -> None:
        if not self.settings.verify_steps:
            return
        before = self._matrix(Product(tuple(old)))
        after = self._matrix(Product(tuple(new)))
        if before != after:
            rendered = " ".join(word_to_text(word, self.ring) for word in new)
            raise CertificationError(f"{self.label}: rewrite '{step}' is not exact: {rendered}")

    # --------------------------------------------------------------- rewriting
    def rewrite_range(self, start: int, stop: int, new_pieces: Sequence[Word], step: str = "rewrite") -> None:
        """Replace pieces[start:stop] by an eval-equal sequence."""
        self._same(self.pieces[start:stop], new_pieces, step)
        self.pieces[start:stop] = list(new_pieces)

    def rewrite(self, new_pieces: Sequence[Word], step: str = "rewrite") -> None:
        self.rewrite_range(0, len(self.pieces), new_pieces, step)

    def rewrite_piece(self, index: int, new_pieces: Sequence[Word], step: str = "rewrite") -> None:
        self.rewrite_range(index, index + 1, new_pieces, step)

    def settle(self, index: int, new_pieces: Sequence[Word], new_atoms: Sequence[WitnessAtom],
               step: str = "settle") -> None:
        """pieces[index] = prod(new_pieces) * prod(new_atoms)."""
        later = self.pieces[index + 1:]
        if later:
            prefix = Inverse(later[0] if len(later) == 1 else Product(tuple(later)))
            new_atoms = [atom.conjugated(prefix) for atom in new_atoms]
        self.pieces[index:index + 1] = list(new_pieces)
        self.atoms[0:0] = list(new_atoms)
        self._verify(step)

    def drop(self, index: int, claim: IdealExpr) -> None:
        """Turn a (conjugated) transvection piece into an atom."""
        piece = self.pieces[index]
        conj = IDENTITY
        if isinstance(piece, Conjugate):
            conj, piece = piece.conj, piece.word
        if not (isinstance(piece, Gen) and isinstance(piece.symbol, T)):
            raise UsageError(f"{self.label}: piece {index} is not a transvection")
        symbol = piece.symbol
        self.settle(index, [], [ConjTransvection(conj, symbol.i, symbol.j, symbol.c, claim)], "drop")

    def absorb(self, index: int, atoms: Sequence[WitnessAtom]) -> None:
        """pieces[index] equals the product of `atoms`."""
        self.settle(index, [], atoms, "absorb")

    def absorb_all(self, atoms: Sequence[WitnessAtom]) -> None:
        """All pieces together equal the product of `atoms`."""
        self.pieces = []
        self.atoms[0:0] = list(atoms)
        self._verify("absorb all")

    def apply_certificate(self, index: int, cert: Certificate) -> None:
        """Replace pieces[index] = cert.lhs by cert.rhs * cert.atoms."""
        self._same([self.pieces[index]], [cert.lhs], "apply certificate")
        rhs = list(cert.rhs.items) if isinstance(cert.rhs, Product) else [cert.rhs]
        self.settle(index, rhs, cert.atoms, "apply certificate")

    # ------------------------------------------------------------------ result
    def finish(self) -> Certificate:
        rhs = simplify(Product(tuple(self.pieces)), self.ring)
        cert = Certificate(self.lhs, rhs, self.modulus, tuple(self.atoms), self.n, self.ring)
        if self.settings.verify_steps:
            result = check(cert)
            if not result.passed:
                raise CertificationError(f"{self.label}: {result.detail}")
        logger.debug(f"{self.label}: finished with {len(self.atoms)} atoms")
        return cert
