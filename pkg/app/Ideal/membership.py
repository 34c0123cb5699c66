"""
Ideal membership over tagged free algebras

Every ideal expression denotes a monomial ideal, so a polynomial is a member
iff each of its monomials is. Monomial membership is decided by dynamic
programming over (subexpression, subinterval of the word); the search always
returns the leftmost witness.
"""
import logging
from dataclasses import dataclass
from typing import Dict, List, Optional, Sequence, Tuple

from app.Helper.helper_constant import ENGINE_DEFAULTS
from app.Helper.helper_exceptions import UsageError
from app.Helper.helper_pydantic import MembershipReport
from app.Ideal.ideal_expr import Atom, FullRing, IdealExpr, Prod, Sum, SymProd, ideal_tags
from app.Ring.free_algebra import Monomial, Polynomial

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class MembershipWitness:
    """
    Replayable membership derivation.

    kind is one of:
        atom        position = index of a letter with the atom's tag
        full        FullRing, nothing to record
        left/right  branch of a Sum
        split       Prod, or SymProd in the written order; position = cut
        swapped     SymProd realised as Prod(right, left); position = cut
    """
    kind: str
    position: int = -1
    children: Tuple["MembershipWitness", ...] = ()


def _check_tags(ideal: IdealExpr, ring) -> None:
    if not getattr(ring, "is_free", False):
        raise UsageError(f"ideal membership needs a free algebra, got {ring.describe()}")
    unknown = ideal_tags(ideal) - ring.tag_set()
    if unknown:
        raise UsageError(f"unknown tag(s) {', '.join(sorted(unknown))} for ring {ring.describe()}")


class _SplitSearch:
    """Memoised search over one monomial."""

    def __init__(self, tags: Sequence[str]):
        self.tags = tags
        self.memo: Dict[Tuple[int, int, int], Optional[MembershipWitness]] = {}

    def member(self, node: IdealExpr, left: int, right: int) -> Optional[MembershipWitness]:
        key = (id(node), left, right)
        if key not in self.memo:
            self.memo[key] = self._decide(node, left, right)
        return self.memo[key]

    def _split(self, first: IdealExpr, second: IdealExpr, left: int, right: int):
        for cut in range(left, right + 1):
            head = self.member(first, left, cut)
            if head is None:
                continue
            tail = self.member(second, cut, right)
            if tail is not None:
                return cut, head, tail
        return None

    def _decide(self, node: IdealExpr, left: int, right: int) -> Optional[MembershipWitness]:
        if isinstance(node, FullRing):
            return MembershipWitness("full")
        if isinstance(node, Atom):
            for position in range(left, right):
                if self.tags[position] == node.tag:
                    return MembershipWitness("atom", position)
            return None
        if isinstance(node, Sum):
            found = self.member(node.left, left, right)
            if found is not None:
                return MembershipWitness("left", children=(found,))
            found = self.member(node.right, left, right)
            if found is not None:
                return MembershipWitness("right", children=(found,))
            return None
        if isinstance(node, Prod):
            found = self._split(node.left, node.right, left, right)
            if found is not None:
                return MembershipWitness("split", found[0], (found[1], found[2]))
            return None
        if isinstance(node, SymProd):
            found = self._split(node.left, node.right, left, right)
            if found is not None:
                return MembershipWitness("split", found[0], (found[1], found[2]))
            found = self._split(node.right, node.left, left, right)
            if found is not None:
                return MembershipWitness("swapped", found[0], (found[1], found[2]))
            return None
        raise UsageError(f"not an ideal expression: {node!r}")


def _word_tags(word: Monomial, ring) -> List[str]:
    return [ring.tag_of(index) for index in word]


def monomial_member(word: Monomial, ideal: IdealExpr, ring) -> Tuple[bool, Optional[MembershipWitness]]:
    """
    Decide whether a monomial lies in the ideal.

    Args:
        word: Tuple of letter indices of `ring`
        ideal: Ideal expression over the ring's tags
        ring: Free or truncated free algebra

    Returns:
        (decision, leftmost witness or None)
    """
    _check_tags(ideal, ring)
    witness = _SplitSearch(_word_tags(word, ring)).member(ideal, 0, len(word))
    return witness is not None, witness


def poly_member(p: Polynomial, ideal: IdealExpr) -> bool:
    """True iff every monomial of p lies in the ideal (0 is always a member)."""
    _check_tags(ideal, p.ring)
    for word in p.terms:
        if _SplitSearch(_word_tags(word, p.ring)).member(ideal, 0, len(word)) is None:
            return False
    return True


def replay_witness(witness: MembershipWitness, word: Monomial, ideal: IdealExpr, ring,
                   left: int = 0, right: Optional[int] = None) -> bool:
    """Re-derive membership of word[left:right] by following a witness."""
    if right is None:
        right = len(word)
    kind = witness.kind
    if isinstance(ideal, FullRing):
        return kind == "full"
    if isinstance(ideal, Atom):
        return kind == "atom" and left <= witness.position < right \
            and ring.tag_of(word[witness.position]) == ideal.tag
    if isinstance(ideal, Sum):
        branch = {"left": ideal.left, "right": ideal.right}.get(kind)
        return branch is not None and replay_witness(witness.children[0], word, branch, ring, left, right)
    if isinstance(ideal, (Prod, SymProd)):
        if kind == "split":
            first, second = ideal.left, ideal.right
        elif kind == "swapped" and isinstance(ideal, SymProd):
            first, second = ideal.right, ideal.left
        else:
            return False
        cut = witness.position
        if not left <= cut <= right:
            return False
        return replay_witness(witness.children[0], word, first, ring, left, cut) \
            and replay_witness(witness.children[1], word, second, ring, cut, right)
    return False


def brute_member(word: Monomial, ideal: IdealExpr, ring,
                 bound: int = ENGINE_DEFAULTS["brute_degree_bound"]) -> bool:
    """Exhaustive recursion without memoisation; an independent oracle for the DP."""
    if len(word) > bound:
        raise UsageError(f"degree {len(word)} exceeds brute-force bound {bound}")
    _check_tags(ideal, ring)
    tags = _word_tags(word, ring)

    def holds(node: IdealExpr, part: List[str]) -> bool:
        if isinstance(node, FullRing):
            return True
        if isinstance(node, Atom):
            return node.tag in part
        if isinstance(node, Sum):
            return holds(node.left, part) or holds(node.right, part)
        pairs = [(node.left, node.right)]
        if isinstance(node, SymProd):
            pairs.append((node.right, node.left))
        return any(
            holds(first, part[:cut]) and holds(second, part[cut:])
            for first, second in pairs
            for cut in range(len(part) + 1)
        )

    return holds(ideal, tags)


def witness_text(witness: MembershipWitness, word: Monomial, ring, left: int = 0,
                 right: Optional[int] = None) -> str:
    """Readable rendering, e.g. `[a | c*b]` for a split."""
    if right is None:
        right = len(word)
    if witness.kind == "full":
        return ring.word_text(word[left:right]) or "1"
    if witness.kind == "atom":
        return f"{ring.letter_name(word[witness.position])}@{witness.position}"
    if witness.kind in ("left", "right"):
        return witness_text(witness.children[0], word, ring, left, right)
    cut = witness.position
    head = witness_text(witness.children[0], word, ring, left, cut)
    tail = witness_text(witness.children[1], word, ring, cut, right)
    return f"[{head} | {tail}]"


def membership_report(p: Polynomial, ideal: IdealExpr) -> MembershipReport:
    """Per-monomial decision with witnesses, stopping at the first failure."""
    _check_tags(ideal, p.ring)
    witnesses = []
    for word, _ in p.sorted_terms():
        witness = _SplitSearch(_word_tags(word, p.ring)).member(ideal, 0, len(word))
        monomial = p.ring.word_text(word) or "1"
        if witness is None:
            logger.debug(f"Monomial {monomial} is not in {ideal.to_text()}")
            return MembershipReport(member=False, monomials=len(p.terms),
                                    failing_monomial=monomial, witnesses=witnesses)
        witnesses.append(f"{monomial}: {witness_text(witness, word, p.ring)}")
    return MembershipReport(member=True, monomials=len(p.terms), witnesses=witnesses)
