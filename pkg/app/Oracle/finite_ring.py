"""
Finite rings with named ideals, for brute-force checks.

Z/m carries ideals as divisors (tag -> d means dZ/m); truncated free algebras
use the ideal generated by the letters carrying the tag. Tags that are not
declared stand for the whole ring.
"""
import logging
from math import gcd
from typing import Dict, List, Mapping, Optional, Tuple

import numpy as np

from app.Helper.helper_constant import PLAIN_TAG
from app.Helper.helper_exceptions import CapExceededError, CertificationError, UsageError
from app.Ideal.ideal_expr import FULL_RING, Atom, FullRing, IdealExpr, Prod, Sum, SymProd
from app.Ideal.membership import poly_member
from app.Ring.rings import ModularIntegers, Ring

logger = logging.getLogger(__name__)

# Truncated algebras larger than this are not enumerated for ideal sampling
ENUMERATION_LIMIT = 2 ** 16


def parse_divisors(text: str) -> Dict[str, int]:
    """'A=2,B=3' -> {'A': 2, 'B': 3}."""
    divisors: Dict[str, int] = {}
    for part in filter(None, (piece.strip() for piece in text.split(","))):
        tag, _, value = part.partition("=")
        if not tag.strip() or not value.strip().isdigit():
            raise UsageError(f"expected TAG=divisor, got {part!r}")
        divisors[tag.strip()] = int(value)
    return divisors


class FiniteRing:
    """A finite ring backend together with the ideals its tags name."""

    def __init__(self, ring: Ring, divisors: Optional[Mapping[str, int]] = None):
        if not ring.is_finite:
            raise UsageError(f"the oracle needs a finite ring, got {ring.describe()}")
        divisors = dict(divisors or {})
        if divisors and not isinstance(ring, ModularIntegers):
            raise UsageError("ideal divisors only apply to Z/m; truncated algebras use their letter tags")
        if isinstance(ring, ModularIntegers):
            for tag, divisor in divisors.items():
                if divisor < 0:
                    raise UsageError(f"divisor for {tag} must be non-negative")
        self.ring = ring
        self.divisors = divisors
        self._elements: Dict[str, List] = {}

    def describe(self) -> str:
        ideals = ", ".join(f"{tag}={d}Z" for tag, d in sorted(self.divisors.items()))
        return f"{self.ring.describe()}" + (f" with {ideals}" if ideals else "")

    # ----------------------------------------------------------------- ideals
    def divisor(self, ideal: IdealExpr) -> int:
        """Generator of the image of an ideal expression in Z/m."""
        m = self.ring.modulus
        if isinstance(ideal, FullRing):
            return 1
        if isinstance(ideal, Atom):
            return gcd(self.divisors.get(ideal.tag, 1), m)
        if isinstance(ideal, Sum):
            return gcd(self.divisor(ideal.left), self.divisor(ideal.right))
        if isinstance(ideal, (Prod, SymProd)):
            return gcd(self.divisor(ideal.left) * self.divisor(ideal.right), m)
        raise UsageError(f"not an ideal expression: {ideal!r}")

    def declared(self, ideal: IdealExpr) -> IdealExpr:
        """The same expression with tags the truncated algebra does not declare replaced by R."""
        if isinstance(ideal, Atom):
            return ideal if ideal.tag in self.ring.tag_set() else FULL_RING
        if isinstance(ideal, (Sum, Prod, SymProd)):
            return type(ideal)(self.declared(ideal.left), self.declared(ideal.right))
        return ideal

    def ideal_contains(self, ideal: IdealExpr, x) -> bool:
        if isinstance(self.ring, ModularIntegers):
            return x % self.divisor(ideal) == 0
        return poly_member(x, self.declared(ideal))

    def contains(self, tag: str, x) -> bool:
        return self.ideal_contains(Atom(tag) if tag != PLAIN_TAG else FULL_RING, x)

    def ideal_elements(self, tag: str) -> List:
        """All elements of the ideal named by tag, in a fixed order."""
        if tag not in self._elements:
            ring = self.ring
            if isinstance(ring, ModularIntegers):
                step = 1 if tag == PLAIN_TAG else gcd(self.divisors.get(tag, 1), ring.modulus)
                self._elements[tag] = list(range(0, ring.modulus, step))
            else:
                if ring.element_count > ENUMERATION_LIMIT:
                    raise CapExceededError(f"enumeration of {ring.describe()}", ENUMERATION_LIMIT)
                self._elements[tag] = [x for x in ring.elements() if self.contains(tag, x)]
            logger.debug(f"Ideal {tag} of {ring.describe()} has {len(self._elements[tag])} elements")
        return self._elements[tag]

    def draw(self, tag: str, rng: np.random.Generator):
        elements = self.ideal_elements(tag)
        return elements[int(rng.integers(len(elements)))]

    # ----------------------------------------------------------- assignments
    def assignment(self, free_ring, rng: np.random.Generator,
                   forced: Optional[Mapping[str, object]] = None) -> Dict[str, object]:
        """Random image of every letter of a free algebra, respecting its tag."""
        forced = forced or {}
        values = {}
        for letter in free_ring.letters:
            if letter.name in forced:
                values[letter.name] = self.ring.from_int(forced[letter.name]) \
                    if isinstance(forced[letter.name], int) else forced[letter.name]
            else:
                values[letter.name] = self.draw(letter.tag, rng)
        return values

    def bezout_pair(self, first: str, second: str) -> Tuple[object, object]:
        """p in the first ideal and q in the second with p + q = 1; UsageError if none exists."""
        one = self.ring.one()
        members = set(self._key(x) for x in self.ideal_elements(second))
        for p in self.ideal_elements(first):
            q = self.ring.sub(one, p)
            if self._key(q) in members:
                if not (self.contains(first, p) and self.contains(second, q)):
                    raise CertificationError(f"Bezout pair for {first}, {second} failed its own check")
                logger.info(f"Bezout pair for {first}, {second}: {self.ring.to_text(p)} + {self.ring.to_text(q)} = 1")
                return p, q
        raise UsageError(f"ideals {first} and {second} of {self.describe()} are not comaximal")

    def _key(self, x):
        return self.ring.encode(x)

