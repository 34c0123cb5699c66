"""
Noncommutative polynomials over tagged letters

A monomial is a tuple of letter indices into the owning ring's letter list and
the empty tuple is 1. Terms are normalised by the owning ring: no zero
coefficients, and for truncated algebras coefficients are reduced mod p and
monomials above the truncation degree vanish.
"""
from typing import Dict, FrozenSet, List, Mapping, Tuple

from app.Helper.helper_exceptions import UsageError

Monomial = Tuple[int, ...]


def monomial_key(word: Monomial) -> Tuple[int, Monomial]:
    """Canonical order: degree, then lexicographic on letter indices."""
    return (len(word), word)


class Polynomial:
    """Immutable element of a (possibly truncated) free algebra."""

    __slots__ = ("ring", "terms", "_hash")

    def __init__(self, ring, terms: Mapping[Monomial, int]):
        self.ring = ring
        self.terms: Dict[Monomial, int] = ring.normalize(terms)
        self._hash = None

    # ------------------------------------------------------------------ helpers
    def _coerce(self, other):
        if isinstance(other, Polynomial):
            if other.ring is not self.ring and other.ring.spec != self.ring.spec:
                raise UsageError(
                    f"ring mismatch: {self.ring.spec.to_text()} vs {other.ring.spec.to_text()}"
                )
            return other
        if isinstance(other, int) and not isinstance(other, bool):
            return self.ring.from_int(other)
        return NotImplemented

    # --------------------------------------------------------------- arithmetic
    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        terms = dict(self.terms)
        for word, coeff in other.terms.items():
            terms[word] = terms.get(word, 0) + coeff
        return Polynomial(self.ring, terms)

    __radd__ = __add__

    def __neg__(self):
        return Polynomial(self.ring, {word: -coeff for word, coeff in self.terms.items()})

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return other + (-self)

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        limit = self.ring.max_degree
        terms: Dict[Monomial, int] = {}
        for left, left_coeff in self.terms.items():
            for right, right_coeff in other.terms.items():
                if limit is not None and len(left) + len(right) > limit:
                    continue
                word = left + right
                terms[word] = terms.get(word, 0) + left_coeff * right_coeff
        return Polynomial(self.ring, terms)

    def __rmul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return other * self

    def __pow__(self, exponent: int):
        if exponent < 0:
            raise UsageError("negative powers are not defined in a free algebra")
        result = self.ring.one()
        for _ in range(exponent):
            result = result * self
        return result

    # --------------------------------------------------------------- comparison
    def __eq__(self, other) -> bool:
        if isinstance(other, int) and not isinstance(other, bool):
            other = self.ring.from_int(other)
        if not isinstance(other, Polynomial):
            return NotImplemented
        return self.ring.spec == other.ring.spec and self.terms == other.terms

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(self._frozen())
        return self._hash

    def _frozen(self) -> FrozenSet[Tuple[Monomial, int]]:
        return frozenset(self.terms.items())

    # ---------------------------------------------------------------- inspection
    def is_zero(self) -> bool:
        return not self.terms

    def is_one(self) -> bool:
        return self.terms == {(): 1}

    def degree(self) -> int:
        return max((len(word) for word in self.terms), default=-1)

    def sorted_terms(self) -> List[Tuple[Monomial, int]]:
        return sorted(self.terms.items(), key=lambda item: monomial_key(item[0]))

    def letters(self) -> FrozenSet[int]:
        return frozenset(idx for word in self.terms for idx in word)

    def to_text(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for position, (word, coeff) in enumerate(self.sorted_terms()):
            sign = "-" if coeff < 0 else "+"
            magnitude = abs(coeff)
            if not word:
                body = str(magnitude)
            elif magnitude == 1:
                body = self.ring.word_text(word)
            else:
                body = f"{magnitude}*{self.ring.word_text(word)}"
            if position == 0:
                parts.append(body if sign == "+" else f"-{body}")
            else:
                parts.append(f" {sign} {body}")
        return "".join(parts)

    def __repr__(self) -> str:
        return f"Polynomial({self.to_text()!r})"

    def __str__(self) -> str:
        return self.to_text()
