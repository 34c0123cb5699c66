"""
Ring backends

Every backend exposes the same element interface (zero, one, from_int, add,
mul, neg, equality, text) so that matrices and group words can be evaluated
over any of them.
"""
import itertools
import logging
from abc import ABC, abstractmethod
from functools import lru_cache
from typing import Any, Iterator, List, Mapping, Optional, Tuple

import numpy as np
import sympy

from app.Helper.helper_constant import PLAIN_TAG, RingKind
from app.Helper.helper_exceptions import ParseError, UsageError
from app.Helper.helper_pydantic import RingSpec
from app.Ring.free_algebra import Monomial, Polynomial, monomial_key

logger = logging.getLogger(__name__)


class Ring(ABC):
    """Base class for all ring backends."""

    is_free = False
    is_finite = False

    def __init__(self, spec: RingSpec):
        self.spec = spec

    @abstractmethod
    def zero(self) -> Any:
        """Additive identity."""

    @abstractmethod
    def one(self) -> Any:
        """Multiplicative identity."""

    @abstractmethod
    def from_int(self, value: int) -> Any:
        """Canonical image of an integer."""

    def add(self, x, y):
        return x + y

    def sub(self, x, y):
        return x - y

    def mul(self, x, y):
        return x * y

    def neg(self, x):
        return -x

    def is_zero(self, x) -> bool:
        return x == self.zero()

    def is_one(self, x) -> bool:
        return x == self.one()

    def equal(self, x, y) -> bool:
        return x == y

    def letter(self, name: str):
        raise ParseError(f"ring {self.describe()} has no letter {name!r}")

    def to_text(self, x) -> str:
        return str(x)

    def describe(self) -> str:
        return self.spec.to_text()

    def __repr__(self) -> str:
        return f"{self.__class__.__name__}({self.describe()!r})"

    def __reduce__(self):
        return (build_ring, (self.spec,))


# ============================================================================
# Free algebras
# ============================================================================

class FreeAlgebra(Ring):
    """Free associative algebra over Z on tagged letters."""

    is_free = True
    max_degree: Optional[int] = None

    def __init__(self, spec: RingSpec):
        super().__init__(spec)
        self.letters = spec.letters
        self.tags: Tuple[str, ...] = tuple(letter.tag for letter in spec.letters)
        self._index = {letter.name: idx for idx, letter in enumerate(spec.letters)}
        self._zero = Polynomial(self, {})
        self._one = Polynomial(self, {(): 1})

    def normalize(self, terms: Mapping[Monomial, int]) -> dict:
        return {word: coeff for word, coeff in terms.items() if coeff != 0}

    def zero(self) -> Polynomial:
        return self._zero

    def one(self) -> Polynomial:
        return self._one

    def from_int(self, value: int) -> Polynomial:
        return Polynomial(self, {(): value})

    def from_terms(self, terms: Mapping[Monomial, int]) -> Polynomial:
        return Polynomial(self, terms)

    def monomial(self, word: Monomial) -> Polynomial:
        return Polynomial(self, {tuple(word): 1})

    def letter(self, name: str) -> Polynomial:
        if name not in self._index:
            raise ParseError(f"unknown letter {name!r} in ring {self.describe()}")
        return Polynomial(self, {(self._index[name],): 1})

    def has_letter(self, name: str) -> bool:
        return name in self._index

    def letter_name(self, index: int) -> str:
        return self.letters[index].name

    def tag_of(self, index: int) -> str:
        return self.tags[index]

    def tag_set(self) -> frozenset:
        return frozenset(tag for tag in self.tags if tag != PLAIN_TAG)

    def word_text(self, word: Monomial) -> str:
        return "*".join(self.letters[idx].name for idx in word)

    def is_zero(self, x: Polynomial) -> bool:
        return not x.terms

    def to_text(self, x: Polynomial) -> str:
        return x.to_text()


class TruncatedFreeAlgebra(FreeAlgebra):
    """Free algebra over F_p modulo all monomials of degree > D."""

    is_finite = True

    def __init__(self, spec: RingSpec):
        if not sympy.isprime(spec.modulus):
            raise ParseError(f"truncated algebras need a prime modulus, got {spec.modulus}")
        self.prime = spec.modulus
        self.max_degree = spec.degree
        super().__init__(spec)
        self._basis: Optional[List[Monomial]] = None

    def normalize(self, terms: Mapping[Monomial, int]) -> dict:
        normal = {}
        for word, coeff in terms.items():
            if len(word) > self.max_degree:
                continue
            coeff %= self.prime
            if coeff:
                normal[word] = coeff
        return normal

    def basis(self) -> List[Monomial]:
        """All monomials of degree <= D in canonical order."""
        if self._basis is None:
            size = len(self.letters)
            words = [
                word
                for degree in range(self.max_degree + 1)
                for word in itertools.product(range(size), repeat=degree)
            ]
            self._basis = sorted(words, key=monomial_key)
        return self._basis

    @property
    def element_count(self) -> int:
        return self.prime ** len(self.basis())

    def elements(self) -> Iterator[Polynomial]:
        basis = self.basis()
        for coeffs in itertools.product(range(self.prime), repeat=len(basis)):
            yield Polynomial(self, dict(zip(basis, coeffs)))

    def encode(self, x: Polynomial) -> bytes:
        dtype = "<u1" if self.prime <= 256 else "<u4"
        return np.array([x.terms.get(word, 0) for word in self.basis()], dtype=dtype).tobytes()


# ============================================================================
# Modular integers
# ============================================================================

class ModularIntegers(Ring):
    """Z/m with elements stored as ints in [0, m)."""

    is_finite = True

    def __init__(self, spec: RingSpec):
        super().__init__(spec)
        self.modulus = spec.modulus
        self.width = max(1, ((self.modulus - 1).bit_length() + 7) // 8)

    def zero(self) -> int:
        return 0

    def one(self) -> int:
        return 1 % self.modulus

    def from_int(self, value: int) -> int:
        return value % self.modulus

    def add(self, x, y):
        return (x + y) % self.modulus

    def sub(self, x, y):
        return (x - y) % self.modulus

    def mul(self, x, y):
        return (x * y) % self.modulus

    def neg(self, x):
        return (-x) % self.modulus

    def is_zero(self, x) -> bool:
        return x % self.modulus == 0

    @property
    def element_count(self) -> int:
        return self.modulus

    def elements(self) -> Iterator[int]:
        return iter(range(self.modulus))

    def encode(self, x: int) -> bytes:
        return int(x).to_bytes(self.width, "little")


# ============================================================================
# Commutative polynomial rings
# ============================================================================

class CommutativePolynomials(Ring):
    """Z[x, y, ...] or Q[x, y, ...] backed by sympy.Poly."""

    def __init__(self, spec: RingSpec):
        super().__init__(spec)
        if not spec.letters:
            raise ParseError("commutative polynomial rings need at least one variable")
        self.domain = sympy.ZZ if spec.kind is RingKind.POLY_Z else sympy.QQ
        self.symbols = sympy.symbols([letter.name for letter in spec.letters])
        self._zero = self.from_int(0)
        self._one = self.from_int(1)

    def _poly(self, expr) -> sympy.Poly:
        return sympy.Poly(expr, *self.symbols, domain=self.domain)

    def zero(self) -> sympy.Poly:
        return self._zero

    def one(self) -> sympy.Poly:
        return self._one

    def from_int(self, value: int) -> sympy.Poly:
        return self._poly(value)

    def letter(self, name: str) -> sympy.Poly:
        for symbol in self.symbols:
            if symbol.name == name:
                return self._poly(symbol)
        raise ParseError(f"unknown variable {name!r} in ring {self.describe()}")

    def is_zero(self, x) -> bool:
        return x.is_zero

    def to_text(self, x) -> str:
        return str(x.as_expr())


# ============================================================================
# Construction and homomorphisms
# ============================================================================

@lru_cache(maxsize=None)
def build_ring(spec: RingSpec) -> Ring:
    """Instantiate (and memoise) the backend described by spec."""
    logger.debug(f"Building ring {spec.to_text()}")
    if spec.kind is RingKind.FREE:
        return FreeAlgebra(spec)
    if spec.kind is RingKind.TRUNCATED:
        return TruncatedFreeAlgebra(spec)
    if spec.kind is RingKind.MODULAR:
        return ModularIntegers(spec)
    return CommutativePolynomials(spec)


def evaluate_hom(p: Polynomial, assignment: Mapping[str, Any], target: Ring):
    """
    Image of p under the ring homomorphism extending a letter assignment.

    Args:
        p: Polynomial over a free (or truncated) algebra
        assignment: letter name -> element of target
        target: Ring receiving the image; integers map to their canonical image

    Returns:
        Element of target
    """
    result = target.zero()
    for word, coeff in p.sorted_terms():
        term = target.from_int(coeff)
        for idx in word:
            name = p.ring.letter_name(idx)
            if name not in assignment:
                raise UsageError(f"letter {name!r} is not assigned")
            term = target.mul(term, assignment[name])
        result = target.add(result, term)
    return result


def same_ring(left: Ring, right: Ring) -> bool:
    return left is right or left.spec == right.spec
