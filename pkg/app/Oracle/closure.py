"""
Subgroup closure over finite rings

Breadth-first enumeration under left multiplication by the generators and
their inverses, deduplicated by a canonical byte encoding. Z/m uses numpy
integer matrices; truncated free algebras go through SquareMatrix.
"""
import logging
from collections import deque
from dataclasses import dataclass, field
from itertools import product
from typing import Dict, Iterable, Iterator, List, Optional, Sequence

import numpy as np
from tqdm import tqdm

from app.Group.matrix import SquareMatrix
from app.Group.words import Gen, T, Y, Z, evaluate, positions
from app.Helper.helper_constant import ENGINE_DEFAULTS, PLAIN_TAG
from app.Helper.helper_exceptions import CapExceededError, UsageError
from app.Helper.helper_pydantic import CentralityResult
from app.Oracle.finite_ring import FiniteRing
from app.Ring.rings import ModularIntegers

logger = logging.getLogger(__name__)

INT64_LIMIT = 2 ** 63


# ============================================================================
# Backends
# ============================================================================

class _NumpyBackend:
    """n x n matrices over Z/m as numpy arrays."""

    def __init__(self, ring: ModularIntegers, n: int):
        self.ring = ring
        self.n = n
        self.modulus = ring.modulus
        self.dtype = "<u1" if self.modulus <= 256 else "<u2" if self.modulus <= 65536 else "<u4"

    def convert(self, g: SquareMatrix) -> np.ndarray:
        return np.array(g.rows, dtype=np.int64) % self.modulus

    def identity(self) -> np.ndarray:
        return np.eye(self.n, dtype=np.int64)

    def mul(self, a: np.ndarray, b: np.ndarray) -> np.ndarray:
        return (a @ b) % self.modulus

    def encode(self, a: np.ndarray) -> bytes:
        return a.astype(self.dtype).tobytes()

    def matrix(self, a: np.ndarray) -> SquareMatrix:
        return SquareMatrix(self.ring, self.n, [[int(value) for value in row] for row in a])


class _MatrixBackend:
    """Any finite backend with an `encode` method."""

    def __init__(self, ring, n: int):
        self.ring = ring
        self.n = n

    def convert(self, g: SquareMatrix) -> SquareMatrix:
        return g

    def identity(self) -> SquareMatrix:
        return SquareMatrix.identity(self.ring, self.n)

    def mul(self, a: SquareMatrix, b: SquareMatrix) -> SquareMatrix:
        return a * b

    def encode(self, a: SquareMatrix) -> bytes:
        return a.encode()

    def matrix(self, a: SquareMatrix) -> SquareMatrix:
        return a


def fits_int64(modulus: int, n: int) -> bool:
    """Whether an n x n product of reduced residues mod m stays below 2**63."""
    return n * (modulus - 1) ** 2 < INT64_LIMIT


def _backend(ring, n: int):
    if not ring.is_finite:
        raise UsageError(f"closures need a finite ring, got {ring.describe()}")
    if isinstance(ring, ModularIntegers):
        if fits_int64(ring.modulus, n):
            return _NumpyBackend(ring, n)
        logger.warning(f"{ring.describe()} at n={n} overflows int64 products; using exact integer matrices")
    return _MatrixBackend(ring, n)


def _inverse(backend, g, cap: int):
    """g^-1 = g^(k-1) where g^k = e."""
    identity = backend.encode(backend.identity())
    previous, power = backend.identity(), g
    for _ in range(cap):
        if backend.encode(power) == identity:
            return previous
        previous, power = power, backend.mul(power, g)
    raise CapExceededError("element order", cap)


# ============================================================================
# Subgroups
# ============================================================================

@dataclass
class SubgroupHandle:
    """A finite subgroup materialised by closure; immutable once built."""
    ring: object
    n: int
    generators: List[SquareMatrix]
    _backend: object = field(repr=False)
    _elements: Dict[bytes, object] = field(repr=False)

    def __len__(self) -> int:
        return len(self._elements)

    @property
    def size(self) -> int:
        return len(self._elements)

    def contains(self, g: SquareMatrix) -> bool:
        return self._backend.encode(self._backend.convert(g)) in self._elements

    def elements(self) -> Iterator[SquareMatrix]:
        for value in self._elements.values():
            yield self._backend.matrix(value)

    def inverse(self, g: SquareMatrix) -> SquareMatrix:
        backend = self._backend
        return backend.matrix(_inverse(backend, backend.convert(g), max(len(self), 1) + 1))

    def is_abelian(self) -> bool:
        backend = self._backend
        gens = [backend.convert(g) for g in self.generators]
        return all(
            backend.encode(backend.mul(x, y)) == backend.encode(backend.mul(y, x))
            for x in gens for y in gens
        )


def closure(gens: Sequence[SquareMatrix], ring=None, n: Optional[int] = None,
            cap: int = ENGINE_DEFAULTS["closure_cap"], progress: bool = False) -> SubgroupHandle:
    """
    Subgroup generated by `gens`.

    Args:
        gens: Generator matrices over one finite ring
        ring, n: Needed only when gens is empty
        cap: Maximum number of elements before CapExceededError
        progress: Show a tqdm bar on stderr

    Returns:
        SubgroupHandle holding every element
    """
    gens = list(gens)
    if gens:
        ring, n = gens[0].ring, gens[0].n
    if ring is None or n is None:
        raise UsageError("closure of an empty generator list needs the ring and degree")
    backend = _backend(ring, n)
    steps = [backend.convert(g) for g in gens]
    steps += [_inverse(backend, step, cap) for step in list(steps)]

    start = backend.identity()
    elements: Dict[bytes, object] = {backend.encode(start): start}
    frontier = deque([start])
    with tqdm(desc="Closure", unit="elem", disable=not progress) as pbar:
        while frontier:
            current = frontier.popleft()
            for step in steps:
                candidate = backend.mul(step, current)
                code = backend.encode(candidate)
                if code in elements:
                    continue
                if len(elements) >= cap:
                    raise CapExceededError("closure size", cap)
                elements[code] = candidate
                frontier.append(candidate)
                pbar.update(1)
    logger.info(f"Closure of {len(gens)} generators over {ring.describe()} at n={n}: {len(elements)} elements")
    return SubgroupHandle(ring, n, gens, backend, elements)


def contains(handle: SubgroupHandle, g: SquareMatrix) -> bool:
    return handle.contains(g)


# ============================================================================
# Generator sets over finite rings
# ============================================================================

def _evaluate_all(symbols: Iterable, ring, n: int) -> List[SquareMatrix]:
    seen: Dict[bytes, SquareMatrix] = {}
    for symbol in symbols:
        g = evaluate(Gen(symbol), ring, n)
        if not g.is_identity():
            seen.setdefault(g.encode(), g)
    return list(seen.values())


def elementary_generators(finite: FiniteRing, n: int, tag: str = PLAIN_TAG) -> List[SquareMatrix]:
    """t_ij(a) for a in the ideal: generators of E(n, A)."""
    values = finite.ideal_elements(tag)
    return _evaluate_all((T(i, j, a) for i, j in positions(n) for a in values), finite.ring, n)


def relative_generators(finite: FiniteRing, n: int, values: Sequence) -> List[SquareMatrix]:
    """z_ij(a, c) for a in `values`, c in R: generators of E(n, R, I)."""
    ring_values = finite.ideal_elements(PLAIN_TAG)
    return _evaluate_all(
        (Z(i, j, a, c) for i, j in positions(n) for a in values for c in ring_values), finite.ring, n
    )


def mixed_group_generators(finite: FiniteRing, n: int, first: str, second: str) -> List[SquareMatrix]:
    """z_ij(ab, c), z_ij(ba, c) and y_ij(a, b) over all ideal elements."""
    ring = finite.ring
    a_values, b_values = finite.ideal_elements(first), finite.ideal_elements(second)
    c_values = finite.ideal_elements(PLAIN_TAG)
    symbols = []
    for (i, j), a, b in product(positions(n), a_values, b_values):
        symbols.append(Y(i, j, a, b))
        for c in c_values:
            symbols.append(Z(i, j, ring.mul(a, b), c))
            symbols.append(Z(i, j, ring.mul(b, a), c))
    return _evaluate_all(symbols, ring, n)


def mixed_commutator_generators(first: SubgroupHandle, second: SubgroupHandle) -> List[SquareMatrix]:
    """Every commutator [x, y], x in first, y in second: [E(n,A), E(n,B)] from its definition."""
    seen: Dict[bytes, SquareMatrix] = {}
    right = [(y, second.inverse(y)) for y in second.elements()]
    for x in first.elements():
        x_inverse = first.inverse(x)
        for y, y_inverse in right:
            g = x * y * x_inverse * y_inverse
            if not g.is_identity():
                seen.setdefault(g.encode(), g)
    return list(seen.values())


def centrality_check(subgroup: SubgroupHandle, ambient: Sequence[SquareMatrix],
                     normal: SubgroupHandle) -> CentralityResult:
    """True iff [h, g] lies in `normal` for every generator h of the subgroup and g in ambient."""
    checked = 0
    for h in subgroup.generators:
        h_inverse = subgroup.inverse(h)
        for g in ambient:
            g_inverse = _matrix_inverse(g)
            commutator = h * g * h_inverse * g_inverse
            checked += 1
            if not normal.contains(commutator):
                detail = "; ".join(commutator.to_lines())
                logger.info(f"Centrality fails after {checked} pairs: {detail}")
                return CentralityResult(central=False, checked_pairs=checked, first_failure=detail)
    return CentralityResult(central=True, checked_pairs=checked)


def _matrix_inverse(g: SquareMatrix) -> SquareMatrix:
    backend = _backend(g.ring, g.n)
    return backend.matrix(_inverse(backend, backend.convert(g), ENGINE_DEFAULTS["closure_cap"]))
