"""
Square matrices over any ring backend.

Indices in the public API are 1-based, matching the generator notation
t[i,j](c).
"""
import logging
from typing import List, Optional, Sequence, Tuple

from app.Helper.helper_exceptions import UsageError
from app.Ideal.ideal_expr import IdealExpr
from app.Ideal.membership import poly_member

logger = logging.getLogger(__name__)


class SquareMatrix:
    """Immutable n x n matrix whose entries belong to `ring`."""

    __slots__ = ("ring", "n", "rows")

    def __init__(self, ring, n: int, rows: Sequence[Sequence]):
        if len(rows) != n or any(len(row) != n for row in rows):
            raise UsageError(f"expected a {n}x{n} array of entries")
        self.ring = ring
        self.n = n
        self.rows: Tuple[Tuple, ...] = tuple(tuple(row) for row in rows)

    @classmethod
    def identity(cls, ring, n: int) -> "SquareMatrix":
        if n < 2:
            raise UsageError(f"matrix degree must be at least 2, got {n}")
        zero, one = ring.zero(), ring.one()
        return cls(ring, n, [[one if r == c else zero for c in range(n)] for r in range(n)])

    @classmethod
    def from_entries(cls, ring, n: int, entries) -> "SquareMatrix":
        """Identity with entries overridden from a {(i, j): value} mapping (1-based)."""
        rows = [list(row) for row in cls.identity(ring, n).rows]
        for (i, j), value in entries.items():
            rows[i - 1][j - 1] = value
        return cls(ring, n, rows)

    def entry(self, i: int, j: int):
        return self.rows[i - 1][j - 1]

    def __mul__(self, other: "SquareMatrix") -> "SquareMatrix":
        if self.n != other.n:
            raise UsageError(f"cannot multiply {self.n}x{self.n} by {other.n}x{other.n}")
        ring = self.ring
        columns = list(zip(*other.rows))
        rows = []
        for row in self.rows:
            out = []
            for column in columns:
                total = ring.zero()
                for left, right in zip(row, column):
                    if ring.is_zero(left) or ring.is_zero(right):
                        continue
                    total = ring.add(total, ring.mul(left, right))
                out.append(total)
            rows.append(out)
        return SquareMatrix(ring, self.n, rows)

    def right_transvection(self, i: int, j: int, c) -> "SquareMatrix":
        """self * t_ij(c): column j gains column i times c."""
        ring = self.ring
        if ring.is_zero(c):
            return self
        rows = [list(row) for row in self.rows]
        for row in rows:
            source = row[i - 1]
            if not ring.is_zero(source):
                row[j - 1] = ring.add(row[j - 1], ring.mul(source, c))
        return SquareMatrix(ring, self.n, rows)

    def map_entries(self, fn, ring) -> "SquareMatrix":
        return SquareMatrix(ring, self.n, [[fn(value) for value in row] for row in self.rows])

    def is_identity(self) -> bool:
        return self == SquareMatrix.identity(self.ring, self.n)

    def first_difference(self, other: "SquareMatrix") -> Optional[Tuple[int, int, object, object]]:
        """First (row, column, mine, theirs) in row-major order where the matrices differ."""
        for r, (mine, theirs) in enumerate(zip(self.rows, other.rows), start=1):
            for c, (left, right) in enumerate(zip(mine, theirs), start=1):
                if not self.ring.equal(left, right):
                    return r, c, left, right
        return None

    def __eq__(self, other) -> bool:
        if not isinstance(other, SquareMatrix):
            return NotImplemented
        return self.n == other.n and self.first_difference(other) is None

    def __hash__(self) -> int:
        return hash(self.rows)

    def encode(self) -> bytes:
        """Canonical row-major encoding for finite backends."""
        return b"".join(self.ring.encode(value) for row in self.rows for value in row)

    def to_lines(self) -> List[str]:
        text = self.ring.to_text
        return ["[" + ", ".join(text(value) for value in row) + "]" for row in self.rows]

    def __repr__(self) -> str:
        return f"SquareMatrix({'; '.join(self.to_lines())})"


def congruence_level(g: SquareMatrix, ideal: IdealExpr) -> bool:
    """True iff every entry of g - e lies in the ideal (g is in GL(n, R, I))."""
    ring = g.ring
    if not getattr(ring, "is_free", False):
        raise UsageError(f"congruence levels need a free algebra backend, got {ring.describe()}")
    for r, row in enumerate(g.rows):
        for c, value in enumerate(row):
            shifted = ring.sub(value, ring.one()) if r == c else value
            if not poly_member(shifted, ideal):
                logger.debug(f"Entry ({r + 1},{c + 1}) of level check is outside {ideal.to_text()}")
                return False
    return True
