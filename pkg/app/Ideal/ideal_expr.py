"""
Ideal expressions

Two-sided ideals of a tagged free algebra built from atoms, the full ring,
sums, products and symmetrised products. Trees are immutable and hashable.
SymProd is kept as its own node: it is not associative, so (A o B) o C and
A o (B o C) are different trees with different members.
"""
from dataclasses import dataclass
from typing import FrozenSet, Union

from app.Helper.helper_constant import PLAIN_TAG


@dataclass(frozen=True)
class Atom:
    """Ideal generated by all letters carrying `tag`."""
    tag: str

    def to_text(self) -> str:
        return self.tag


@dataclass(frozen=True)
class FullRing:
    def to_text(self) -> str:
        return PLAIN_TAG


@dataclass(frozen=True)
class Sum:
    left: "IdealExpr"
    right: "IdealExpr"

    def to_text(self) -> str:
        right = self.right.to_text()
        if isinstance(self.right, Sum):
            right = f"({right})"
        return f"{self.left.to_text()} + {right}"


@dataclass(frozen=True)
class Prod:
    left: "IdealExpr"
    right: "IdealExpr"

    def to_text(self) -> str:
        return f"{_factor_text(self.left)}.{_factor_text(self.right)}"


@dataclass(frozen=True)
class SymProd:
    left: "IdealExpr"
    right: "IdealExpr"

    def to_text(self) -> str:
        return f"{_factor_text(self.left)} o {_factor_text(self.right)}"


IdealExpr = Union[Atom, FullRing, Sum, Prod, SymProd]

FULL_RING = FullRing()


def _factor_text(expr: IdealExpr) -> str:
    if isinstance(expr, (Atom, FullRing)):
        return expr.to_text()
    return f"({expr.to_text()})"


def ideal_tags(expr: IdealExpr) -> FrozenSet[str]:
    """All atom tags occurring in expr."""
    if isinstance(expr, Atom):
        return frozenset({expr.tag})
    if isinstance(expr, FullRing):
        return frozenset()
    return ideal_tags(expr.left) | ideal_tags(expr.right)


def sym(*factors: IdealExpr) -> IdealExpr:
    """Left-nested symmetrised product: sym(A, B, C) = (A o B) o C."""
    result = factors[0]
    for factor in factors[1:]:
        result = SymProd(result, factor)
    return result


def prod(*factors: IdealExpr) -> IdealExpr:
    """Left-nested product: prod(A, B, C) = (A.B).C."""
    result = factors[0]
    for factor in factors[1:]:
        result = Prod(result, factor)
    return result
