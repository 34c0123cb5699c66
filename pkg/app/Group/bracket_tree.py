"""Bracket trees of multiple commutators [[H1, ..., Hm]] with ideal-tagged leaves."""
from dataclasses import dataclass
from typing import Iterator, List, Union

from app.Helper.helper_constant import PLAIN_TAG
from app.Ideal.ideal_expr import FULL_RING, Atom, IdealExpr, SymProd


@dataclass(frozen=True)
class Leaf:
    tag: str

    def to_text(self) -> str:
        return self.tag


@dataclass(frozen=True)
class Node:
    left: "BracketTree"
    right: "BracketTree"

    def to_text(self) -> str:
        return f"[{self.left.to_text()},{self.right.to_text()}]"


BracketTree = Union[Leaf, Node]


def leaf_count(tree: BracketTree) -> int:
    if isinstance(tree, Leaf):
        return 1
    return leaf_count(tree.left) + leaf_count(tree.right)


def leaves(tree: BracketTree) -> List[Leaf]:
    if isinstance(tree, Leaf):
        return [tree]
    return leaves(tree.left) + leaves(tree.right)


def cut_point(tree: Node) -> int:
    """Number of leaves left of the outermost bracket."""
    return leaf_count(tree.left)


def composite_ideal(tree: BracketTree) -> IdealExpr:
    """I1 o ... o Im with the bracketing of the tree."""
    if isinstance(tree, Leaf):
        return FULL_RING if tree.tag == PLAIN_TAG else Atom(tree.tag)
    return SymProd(composite_ideal(tree.left), composite_ideal(tree.right))


def internal_nodes(tree: BracketTree) -> Iterator[Node]:
    """Internal nodes in post-order (children before parents)."""
    if isinstance(tree, Node):
        yield from internal_nodes(tree.left)
        yield from internal_nodes(tree.right)
        yield tree


def classify(node: Node) -> str:
    """base, s=1, s=m-1 or interior."""
    m, s = leaf_count(node), cut_point(node)
    if m == 2:
        return "base"
    if s == 1:
        return "s=1"
    if s == m - 1:
        return "s=m-1"
    return "interior"
