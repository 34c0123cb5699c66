"""
Text grammars for ring specs, polynomials, ideal expressions, group words and
bracket trees.

Each grammar is a small LALR grammar compiled once with lark; a Transformer
turns the parse tree into engine objects. Every grammar error surfaces as a
ParseError carrying the offending position.
"""
import logging
from functools import lru_cache
from typing import List, Tuple

from lark import Lark, Transformer
from lark.exceptions import LarkError, UnexpectedInput, VisitError

from app.Group.bracket_tree import BracketTree, Leaf, Node
from app.Group.words import (
    IDENTITY, Conjugate, Gen, Inverse, Product, T, Word, Y, Z, left_normed,
)
from app.Helper.helper_constant import PLAIN_TAG, RingKind
from app.Helper.helper_exceptions import EngineError, ParseError
from app.Helper.helper_pydantic import Letter, RingSpec
from app.Ideal.ideal_expr import FULL_RING, Atom, IdealExpr, Prod, Sum, SymProd
from app.Ring.rings import Ring, build_ring

logger = logging.getLogger(__name__)


# ============================================================================
# Grammars
# ============================================================================

_POLY_RULES = r"""
?poly: poly_term
     | poly "+" poly_term -> add
     | poly "-" poly_term -> sub
?poly_term: poly_product
          | "-" poly_term -> neg
?poly_product: poly_power
             | poly_product "*" poly_power -> mul
             | poly_product poly_power -> mul
?poly_power: poly_atom
           | poly_atom ("^" | "**") INT -> pow
?poly_atom: INT -> int
          | NAME -> name
          | "(" poly ")"
"""

_GRAMMARS = {
    "ring_spec": r"""
?ring_spec: free | trunc | modular | poly_z | poly_q
free: "free" "(" "Z" ";" decls ")"
trunc: "trunc" "(" FIELD ";" decls ";" INT ")"
modular: "Z" "/" INT
poly_z: "poly" "(" "Z" ";" names ")"
poly_q: "poly" "(" "Q" ";" names ")"
decls: decl ("," decl)*
decl: NAME (":" NAME)?
names: NAME ("," NAME)*
FIELD: /F[0-9]+/
NAME: /[A-Za-z][A-Za-z0-9_']*/
INT: /[0-9]+/
%import common.WS
%ignore WS
""",
    "poly": _POLY_RULES + r"""
NAME: /[A-Za-z][A-Za-z0-9_']*/
INT: /[0-9]+/
%import common.WS
%ignore WS
""",
    "word": r"""
word: factor+
?factor: "e" -> identity
       | "t" "[" INT "," INT "]" "(" poly ")" -> tgen
       | "z" "[" INT "," INT "]" "(" poly ";" poly ")" -> zgen
       | "y" "[" INT "," INT "]" "(" poly ";" poly ")" -> ygen
       | "~" factor -> inverse
       | "^" "{" word "}" factor -> conjugate
       | "[" word ("," word)+ "]" -> commutator
       | "(" word ")"
""" + _POLY_RULES + r"""
NAME: /[A-Za-z][A-Za-z0-9_']*/
INT: /[0-9]+/
%import common.WS
%ignore WS
""",
    "ideal": r"""
?ideal: ideal_prod
      | ideal "+" ideal_prod -> ideal_sum
?ideal_prod: ideal_atom
           | ideal_prod "." ideal_atom -> ideal_mul
           | ideal_prod "o" ideal_atom -> ideal_sym
?ideal_atom: TAG -> ideal_tag
           | "(" ideal ")"
TAG: /[A-Z][0-9]*/
%import common.WS
%ignore WS
""",
    "tree": r"""
?tree: TAG -> leaf
     | "[" tree ("," tree)+ "]" -> node
TAG: /[A-Z][0-9]*/
%import common.WS
%ignore WS
""",
}


@lru_cache(maxsize=None)
def _parser(start: str) -> Lark:
    return Lark(_GRAMMARS[start], start=start, parser="lalr")


# ============================================================================
# Transformers
# ============================================================================

class _RingSpecBuilder(Transformer):
    def decl(self, children):
        tag = str(children[1]) if len(children) > 1 else PLAIN_TAG
        return Letter(name=str(children[0]), tag=tag)

    def decls(self, children):
        names = [letter.name for letter in children]
        duplicates = sorted({name for name in names if names.count(name) > 1})
        if duplicates:
            raise ParseError(f"duplicate letter(s) {', '.join(duplicates)}")
        return tuple(children)

    def names(self, children):
        return self.decls([Letter(name=str(name)) for name in children])

    def free(self, children):
        return RingSpec(kind=RingKind.FREE, letters=children[0])

    def trunc(self, children):
        field, letters, degree = children
        return RingSpec(kind=RingKind.TRUNCATED, letters=letters,
                        modulus=int(field[1:]), degree=int(degree))

    def modular(self, children):
        modulus = int(children[0])
        if modulus < 2:
            raise ParseError(f"modulus must be at least 2, got {modulus}")
        return RingSpec(kind=RingKind.MODULAR, modulus=modulus)

    def poly_z(self, children):
        return RingSpec(kind=RingKind.POLY_Z, letters=children[0])

    def poly_q(self, children):
        return RingSpec(kind=RingKind.POLY_Q, letters=children[0])


class _ElementBuilder(Transformer):
    """Polynomial rules, evaluated in a ring backend."""

    def __init__(self, ring: Ring):
        super().__init__()
        self.ring = ring

    def int(self, children):
        return self.ring.from_int(int(children[0]))

    def name(self, children):
        return resolve_name(str(children[0]), self.ring)

    def add(self, children):
        return self.ring.add(children[0], children[1])

    def sub(self, children):
        return self.ring.sub(children[0], children[1])

    def neg(self, children):
        return self.ring.neg(children[0])

    def mul(self, children):
        return self.ring.mul(children[0], children[1])

    def pow(self, children):
        base, exponent = children
        result = self.ring.one()
        for _ in range(int(exponent)):
            result = self.ring.mul(result, base)
        return result


class _WordBuilder(_ElementBuilder):
    def word(self, children):
        return children[0] if len(children) == 1 else Product(tuple(children))

    def identity(self, children):
        return IDENTITY

    def tgen(self, children):
        i, j, c = children
        return Gen(T(_index(i), _index(j), c))

    def zgen(self, children):
        i, j, a, c = children
        return Gen(Z(_index(i), _index(j), a, c))

    def ygen(self, children):
        i, j, a, b = children
        return Gen(Y(_index(i), _index(j), a, b))

    def inverse(self, children):
        return Inverse(children[0])

    def conjugate(self, children):
        return Conjugate(children[0], children[1])

    def commutator(self, children):
        return left_normed(children)


class _IdealBuilder(Transformer):
    def ideal_tag(self, children):
        tag = str(children[0])
        return FULL_RING if tag == PLAIN_TAG else Atom(tag)

    def ideal_sum(self, children):
        return Sum(children[0], children[1])

    def ideal_mul(self, children):
        return Prod(children[0], children[1])

    def ideal_sym(self, children):
        return SymProd(children[0], children[1])


class _TreeBuilder(Transformer):
    def leaf(self, children):
        return Leaf(str(children[0]))

    def node(self, children):
        tree = children[0]
        for child in children[1:]:
            tree = Node(tree, child)
        return tree


def _index(token) -> int:
    value = int(token)
    if value < 1:
        raise ParseError(f"generator indices start at 1, got {value}")
    return value


def resolve_name(name: str, ring: Ring):
    """
    A declared letter, or a run of single-character letters written without
    separators ("abab" in a ring declaring a and b).
    """
    has_letter = getattr(ring, "has_letter", None)
    if has_letter is None or has_letter(name):
        return ring.letter(name)
    if all(has_letter(char) for char in name):
        result = ring.one()
        for char in name:
            result = ring.mul(result, ring.letter(char))
        return result
    raise ParseError(f"unknown letter {name!r} in ring {ring.describe()}")


def _run(start: str, text: str, builder: Transformer):
    try:
        tree = _parser(start).parse(text)
        return builder.transform(tree)
    except UnexpectedInput as exc:
        position = getattr(exc, "pos_in_stream", None)
        raise ParseError(f"cannot parse {start.replace('_', ' ')}", text,
                         -1 if position is None else position) from None
    except VisitError as exc:
        if isinstance(exc.orig_exc, EngineError):
            raise exc.orig_exc from None
        raise ParseError(f"invalid {start.replace('_', ' ')}: {exc.orig_exc}", text) from None
    except LarkError as exc:
        raise ParseError(f"invalid {start.replace('_', ' ')}: {exc}", text) from None


# ============================================================================
# Public entry points
# ============================================================================

def parse_ring_spec(text: str) -> RingSpec:
    return _run("ring_spec", text, _RingSpecBuilder())


def symbolic_ring(text: str) -> Ring:
    """Parse and build a ring backend in one step."""
    return build_ring(parse_ring_spec(text))


def parse_polynomial(text: str, ring: Ring):
    return _run("poly", text, _ElementBuilder(ring))


def parse_ideal(text: str) -> IdealExpr:
    return _run("ideal", text, _IdealBuilder())


def parse_word(text: str, ring: Ring) -> Word:
    return _run("word", text, _WordBuilder(ring))


def parse_transvection(text: str, ring: Ring) -> T:
    """A single `t[i,j](poly)` generator."""
    word = parse_word(text, ring)
    if not (isinstance(word, Gen) and isinstance(word.symbol, T)):
        raise ParseError("expected a single transvection t[i,j](...)", text)
    return word.symbol


def parse_bracket_tree(text: str) -> BracketTree:
    return _run("tree", text, _TreeBuilder())


def parse_index_pair(text: str) -> Tuple[int, int]:
    """'1,2' -> (1, 2)."""
    parts: List[str] = [part.strip() for part in text.split(",")]
    if len(parts) != 2 or not all(part.isdigit() for part in parts):
        raise ParseError("expected an index pair such as 1,2", text)
    i, j = (int(part) for part in parts)
    if i < 1 or j < 1 or i == j:
        raise ParseError(f"invalid index pair ({i},{j})", text)
    return i, j
