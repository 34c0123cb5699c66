"""
Formal group words in elementary generators

Conventions: [x, y] = x y x^-1 y^-1 and ^x y = x y x^-1. Every word flattens
to a sequence of transvections; inversion is structural (reverse the sequence
and negate the arguments), never a matrix inverse.
"""
import logging
from dataclasses import dataclass
from typing import Callable, Iterable, List, Mapping, Tuple, Union

from app.Group.matrix import SquareMatrix
from app.Helper.helper_exceptions import UsageError
from app.Ring.rings import evaluate_hom

logger = logging.getLogger(__name__)


# ============================================================================
# Generator symbols
# ============================================================================

@dataclass(frozen=True)
class T:
    """Transvection t_ij(c) = e + c e_ij."""
    i: int
    j: int
    c: object


@dataclass(frozen=True)
class Z:
    """z_ij(a, c) = t_ij(c) t_ji(a) t_ij(-c)."""
    i: int
    j: int
    a: object
    c: object


@dataclass(frozen=True)
class Y:
    """Elementary commutator y_ij(a, b) = [t_ij(a), t_ji(b)]."""
    i: int
    j: int
    a: object
    b: object


GenSymbol = Union[T, Z, Y]


# ============================================================================
# Word nodes
# ============================================================================

@dataclass(frozen=True)
class Gen:
    symbol: GenSymbol


@dataclass(frozen=True)
class Product:
    items: Tuple["Word", ...] = ()


@dataclass(frozen=True)
class Inverse:
    word: "Word"


@dataclass(frozen=True)
class Conjugate:
    """Left conjugate ^conj word = conj * word * conj^-1."""
    conj: "Word"
    word: "Word"


@dataclass(frozen=True)
class Commutator:
    left: "Word"
    right: "Word"


Word = Union[Gen, Product, Inverse, Conjugate, Commutator]

IDENTITY = Product(())


def product(*words: "Word") -> Product:
    return Product(tuple(words))


def gens(symbols: Iterable[GenSymbol]) -> Product:
    """Product of generator symbols."""
    return Product(tuple(Gen(symbol) for symbol in symbols))


def left_normed(words: List["Word"]) -> "Word":
    """[w1, w2, w3] = [[w1, w2], w3]."""
    result = words[0]
    for word in words[1:]:
        result = Commutator(result, word)
    return result


# ============================================================================
# Flattening and evaluation
# ============================================================================

def invert_flat(flat: List[T], ring) -> List[T]:
    return [T(t.i, t.j, ring.neg(t.c)) for t in reversed(flat)]


def flatten_symbol(symbol: GenSymbol, ring) -> List[T]:
    if isinstance(symbol, T):
        return [symbol]
    i, j = symbol.i, symbol.j
    if isinstance(symbol, Z):
        return [T(i, j, symbol.c), T(j, i, symbol.a), T(i, j, ring.neg(symbol.c))]
    if isinstance(symbol, Y):
        a, b = symbol.a, symbol.b
        return [T(i, j, a), T(j, i, b), T(i, j, ring.neg(a)), T(j, i, ring.neg(b))]
    raise UsageError(f"not a generator symbol: {symbol!r}")


def flatten(word: Word, ring) -> List[T]:
    """Transvection sequence whose product is the word."""
    if isinstance(word, Gen):
        return flatten_symbol(word.symbol, ring)
    if isinstance(word, Product):
        flat: List[T] = []
        for item in word.items:
            flat.extend(flatten(item, ring))
        return flat
    if isinstance(word, Inverse):
        return invert_flat(flatten(word.word, ring), ring)
    if isinstance(word, Conjugate):
        conj = flatten(word.conj, ring)
        return conj + flatten(word.word, ring) + invert_flat(conj, ring)
    if isinstance(word, Commutator):
        left = flatten(word.left, ring)
        right = flatten(word.right, ring)
        return left + right + invert_flat(left, ring) + invert_flat(right, ring)
    raise UsageError(f"not a group word: {word!r}")


def evaluate(word: Word, ring, n: int) -> SquareMatrix:
    """Exact matrix of the word in GL(n, ring)."""
    matrix = SquareMatrix.identity(ring, n)
    for t in flatten(word, ring):
        if not (1 <= t.i <= n and 1 <= t.j <= n) or t.i == t.j:
            raise UsageError(f"generator index ({t.i},{t.j}) invalid for n={n}")
        matrix = matrix.right_transvection(t.i, t.j, t.c)
    return matrix


def max_index(word: Word) -> int:
    """Largest generator index occurring in the word (0 for the empty word)."""
    if isinstance(word, Gen):
        return max(word.symbol.i, word.symbol.j)
    if isinstance(word, Product):
        return max((max_index(item) for item in word.items), default=0)
    if isinstance(word, Inverse):
        return max_index(word.word)
    if isinstance(word, Conjugate):
        return max(max_index(word.conj), max_index(word.word))
    return max(max_index(word.left), max_index(word.right))


# ============================================================================
# Rewriting helpers
# ============================================================================

def _symbol_is_trivial(symbol: GenSymbol, ring) -> bool:
    if isinstance(symbol, T):
        return ring.is_zero(symbol.c)
    if isinstance(symbol, Z):
        return ring.is_zero(symbol.a)
    return ring.is_zero(symbol.a) or ring.is_zero(symbol.b)


def simplify(word: Word, ring) -> Word:
    """Drop generators with zero arguments, flatten nested products, remove empty conjugates."""
    if isinstance(word, Gen):
        return IDENTITY if _symbol_is_trivial(word.symbol, ring) else word
    if isinstance(word, Product):
        items = []
        for item in word.items:
            item = simplify(item, ring)
            if isinstance(item, Product):
                items.extend(item.items)
            else:
                items.append(item)
        return items[0] if len(items) == 1 else Product(tuple(items))
    if isinstance(word, Inverse):
        inner = simplify(word.word, ring)
        return IDENTITY if inner == IDENTITY else Inverse(inner)
    if isinstance(word, Conjugate):
        conj, inner = simplify(word.conj, ring), simplify(word.word, ring)
        if inner == IDENTITY:
            return IDENTITY
        return inner if conj == IDENTITY else Conjugate(conj, inner)
    left, right = simplify(word.left, ring), simplify(word.right, ring)
    if left == IDENTITY or right == IDENTITY:
        return IDENTITY
    return Commutator(left, right)


def map_symbols(word: Word, fn: Callable[[GenSymbol], GenSymbol]) -> Word:
    if isinstance(word, Gen):
        return Gen(fn(word.symbol))
    if isinstance(word, Product):
        return Product(tuple(map_symbols(item, fn) for item in word.items))
    if isinstance(word, Inverse):
        return Inverse(map_symbols(word.word, fn))
    if isinstance(word, Conjugate):
        return Conjugate(map_symbols(word.conj, fn), map_symbols(word.word, fn))
    return Commutator(map_symbols(word.left, fn), map_symbols(word.right, fn))


def substitute_word(word: Word, assignment: Mapping[str, object], target) -> Word:
    """Image of a word over a free algebra under a letter assignment into `target`."""
    def image(value):
        return evaluate_hom(value, assignment, target)

    def convert(symbol: GenSymbol) -> GenSymbol:
        if isinstance(symbol, T):
            return T(symbol.i, symbol.j, image(symbol.c))
        if isinstance(symbol, Z):
            return Z(symbol.i, symbol.j, image(symbol.a), image(symbol.c))
        return Y(symbol.i, symbol.j, image(symbol.a), image(symbol.b))

    return map_symbols(word, convert)


def word_length(word: Word, ring) -> int:
    return len(flatten(word, ring))


# ============================================================================
# Text
# ============================================================================

def symbol_to_text(symbol: GenSymbol, ring) -> str:
    text = ring.to_text
    if isinstance(symbol, T):
        return f"t[{symbol.i},{symbol.j}]({text(symbol.c)})"
    if isinstance(symbol, Z):
        return f"z[{symbol.i},{symbol.j}]({text(symbol.a)};{text(symbol.c)})"
    return f"y[{symbol.i},{symbol.j}]({text(symbol.a)};{text(symbol.b)})"


def _factor_text(word: Word, ring) -> str:
    if isinstance(word, Product) and len(word.items) != 1:
        return "e" if not word.items else f"({word_to_text(word, ring)})"
    return word_to_text(word, ring)


def word_to_text(word: Word, ring) -> str:
    """Text in the word grammar; parses back to an eval-equal word."""
    if isinstance(word, Gen):
        return symbol_to_text(word.symbol, ring)
    if isinstance(word, Product):
        if not word.items:
            return "e"
        return " ".join(_factor_text(item, ring) for item in word.items)
    if isinstance(word, Inverse):
        return f"~{_factor_text(word.word, ring)}"
    if isinstance(word, Conjugate):
        return f"^{{{word_to_text(word.conj, ring)}}} {_factor_text(word.word, ring)}"
    return f"[{word_to_text(word.left, ring)}, {word_to_text(word.right, ring)}]"


# ============================================================================
# Generator sets
# ============================================================================

def positions(n: int) -> List[Tuple[int, int]]:
    """All ordered index pairs (i, j), i != j, in lexicographic order."""
    return [(i, j) for i in range(1, n + 1) for j in range(1, n + 1) if i != j]


def y_generators(n: int, a, b) -> List[Word]:
    """y_ij(a, b) for every position; with z-generators they span [E(n,A), E(n,B)]."""
    return [Gen(Y(i, j, a, b)) for i, j in positions(n)]


def z_generators(n: int, a, c) -> List[Word]:
    """z_ij(a, c) for every position; they span E(n, R, A)."""
    return [Gen(Z(i, j, a, c)) for i, j in positions(n)]


def mixed_generators(n: int, a, b, c) -> List[Word]:
    """z_ij(ab, c), z_ij(ba, c) and y_ij(a, b): generators of [E(n,A), E(n,B)]."""
    return z_generators(n, a * b, c) + z_generators(n, b * a, c) + y_generators(n, a, b)
