"""
Steinberg relations and line factorisations

The commutator rules for transvections are derived by evaluating
[t_ij(c), t_kl(a)] over free symbols and factoring the result, then
instantiated by substitution; `steinberg_rule_table` re-checks every rule.
"""
import logging
from functools import lru_cache
from typing import List, Optional, Tuple

from app.Group.matrix import SquareMatrix
from app.Group.words import (
    Commutator, Conjugate, Gen, Product, T, Word, Z, evaluate, gens, positions,
)
from app.Helper.helper_parsing import symbolic_ring
from app.Helper.helper_exceptions import UsageError
from app.Helper.helper_pydantic import SuiteLine
from app.Ring.rings import evaluate_hom

logger = logging.getLogger(__name__)

RULE_RING = "free(Z; c:R, a:R)"


def factor_line(g: SquareMatrix) -> Optional[List[T]]:
    """
    Factor e + N when N lives in a single column (or a single row) with zero diagonal.

    Such matrices are products of commuting transvections in that column (row).

    Returns:
        Transvections in ascending row (column) order, [] for e, None otherwise
    """
    ring, n = g.ring, g.n
    support = [
        (r, c)
        for r in range(1, n + 1)
        for c in range(1, n + 1)
        if not ring.equal(g.entry(r, c), ring.one() if r == c else ring.zero())
    ]
    if not support:
        return []
    columns = {c for _, c in support}
    if len(columns) == 1:
        (k,) = columns
        if all(r != k for r, _ in support):
            return [T(r, k, g.entry(r, k)) for r, _ in sorted(support)]
    rows = {r for r, _ in support}
    if len(rows) == 1:
        (k,) = rows
        if all(c != k for _, c in support):
            return [T(k, c, g.entry(k, c)) for _, c in sorted(support)]
    return None


def transvections_text(factors: List[T], ring) -> str:
    return " ".join(f"t[{f.i},{f.j}]({ring.to_text(f.c)})" for f in factors) or "e"


@lru_cache(maxsize=None)
def derived_rule(first: Tuple[int, int], second: Tuple[int, int]) -> Optional[Tuple[T, ...]]:
    """
    Factors of [t_first(c), t_second(a)] over the free symbols c, a.

    Returns None when the commutator is not a line matrix (opposite positions).
    """
    ring = symbolic_ring(RULE_RING)
    n = max(3, *first, *second)
    word = Commutator(Gen(T(*first, ring.letter("c"))), Gen(T(*second, ring.letter("a"))))
    factors = factor_line(evaluate(word, ring, n))
    if factors is None:
        return None
    logger.debug(f"Derived [t{first}(c), t{second}(a)] = {transvections_text(factors, ring)}")
    return tuple(factors)


def commutator_rule(s: T, t: T, ring) -> Optional[List[T]]:
    """
    [s, t] for two transvections when it is a transvection product.

    Substitutes the arguments of s and t into the derived rule for their positions.
    Returns None for the opposite position (j, i), whose commutator is not elementary.
    """
    rule = derived_rule((s.i, s.j), (t.i, t.j))
    if rule is None:
        return None
    assignment = {"c": s.c, "a": t.c}
    return [T(f.i, f.j, evaluate_hom(f.c, assignment, ring)) for f in rule]


def steinberg_conjugate(t: T, s: T, ring) -> Word:
    """
    ^s t as a word in generators.

    For t at the position opposite to s the result is the single z-generator
    z_ij(a, c) = t_ij(c) t_ji(a) t_ij(-c).
    """
    if (t.i, t.j) == (s.j, s.i):
        return Gen(Z(s.i, s.j, t.c, s.c))
    rule = commutator_rule(s, t, ring)
    return gens(rule + [t])


def steinberg_rule_table(n: int) -> List[SuiteLine]:
    """Check every commutator rule and conjugation rewrite at degree n by evaluation."""
    if n < 3:
        raise UsageError(f"Steinberg rules need n >= 3, got {n}")
    ring = symbolic_ring(RULE_RING)
    c, a = ring.letter("c"), ring.letter("a")
    lines = []
    for first in positions(n):
        for second in positions(n):
            s, t = T(*first, c), T(*second, a)
            pattern = f"n={n} [t{first[0]}{first[1]}(c), t{second[0]}{second[1]}(a)]"
            rule = commutator_rule(s, t, ring)
            actual = evaluate(Commutator(Gen(s), Gen(t)), ring, n)
            if rule is None:
                passed = factor_line(actual) is None
                detail = "not a line matrix"
            else:
                passed = actual == evaluate(gens(rule), ring, n)
                detail = transvections_text(rule, ring) if rule else "commute"
            conjugate = steinberg_conjugate(t, s, ring)
            passed = passed and evaluate(conjugate, ring, n) == evaluate(Conjugate(Gen(s), Gen(t)), ring, n)
            lines.append(SuiteLine(passed=passed, name=pattern, detail=detail))
    return lines


def expand_commutator_bimultiplicative(word: Word) -> Word:
    """
    Expand a commutator of products:

        [x, y1 Y] = [x, y1] . ^y1 [x, Y]
        [x1 X, y] = ^x1 [X, y] . [x1, y]

    The right factor is expanded first; atomic commutators come back unchanged.
    """
    if not isinstance(word, Commutator):
        raise UsageError("expected a commutator of the form [x, y]")
    left, right = word.left, word.right
    if isinstance(right, Product) and len(right.items) >= 2:
        head, rest = right.items[0], _rest(right.items)
        return Product((
            expand_commutator_bimultiplicative(Commutator(left, head)),
            Conjugate(head, expand_commutator_bimultiplicative(Commutator(left, rest))),
        ))
    if isinstance(left, Product) and len(left.items) >= 2:
        head, rest = left.items[0], _rest(left.items)
        return Product((
            Conjugate(head, expand_commutator_bimultiplicative(Commutator(rest, right))),
            expand_commutator_bimultiplicative(Commutator(head, right)),
        ))
    return word


def _rest(items: Tuple[Word, ...]) -> Word:
    return items[1] if len(items) == 2 else Product(items[1:])
