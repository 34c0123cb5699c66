"""
Verification suites for the closed-form matrix and commutator formulas.

Every formula is checked by exact evaluation over a free algebra. The
commutation tables are derived by factoring the evaluated commutator and then
compared with their displayed form; ideal claims on the derived factors are
checked with the membership decision.
"""
import logging
from typing import Callable, Dict, List, Optional, Tuple

from app.Certify.elementary import conjugation_atoms
from app.Group.matrix import SquareMatrix
from app.Group.steinberg import (
    commutator_rule, expand_commutator_bimultiplicative, factor_line, steinberg_rule_table, transvections_text,
)
from app.Group.words import (
    Commutator, Conjugate, Gen, Inverse, Product, T, Word, Y, evaluate, gens, positions,
)
from app.Helper.helper_constant import VERIFY_SUITES
from app.Helper.helper_exceptions import UsageError
from app.Helper.helper_parsing import parse_polynomial, symbolic_ring
from app.Helper.helper_pydantic import SuiteLine
from app.Ideal.ideal_expr import Atom, IdealExpr, Prod, SymProd
from app.Ideal.membership import poly_member

logger = logging.getLogger(__name__)

TABLE_RING = "free(Z; a:A, b:B, c:C)"

_A, _B, _C = Atom("A"), Atom("B"), Atom("C")
CLAIM_ABC = Prod(Prod(_A, _B), _C)
CLAIM_BAC = Prod(Prod(_B, _A), _C)
CLAIM_CAB = Prod(_C, Prod(_A, _B))
CLAIM_CBA = Prod(_C, Prod(_B, _A))

# Entries of y_ij(a, b) and its inverse on the (i, j) block
Y_BLOCK = {"ii": "1 + a*b + a*b*a*b", "ij": "-a*b*a", "ji": "b*a*b", "jj": "1 - b*a"}
Y_INVERSE_BLOCK = {"ii": "1 - a*b", "ij": "a*b*a", "ji": "-b*a*b", "jj": "1 + b*a + b*a*b*a"}

# Displayed [t(c), y_ij(a, b)] for the four positions sharing one index with the
# hook {i, j}. Keys name the transvection position with h the third index; each
# factor is (row, column, argument, claim). The suites derive the factors by
# evaluation and report any disagreement with this display.
COMMUTATION_TABLE = {
    "ih": [("i", "h", "-a*b*c - a*b*a*b*c", CLAIM_ABC), ("j", "h", "-b*a*b*c", CLAIM_BAC)],
    "jh": [("i", "h", "a*b*a*c", CLAIM_ABC), ("j", "h", "b*a*c", CLAIM_BAC)],
    "hi": [("h", "i", "c*a*b", CLAIM_CAB), ("h", "j", "-c*a*b*a", CLAIM_CAB)],
    "hj": [("h", "i", "c*b*a*b", CLAIM_CBA), ("h", "j", "-c*b*a - c*b*a*b*a", CLAIM_CBA)],
}


def _table_ring():
    return symbolic_ring(TABLE_RING)


def _require(n: int, minimum: int) -> None:
    if n < minimum:
        raise UsageError(f"this suite needs n >= {minimum}, got {n}")


def _hooks(n: int) -> List[Tuple[int, int, int]]:
    return [(i, j, h) for i, j in positions(n) for h in range(1, n + 1) if h not in (i, j)]


def _compare(name: str, left: SquareMatrix, right: SquareMatrix, detail: str = "") -> SuiteLine:
    difference = left.first_difference(right)
    if difference is None:
        return SuiteLine(passed=True, name=name, detail=detail or "exact")
    r, c, mine, theirs = difference
    text = left.ring.to_text
    return SuiteLine(passed=False, name=name,
                     detail=f"entry ({r},{c}): {text(mine)} vs {text(theirs)}")


# ============================================================================
# Explicit y-matrices
# ============================================================================

def y_block_matrix(ring, n: int, i: int, j: int, block: Dict[str, str]) -> SquareMatrix:
    """Identity with the (i, j) block filled from a block table."""
    where = {"ii": (i, i), "ij": (i, j), "ji": (j, i), "jj": (j, j)}
    return SquareMatrix.from_entries(
        ring, n, {where[key]: parse_polynomial(text, ring) for key, text in block.items()}
    )


def y_explicit_suite(n: int) -> List[SuiteLine]:
    _require(n, 2)
    ring = _table_ring()
    a, b = ring.letter("a"), ring.letter("b")
    lines = []
    for i, j in positions(n):
        y = Gen(Y(i, j, a, b))
        expected = y_block_matrix(ring, n, i, j, Y_BLOCK)
        line = _compare(f"n={n} y[{i},{j}](a;b)", evaluate(y, ring, n), expected)
        if (i, j) == (1, 2):
            line.extra = expected.to_lines()
        lines.append(line)
        lines.append(_compare(f"n={n} y[{i},{j}](a;b)^-1", evaluate(Inverse(y), ring, n),
                              y_block_matrix(ring, n, i, j, Y_INVERSE_BLOCK)))
    return lines


# ============================================================================
# Commutation tables
# ============================================================================

def displayed_formula(ring, i: int, j: int, h: int, key: str) -> Tuple[T, List[Tuple[T, IdealExpr]]]:
    """The transvection t(c) of a displayed row and the displayed factors of [t(c), y_ij(a, b)]."""
    index = {"i": i, "j": j, "h": h}
    c = ring.letter("c")
    t = T(index[key[0]], index[key[1]], c)
    factors = [
        (T(index[row], index[column], parse_polynomial(arg, ring)), claim)
        for row, column, arg, claim in COMMUTATION_TABLE[key]
    ]
    return t, factors


def _commutator(t: T, y: Y, transvection_first: bool) -> Word:
    return Commutator(Gen(t), Gen(y)) if transvection_first else Commutator(Gen(y), Gen(t))


def derive_commutation(ring, n: int, t: T, y: Y, transvection_first: bool = True) -> Optional[List[T]]:
    """Factor [t, y] (or [y, t]) by evaluating it over the free algebra."""
    return factor_line(evaluate(_commutator(t, y, transvection_first), ring, n))


def _table_line(ring, n: int, i: int, j: int, h: int, key: str, transvection_first: bool) -> SuiteLine:
    y = Y(i, j, ring.letter("a"), ring.letter("b"))
    t, displayed = displayed_formula(ring, i, j, h, key)
    if transvection_first:
        name = f"n={n} [t[{t.i},{t.j}](c), y[{i},{j}](a;b)]"
    else:
        name = f"n={n} [y[{i},{j}](a;b), t[{t.i},{t.j}](c)]"
        displayed = [(T(f.i, f.j, ring.neg(f.c)), claim) for f, claim in displayed]
    derived = derive_commutation(ring, n, t, y, transvection_first)
    if derived is None:
        return SuiteLine(passed=False, name=name, detail="not a line matrix")
    formula = transvections_text(derived, ring)
    shown = {(f.i, f.j): (f.c, claim) for f, claim in displayed}
    agrees = len(derived) == len(shown) and all(
        (f.i, f.j) in shown and ring.equal(f.c, shown[(f.i, f.j)][0]) for f in derived
    )
    if not agrees:
        display = transvections_text([f for f, _ in displayed], ring)
        return SuiteLine(passed=False, name=name, detail=f"derived {formula}, displayed {display}")
    for f in derived:
        claim = shown[(f.i, f.j)][1]
        if not poly_member(f.c, claim):
            return SuiteLine(passed=False, name=name, detail=f"t[{f.i},{f.j}] outside {claim.to_text()}")
    return _compare(name, evaluate(_commutator(t, y, transvection_first), ring, n),
                    evaluate(gens(derived), ring, n), f"derived {formula}, matches display")


def _table_suite(n: int, transvection_first: bool) -> List[SuiteLine]:
    _require(n, 3)
    ring = _table_ring()
    return [
        _table_line(ring, n, i, j, h, key, transvection_first)
        for i, j, h in _hooks(n)
        for key in COMMUTATION_TABLE
    ]


def commutation_table_suite(n: int) -> List[SuiteLine]:
    """[t(c), y] for every hook-adjacent position."""
    return _table_suite(n, transvection_first=True)


def centrality_table_suite(n: int) -> List[SuiteLine]:
    """[y, t(c)], derived on its own and compared with the displayed table negated."""
    return _table_suite(n, transvection_first=False)


# ============================================================================
# Commutator identities
# ============================================================================

def _right_conjugate(word: Word, by: Word) -> Word:
    """word^by = by^-1 word by."""
    return Conjugate(Inverse(by), word)


def identity_suite(n: int) -> List[SuiteLine]:
    _require(n, 3)
    ring = _table_ring()
    a, b, c = ring.letter("a"), ring.letter("b"), ring.letter("c")
    x, y, z = Gen(T(1, 2, a)), Gen(T(2, 3, b)), Gen(T(3, 1, c))
    identities: List[Tuple[str, Word, Word]] = [
        ("[x, yz] = [x, y] ^y[x, z]", Commutator(x, Product((y, z))),
         Product((Commutator(x, y), Conjugate(y, Commutator(x, z))))),
        ("[xy, z] = ^x[y, z] [x, z]", Commutator(Product((x, y)), z),
         Product((Conjugate(x, Commutator(y, z)), Commutator(x, z)))),
        ("[x, y]^-1 = [y, x]", Inverse(Commutator(x, y)), Commutator(y, x)),
        ("^z[x, y] = [^z x, ^z y]", Conjugate(z, Commutator(x, y)),
         Commutator(Conjugate(z, x), Conjugate(z, y))),
        ("[x^-1, y] = [y, x]^x", Commutator(Inverse(x), y), _right_conjugate(Commutator(y, x), x)),
        ("[x, y^-1] = [y, x]^y", Commutator(x, Inverse(y)), _right_conjugate(Commutator(y, x), y)),
    ]
    product_commutator = Commutator(Product((x, y)), Product((z, x)))
    identities.append(("bimultiplicative expansion of [xy, zx]", product_commutator,
                       expand_commutator_bimultiplicative(product_commutator)))
    return [
        _compare(f"n={n} {name}", evaluate(left, ring, n), evaluate(right, ring, n))
        for name, left, right in identities
    ]


def explicit_matrix_suite(n: int = 3) -> List[SuiteLine]:
    """Two closed-form commutators over commutative polynomial rings (always at n = 3)."""
    lines = []
    ring = symbolic_ring("poly(Q; x, y)")
    x, y = ring.letter("x"), ring.letter("y")
    word = Commutator(gens([T(1, 3, x), T(2, 3, y)]), gens([T(3, 1, ring.neg(y)), T(3, 2, x)]))
    expected = SquareMatrix.from_entries(ring, 3, {
        (1, 1): parse_polynomial("1 - x*y", ring), (1, 2): parse_polynomial("x^2", ring),
        (2, 1): parse_polynomial("-y^2", ring), (2, 2): parse_polynomial("1 + x*y", ring),
    })
    lines.append(_compare("[t13(x) t23(y), t31(-y) t32(x)] over Q[x,y]", evaluate(word, ring, 3), expected))

    ring = symbolic_ring("poly(Z; x)")
    x = ring.letter("x")
    expected = SquareMatrix.from_entries(ring, 3, {
        (1, 1): parse_polynomial("1 - x^2", ring), (1, 2): parse_polynomial("x^3", ring),
        (2, 1): parse_polynomial("-x^3", ring), (2, 2): parse_polynomial("1 + x^2 + x^4", ring),
    })
    lines.append(_compare("y[2,1](x;x) over Z[x]", evaluate(Gen(Y(2, 1, x, x)), ring, 3), expected))
    return lines


# ============================================================================
# Numerically shadowed identities
# ============================================================================

def identity_pairs(name: str, n: int = 3) -> List[Tuple[str, SquareMatrix, SquareMatrix]]:
    """
    (label, left, right) matrices over the table ring for a named identity.

    These are the identities the finite oracle replays under random
    substitutions.
    """
    ring = _table_ring()
    a, b, c = ring.letter("a"), ring.letter("b"), ring.letter("c")
    pairs = []
    if name in ("y-explicit", "y-inverse-explicit"):
        block = Y_BLOCK if name == "y-explicit" else Y_INVERSE_BLOCK
        for i, j in positions(n):
            y = Gen(Y(i, j, a, b))
            word = y if name == "y-explicit" else Inverse(y)
            pairs.append((f"y[{i},{j}]", evaluate(word, ring, n), y_block_matrix(ring, n, i, j, block)))
    elif name in ("conjugation-table", "lemma9.row-formula"):
        for i, j in positions(n):
            y = Y(i, j, a, b)
            for h, k in positions(n):
                t = T(h, k, c)
                atoms = conjugation_atoms([t], y, SymProd(Atom("A"), Atom("B")), ring, n)
                right = Product((Gen(y),) + tuple(atom.word() for atom in atoms))
                pairs.append((f"^t[{h},{k}] y[{i},{j}]", evaluate(Conjugate(Gen(t), Gen(y)), ring, n),
                              evaluate(right, ring, n)))
    elif name == "commutation-table":
        for i, j, h in _hooks(n):
            y = Gen(Y(i, j, a, b))
            for key in COMMUTATION_TABLE:
                t, factors = displayed_formula(ring, i, j, h, key)
                pairs.append((f"[t[{t.i},{t.j}], y[{i},{j}]]", evaluate(Commutator(Gen(t), y), ring, n),
                              evaluate(gens([f for f, _ in factors]), ring, n)))
    elif name == "steinberg-rules":
        for first in positions(n):
            for second in positions(n):
                s, t = T(*first, c), T(*second, a)
                rule = commutator_rule(s, t, ring)
                if rule is None:
                    continue
                pairs.append((f"[t{first}, t{second}]", evaluate(Commutator(Gen(s), Gen(t)), ring, n),
                              evaluate(gens(rule), ring, n)))
    else:
        raise UsageError(f"unknown identity {name!r}")
    return pairs


SUITES: Dict[str, Callable[[int], List[SuiteLine]]] = {
    "y-explicit": y_explicit_suite,
    "lemma5-table": commutation_table_suite,
    "lemma6-table": centrality_table_suite,
    "steinberg-rules": steinberg_rule_table,
    "identities-sec2": identity_suite,
    "explicit-matrices": explicit_matrix_suite,
}


def run_suite(name: str, n: int) -> List[SuiteLine]:
    """Run one named verification suite at degree n."""
    if name not in SUITES:
        raise UsageError(f"unknown suite {name!r}; expected one of {', '.join(VERIFY_SUITES)}")
    lines = SUITES[name](n)
    failed = sum(not line.passed for line in lines)
    logger.info(f"Suite {name} at n={n}: {len(lines) - failed} passed, {failed} failed")
    return lines
