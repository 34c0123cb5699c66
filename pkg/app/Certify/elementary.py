"""
Congruences of elementary commutators modulo E(n, R, A o B)

All constructions work on y_ij(a, b) = [t_ij(a), t_ji(b)] and produce
certificates with modulus ELEM(A o B):

    conjugation   ^x y_ij(a, b)        = y_ij(a, b) * atoms
    additivity    y_ij(a1 + a2, b)      = y_ij(a2, b) y_ij(a1, b) * atoms
    transport     y_ij(ac, b)           = y_kl(a, cb) * atoms
    collapse      y_ij(a1 a2, b)        = atoms
    comaximal     y_ij(a a' + a b', b)  = atoms
"""
import logging
from collections import deque
from dataclasses import dataclass
from typing import Dict, List, Optional, Sequence, Tuple

from app.Certify.builder import CongruenceBuilder
from app.Certify.certificate import Certificate, ConjTransvection, Modulus
from app.Group.steinberg import factor_line
from app.Group.words import (
    IDENTITY, Conjugate, Gen, Inverse, Product, T, Word, Y, evaluate, flatten, gens,
)
from app.Helper.helper_exceptions import CapExceededError, CertificationError, UsageError
from app.Helper.helper_pydantic import EngineSettings
from app.Ideal.ideal_expr import Atom, IdealExpr, SymProd
from app.Ideal.membership import poly_member
from app.Ring.rings import evaluate_hom

logger = logging.getLogger(__name__)

DEFAULT_IDEALS: Tuple[IdealExpr, IdealExpr] = (Atom("A"), Atom("B"))

Position = Tuple[int, int]


def hook_index(i: int, j: int, n: int) -> int:
    """Smallest index outside {i, j}."""
    if n < 3:
        raise UsageError(f"constructions with a free third index need n >= 3, got {n}")
    return next(r for r in range(1, n + 1) if r not in (i, j))


def _check_position(i: int, j: int, n: int) -> None:
    if not (1 <= i <= n and 1 <= j <= n) or i == j:
        raise UsageError(f"position ({i},{j}) invalid for n={n}")


# ============================================================================
# Conjugation
# ============================================================================

def _expand_hooks(flat: Sequence[T], y: Y, h: int, ring) -> List[T]:
    """Rewrite t_pq(c), {p, q} = {i, j}, as [t_ph(c), t_hq(1)]."""
    one = ring.one()
    expanded = []
    for t in flat:
        if ring.is_zero(t.c):
            continue
        if {t.i, t.j} == {y.i, y.j}:
            p, q = t.i, t.j
            expanded += [T(p, h, t.c), T(h, q, one), T(p, h, ring.neg(t.c)), T(h, q, ring.neg(one))]
        else:
            expanded.append(t)
    return expanded


def conjugation_atoms(flat: Sequence[T], y: Y, claim: IdealExpr, ring, n: int) -> List[ConjTransvection]:
    """
    Atoms with ^x y = y * atoms for x = prod(flat).

    With x = g1 ... gm (no generator on the hook {i, j}) one has
    ^x y = y * r1 * ^g1 r2 * ... * ^(g1...gm-1) rm,   rk = y^-1 gk y gk^-1,
    and every rk is a line matrix.
    """
    if ring.is_zero(y.a) or ring.is_zero(y.b):
        return []
    expanded = _expand_hooks(flat, y, hook_index(y.i, y.j, n), ring)
    y_matrix = evaluate(Gen(y), ring, n)
    y_inverse = evaluate(Inverse(Gen(y)), ring, n)
    atoms: List[ConjTransvection] = []
    for index, g in enumerate(expanded):
        residual = (y_inverse.right_transvection(g.i, g.j, g.c) * y_matrix) \
            .right_transvection(g.i, g.j, ring.neg(g.c))
        factors = factor_line(residual)
        if factors is None:
            raise CertificationError(f"residual of t[{g.i},{g.j}] against y[{y.i},{y.j}] is not a line")
        conj = gens(expanded[:index]) if index else IDENTITY
        atoms.extend(ConjTransvection(conj, f.i, f.j, f.c, claim) for f in factors)
    return atoms


def expand_conjugation(builder: CongruenceBuilder, index: int, claim: IdealExpr) -> None:
    """Replace a piece ^x y by y * atoms."""
    piece = builder.pieces[index]
    if not (isinstance(piece, Conjugate) and isinstance(piece.word, Gen) and isinstance(piece.word.symbol, Y)):
        raise UsageError(f"{builder.label}: piece {index} is not a conjugated y-generator")
    y = piece.word.symbol
    atoms = conjugation_atoms(flatten(piece.conj, builder.ring), y, claim, builder.ring, builder.n)
    builder.settle(index, [piece.word], atoms, "conjugation")


def _transvections_of(word: Word) -> List[T]:
    if isinstance(word, Gen) and isinstance(word.symbol, T):
        return [word.symbol]
    if isinstance(word, Product):
        flat = []
        for item in word.items:
            flat.extend(_transvections_of(item))
        return flat
    raise UsageError("conjugator must be a product of transvections t[i,j](...)")


def certify_conjugation(x: Word, i: int, j: int, a, b, ring, n: int,
                        settings: Optional[EngineSettings] = None,
                        ideals: Tuple[IdealExpr, IdealExpr] = DEFAULT_IDEALS) -> Certificate:
    """^x y_ij(a, b) = y_ij(a, b) mod E(n, R, A o B) for x a product of transvections."""
    settings = settings or EngineSettings()
    _check_position(i, j, n)
    hook_index(i, j, n)
    flat = _transvections_of(x)
    if len(flat) > settings.conjugator_length_cap:
        raise CapExceededError("conjugator length", settings.conjugator_length_cap)
    claim = SymProd(*ideals)
    y = Gen(Y(i, j, a, b))
    builder = CongruenceBuilder(ring, n, Conjugate(x, y), Modulus.elem(claim), settings, "conjugation")
    expand_conjugation(builder, 0, claim)
    return builder.finish()


# ============================================================================
# Additivity and inverses
# ============================================================================

ADDITIVITY_FORMS = ("first", "second", "inverse", "inverse-second")


def certify_additivity(i: int, j: int, a, b, ring, n: int, form: str = "first", a2=None, b2=None,
                       settings: Optional[EngineSettings] = None,
                       ideals: Tuple[IdealExpr, IdealExpr] = DEFAULT_IDEALS) -> Certificate:
    """
    Additivity of y_ij in either argument, and the two inverse forms.

        first           y(a + a2, b)  = y(a2, b) y(a, b)
        second          y(a, b + b2)  = y(a, b) y(a, b2)
        inverse         y(a, b)^-1    = y(-a, b)
        inverse-second  y(a, b)^-1    = y(a, -b)
    """
    settings = settings or EngineSettings()
    _check_position(i, j, n)
    hook_index(i, j, n)
    claim = SymProd(*ideals)
    neg = ring.neg
    if form in ("first", "second") and (a2 if form == "first" else b2) is None:
        raise UsageError(f"additivity form {form!r} needs a second addend")
    if form == "first":
        lhs = Gen(Y(i, j, ring.add(a, a2), b))
        pieces = [Conjugate(Gen(T(i, j, a)), Gen(Y(i, j, a2, b))), Gen(Y(i, j, a, b))]
        expand_at = 0
    elif form == "second":
        lhs = Gen(Y(i, j, a, ring.add(b, b2)))
        pieces = [Gen(Y(i, j, a, b)), Conjugate(Gen(T(j, i, b)), Gen(Y(i, j, a, b2)))]
        expand_at = 1
    elif form == "inverse":
        lhs = Inverse(Gen(Y(i, j, a, b)))
        pieces = [Conjugate(Gen(T(i, j, a)), Gen(Y(i, j, neg(a), b)))]
        expand_at = 0
    elif form == "inverse-second":
        lhs = Inverse(Gen(Y(i, j, a, b)))
        pieces = [Conjugate(Gen(T(j, i, b)), Gen(Y(i, j, a, neg(b))))]
        expand_at = 0
    else:
        raise UsageError(f"unknown additivity form {form!r}; expected one of {', '.join(ADDITIVITY_FORMS)}")
    builder = CongruenceBuilder(ring, n, lhs, Modulus.elem(claim), settings, f"additivity/{form}")
    builder.rewrite(pieces, "split")
    expand_conjugation(builder, expand_at, claim)
    return builder.finish()


# ============================================================================
# Transport
# ============================================================================

@dataclass(frozen=True)
class Move:
    """carry: y_pq(ac, b) -> y_pr(a, cb); second/first: relocate one index with c = 1."""
    kind: str
    source: Position
    target: Position


def _neighbours(position: Position, carried: bool, n: int):
    p, q = position
    others = [r for r in range(1, n + 1) if r not in (p, q)]
    if not carried:
        for r in others:
            yield Move("carry", position, (p, r)), ((p, r), True)
    for r in others:
        yield Move("second", position, (p, r)), ((p, r), carried)
    for r in others:
        yield Move("first", position, (r, q)), ((r, q), carried)


def plan_transport(n: int, source: Position, target: Position, carried: bool) -> List[Move]:
    """Shortest move sequence from (source, carried) to (target, carried=True)."""
    hook_index(*source, n)
    _check_position(*source, n)
    _check_position(*target, n)
    start, goal = (source, carried), (target, True)
    parents: Dict[Tuple[Position, bool], Optional[Tuple[Tuple[Position, bool], Move]]] = {start: None}
    queue = deque([start])
    while queue:
        state = queue.popleft()
        if state == goal:
            break
        for move, following in _neighbours(state[0], state[1], n):
            if following not in parents:
                parents[following] = (state, move)
                queue.append(following)
    moves: List[Move] = []
    state = goal
    while parents[state] is not None:
        state, move = parents[state]
        moves.append(move)
    return list(reversed(moves))


def carry_step(builder: CongruenceBuilder, index: int, p: int, q: int, r: int, a, c, b,
               claim: IdealExpr) -> Y:
    """
    y_pq(ac, b) = ^t_rq(-c) y_pr(a, cb) up to the two factors t_qr(+-ba).

    y_pq(ac, b) = t_pq(ac) t_qr(ba) t_pr(a) t_rq(-c) t_rp(cb) t_pr(-a) t_qr(-ba) t_rp(-cb) t_rq(c)
    """
    ring = builder.ring
    neg = ring.neg
    ac, ba, cb = ring.mul(a, c), ring.mul(b, a), ring.mul(c, b)
    flat = [
        T(p, q, ac), T(q, r, ba), T(p, r, a), T(r, q, neg(c)), T(r, p, cb),
        T(p, r, neg(a)), T(q, r, neg(ba)), T(r, p, neg(cb)), T(r, q, c),
    ]
    builder.rewrite_piece(index, [Gen(t) for t in flat], "carry/expand")
    builder.drop(index + 6, claim)
    builder.drop(index + 1, claim)
    moved = Y(p, r, a, cb)
    builder.rewrite_range(index, index + 7, [Conjugate(Gen(T(r, q, neg(c))), Gen(moved))], "carry/regroup")
    expand_conjugation(builder, index, claim)
    return moved


def relocation_word(old: int, new: int, ring) -> Word:
    """t_on(-1) t_no(1) t_on(-1): conjugation by it renames index old to new."""
    one = ring.one()
    return gens([T(old, new, ring.neg(one)), T(new, old, one), T(old, new, ring.neg(one))])


def relocate_step(builder: CongruenceBuilder, index: int, y: Y, move: Move, claim: IdealExpr) -> Y:
    """y at move.source = ^(M^-1) y at move.target."""
    if move.kind == "second":
        old, new = y.j, move.target[1]
    else:
        old, new = y.i, move.target[0]
    moved = Y(move.target[0], move.target[1], y.a, y.b)
    word = relocation_word(old, new, builder.ring)
    builder.rewrite_piece(index, [Conjugate(Inverse(word), Gen(moved))], f"move/{move.kind}")
    expand_conjugation(builder, index, claim)
    return moved


def transport_on(builder: CongruenceBuilder, index: int, source: Position, target: Position,
                 a, c, b, claim: IdealExpr) -> Tuple[Y, List[Move]]:
    """Run a transport plan on the piece y_source(ac, b) at `index`."""
    ring = builder.ring
    carried = ring.is_one(c)
    moves = plan_transport(builder.n, source, target, carried)
    current = Y(source[0], source[1], ring.mul(a, c), b)
    for move in moves:
        if move.kind == "carry":
            current = carry_step(builder, index, current.i, current.j, move.target[1], a, c, current.b, claim)
        else:
            current = relocate_step(builder, index, current, move, claim)
    logger.debug(f"Transport {source} -> {target} used {len(moves)} moves")
    return current, moves


def certify_transport(i: int, j: int, k: int, l: int, a, c, b, ring, n: int,
                      settings: Optional[EngineSettings] = None,
                      ideals: Tuple[IdealExpr, IdealExpr] = DEFAULT_IDEALS) -> Certificate:
    """y_ij(ac, b) = y_kl(a, cb) mod E(n, R, A o B)."""
    settings = settings or EngineSettings()
    claim = SymProd(*ideals)
    lhs = Gen(Y(i, j, ring.mul(a, c), b))
    builder = CongruenceBuilder(ring, n, lhs, Modulus.elem(claim), settings, "transport")
    transport_on(builder, 0, (i, j), (k, l), a, c, b, claim)
    return builder.finish()


# ============================================================================
# Collapse
# ============================================================================

def degenerate_atoms(y: Y, claim: IdealExpr, ring) -> List[ConjTransvection]:
    """
    y_pq(x, w) with w (or x) already in the claim:

        y_pq(x, w) = ^t_pq(x) t_qp(w) * t_qp(-w)
        y_pq(x, w) = t_pq(x) * ^t_qp(w) t_pq(-x)
    """
    p, q, x, w = y.i, y.j, y.a, y.b
    if ring.is_zero(x) or ring.is_zero(w):
        return []
    if poly_member(w, claim):
        return [ConjTransvection(Gen(T(p, q, x)), q, p, w, claim),
                ConjTransvection(IDENTITY, q, p, ring.neg(w), claim)]
    if poly_member(x, claim):
        return [ConjTransvection(IDENTITY, p, q, x, claim),
                ConjTransvection(Gen(T(q, p, w)), p, q, ring.neg(x), claim)]
    raise CertificationError(f"y[{p},{q}] has no argument in {claim.to_text()}")


COLLAPSE_SIDES = ("first", "second")


def certify_collapse(i: int, j: int, u, v, w, ring, n: int, side: str = "first",
                     settings: Optional[EngineSettings] = None,
                     ideals: Tuple[IdealExpr, IdealExpr] = DEFAULT_IDEALS) -> Certificate:
    """
    y_ij(uv, w) = e (side first) or y_ij(u, vw) = e (side second) mod E(n, R, A o B).

    The product factor is carried to the other argument by one transport move,
    after which one argument lies in A o B.
    """
    settings = settings or EngineSettings()
    _check_position(i, j, n)
    h = hook_index(i, j, n)
    claim = SymProd(*ideals)
    if side == "first":
        lhs = Y(i, j, ring.mul(u, v), w)
    elif side == "second":
        lhs = Y(i, j, u, ring.mul(v, w))
    else:
        raise UsageError(f"unknown collapse side {side!r}; expected first or second")
    builder = CongruenceBuilder(ring, n, Gen(lhs), Modulus.elem(claim), settings, f"collapse/{side}")
    if ring.is_zero(lhs.a) or ring.is_zero(lhs.b):
        return builder.finish()
    if side == "first":
        moved = carry_step(builder, 0, i, j, h, u, v, w, claim)
    else:
        reverse = CongruenceBuilder(ring, n, Gen(Y(i, h, ring.mul(u, v), w)), Modulus.elem(claim),
                                    settings, "collapse/reverse")
        carry_step(reverse, 0, i, h, j, u, v, w, claim)
        carried = reverse.finish().reversed()
        builder.apply_certificate(0, carried)
        moved = carried.rhs.symbol
    builder.absorb(0, degenerate_atoms(moved, claim, ring))
    return builder.finish()


# ============================================================================
# Comaximal ideals
# ============================================================================

def certify_comaximal(i: int, j: int, a, b, a_prime, b_prime, ring, n: int,
                      settings: Optional[EngineSettings] = None,
                      ideals: Tuple[IdealExpr, IdealExpr] = DEFAULT_IDEALS) -> Certificate:
    """
    y_ij(a a' + a b', b) = e mod E(n, R, A o B) for a' in A, b' in B.

    With a' + b' = 1 the left side is y_ij(a, b); see `comaximal_specialisation`.
    """
    settings = settings or EngineSettings()
    claim = SymProd(*ideals)
    first, second = ring.mul(a, a_prime), ring.mul(a, b_prime)
    lhs = Gen(Y(i, j, ring.add(first, second), b))
    builder = CongruenceBuilder(ring, n, lhs, Modulus.elem(claim), settings, "comaximal")
    if ring.is_zero(a) or ring.is_zero(b):
        return builder.finish()
    split = certify_additivity(i, j, first, b, ring, n, form="first", a2=second,
                               settings=settings, ideals=ideals)
    builder.apply_certificate(0, split)
    while builder.pieces:
        y = builder.pieces[0].symbol
        if y.a == first and not poly_member(first, claim):
            builder.apply_certificate(0, certify_collapse(i, j, a, a_prime, b, ring, n, "first",
                                                          settings, ideals))
        else:
            builder.absorb(0, degenerate_atoms(y, claim, ring))
    return builder.finish()


def comaximal_specialisation(cert: Certificate, a, a_prime_name: str, b_prime_name: str) -> bool:
    """True iff substituting b' -> 1 - a' turns the lhs argument into a."""
    ring = cert.ring
    lhs = cert.lhs
    if not (isinstance(lhs, Gen) and isinstance(lhs.symbol, Y)):
        return False
    assignment = {letter.name: ring.letter(letter.name) for letter in ring.letters}
    assignment[b_prime_name] = ring.sub(ring.one(), ring.letter(a_prime_name))
    return evaluate_hom(lhs.symbol.a, assignment, ring) == a
