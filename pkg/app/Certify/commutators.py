"""
Mixed commutator constructions

    z in mixed   z_ij(ab, c) in [E(n, R, A), E(n, R, B)]
    triple       [y_ij(a, b), t_hk(c)] in [E(n, R, A o B), E(n, R, C)]
    quadruple    [y_ij(a, b), y_kl(c, d)] in [E(n, R, A o B), E(n, R, C o D)]

Commutator atoms [x, y] are expanded with

    [x, y1 Y] = [x, y1] . ^y1 [x, Y]
    [x1 X, y] = ^x1 [X, y] . [x1, y]
"""
import logging
from typing import List, Optional, Sequence, Tuple

from app.Certify.builder import CongruenceBuilder
from app.Certify.certificate import (
    Certificate, CommAtom, ConjTransvection, Modulus, WitnessAtom,
)
from app.Certify.elementary import (
    _check_position, certify_transport, conjugation_atoms, hook_index, plan_transport,
)
from app.Group.steinberg import factor_line
from app.Group.words import (
    IDENTITY, Commutator, Gen, Inverse, Product, T, Word, Y, Z, evaluate, flatten, invert_flat,
)
from app.Helper.helper_exceptions import CertificationError, NotSupportedError, UsageError
from app.Helper.helper_pydantic import EngineSettings
from app.Ideal.ideal_expr import FULL_RING, Atom, IdealExpr, SymProd

logger = logging.getLogger(__name__)

Position = Tuple[int, int]


def _prefix(words: Sequence[Word]) -> Word:
    if not words:
        return IDENTITY
    return words[0] if len(words) == 1 else Product(tuple(words))


# ============================================================================
# z-generators
# ============================================================================

def certify_z_in_mixed(i: int, j: int, a, b, c, ring, n: int, variant: str = "ab",
                       settings: Optional[EngineSettings] = None,
                       ideals: Tuple[IdealExpr, IdealExpr] = (Atom("A"), Atom("B"))) -> Certificate:
    """
    z_ij(ab, c) = ^t_ij(c) [t_jh(a), t_hi(b)], a single commutator atom.

    The "ba" variant treats z_ij(ba, c) with the roles of the ideals swapped.
    """
    settings = settings or EngineSettings()
    _check_position(i, j, n)
    h = hook_index(i, j, n)
    first, second = ideals
    if variant == "ab":
        left, right, left_claim, right_claim = a, b, first, second
    elif variant == "ba":
        left, right, left_claim, right_claim = b, a, second, first
    else:
        raise UsageError(f"unknown z variant {variant!r}; expected ab or ba")
    lhs = Gen(Z(i, j, ring.mul(left, right), c))
    builder = CongruenceBuilder(ring, n, lhs, Modulus.mixed(first, second), settings, f"z-in-mixed/{variant}")
    if ring.is_zero(left) or ring.is_zero(right):
        return builder.finish()
    conj = Gen(T(i, j, c))
    atom = CommAtom(
        ConjTransvection(conj, j, h, left, left_claim),
        ConjTransvection(conj, h, i, right, right_claim),
    )
    builder.absorb(0, [atom])
    return builder.finish()


# ============================================================================
# Triple commutators
# ============================================================================

def certify_triple(i: int, j: int, a, b, h: int, k: int, c, ring, n: int,
                   settings: Optional[EngineSettings] = None,
                   ideals: Tuple[IdealExpr, IdealExpr, IdealExpr] = (Atom("A"), Atom("B"), Atom("C"))
                   ) -> Certificate:
    """
    [y_ij(a, b), t_hk(c)] in [E(n, R, A o B), E(n, R, C)].

    Away from the hook {i, j} the commutator is a line matrix. On the hook,
    t_pq(c) = [t_pr(c), t_rq(1)] and

        [y, t] = A U B V U^-1 A^-1 V^-1 B^-1 t_pq(-c),   U = [A^-1, y], V = [B^-1, y]

    where U already lies in E(n, R, (A o B) o C) and what is left is
    ^(t_pq(c) B) [A, V].
    """
    settings = settings or EngineSettings()
    _check_position(i, j, n)
    _check_position(h, k, n)
    first, second, third = ideals
    inner = SymProd(first, second)
    outer = SymProd(inner, third)
    y = Y(i, j, a, b)
    lhs = Commutator(Gen(y), Gen(T(h, k, c)))
    builder = CongruenceBuilder(ring, n, lhs, Modulus.mixed(inner, third), settings, "triple")

    if (h, k) not in ((i, j), (j, i)):
        factors = factor_line(evaluate(lhs, ring, n))
        if factors is None:
            raise CertificationError(f"[y[{i},{j}], t[{h},{k}]] is not a line matrix")
        builder.absorb_all([ConjTransvection(IDENTITY, f.i, f.j, f.c, outer) for f in factors])
        return builder.finish()

    if ring.is_zero(c) or ring.is_zero(a) or ring.is_zero(b):
        builder.absorb_all([])
        return builder.finish()

    p, q = h, k
    r = hook_index(i, j, n)
    one = ring.one()
    first_gen, second_gen = T(p, r, c), T(r, q, one)
    u = factor_line(evaluate(Commutator(Inverse(Gen(first_gen)), Gen(y)), ring, n))
    v = factor_line(evaluate(Commutator(Inverse(Gen(second_gen)), Gen(y)), ring, n))
    if u is None or v is None:
        raise CertificationError(f"hook residues of y[{i},{j}] are not line matrices")
    u_inverse, v_inverse = invert_flat(u, ring), invert_flat(v, ring)
    flat: List[T] = (
        [first_gen] + u + [second_gen] + v + u_inverse
        + [T(p, r, ring.neg(c))] + v_inverse + [T(r, q, ring.neg(one)), T(p, q, ring.neg(c))]
    )
    builder.rewrite([Gen(t) for t in flat], "hook split")

    u_start = 1
    u_inverse_start = 2 + len(u) + len(v)
    dropped = list(range(u_start, u_start + len(u))) + list(range(u_inverse_start, u_inverse_start + len(u)))
    for index in sorted(dropped, reverse=True):
        builder.drop(index, outer)

    outside = Product((Gen(T(p, q, c)), Gen(second_gen)))
    atoms: List[WitnessAtom] = []
    for index, factor in enumerate(v):
        conj = Product((outside,) + tuple(Gen(t) for t in v[:index])) if index else outside
        atoms.append(CommAtom(
            ConjTransvection(conj, p, r, c, third),
            ConjTransvection(conj, factor.i, factor.j, factor.c, inner),
        ))
    builder.absorb_all(atoms)
    return builder.finish()


def certify_centrality(i: int, j: int, a, b, h: int, k: int, c, ring, n: int,
                       settings: Optional[EngineSettings] = None,
                       ideals: Tuple[IdealExpr, IdealExpr] = (Atom("A"), Atom("B")),
                       ambient: Optional[IdealExpr] = None) -> Certificate:
    """[y_ij(a, b), t_hk(c)] in [E(n, R, A o B), E(n)] for arbitrary c: y is central mod E(n, R, A o B)."""
    return certify_triple(i, j, a, b, h, k, c, ring, n, settings,
                          (ideals[0], ideals[1], ambient or FULL_RING))


# ============================================================================
# Quadruple commutators
# ============================================================================

def nearest_disjoint_position(n: int, source: Position, avoid: Position) -> Position:
    """Position with both indices outside `avoid`, fewest transport moves first."""
    candidates = [
        (r, s)
        for r in range(1, n + 1)
        for s in range(1, n + 1)
        if r != s and r not in avoid and s not in avoid
    ]
    if not candidates:
        raise NotSupportedError(f"no position disjoint from {avoid} exists for n={n}")
    return min(candidates, key=lambda target: (len(plan_transport(n, source, target, True)), target))


def _commutator_with_product(atoms: Sequence[ConjTransvection], t: ConjTransvection) -> List[CommAtom]:
    """[z1 ... zr, t] = ... ^(z1 z2)[z3, t] ^z1[z2, t] [z1, t]."""
    result: List[CommAtom] = []
    for index in reversed(range(len(atoms))):
        prefix = _prefix([atom.word() for atom in atoms[:index]])
        result.append(CommAtom(atoms[index], t).conjugated(prefix) if index else CommAtom(atoms[index], t))
    return result


def certify_quadruple(i: int, j: int, a, b, k: int, l: int, c, d, ring, n: int,
                      settings: Optional[EngineSettings] = None,
                      ideals: Tuple[IdealExpr, IdealExpr, IdealExpr, IdealExpr] = (
                          Atom("A"), Atom("B"), Atom("C"), Atom("D"))
                      ) -> Certificate:
    """
    [y_ij(a, b), y_kl(c, d)] in [E(n, R, A o B), E(n, R, C o D)] for n >= 4.

    y_kl(c, d) is transported to a position y' disjoint from {i, j}, so
    y_kl(c, d) = y' t1 ... tm with tk in E(n, R, C o D), and

        [y, y' t1 ... tm] = prod_k ^(y' t1 ... tk-1) [y, tk].

    For tk = ^g t, [y, ^g t] = ^g [y Z, t] with ^(g^-1) y = y Z, and
    [y Z, t] = ^y [Z, t] . [y, t] where [y, t] is a triple commutator.
    """
    settings = settings or EngineSettings()
    _check_position(i, j, n)
    _check_position(k, l, n)
    first, second, third, fourth = ideals
    left_ideal, right_ideal = SymProd(first, second), SymProd(third, fourth)
    y1, y2 = Y(i, j, a, b), Y(k, l, c, d)
    if n == 3:
        if settings.experimental_n3:
            raise NotSupportedError("experimental search for n=3: no position disjoint from "
                                    f"({i},{j}) exists, so y[{k},{l}] cannot be moved out of the way")
        raise NotSupportedError("quadruple commutators for n=3 are an open case (Problem 1); "
                                "use n >= 4 or --experimental-n3")
    lhs = Commutator(Gen(y1), Gen(y2))
    builder = CongruenceBuilder(ring, n, lhs, Modulus.mixed(left_ideal, right_ideal), settings, "quadruple")
    trivial = any(ring.is_zero(x) for x in (a, b, c, d))
    if trivial or not ({i, j} & {k, l}):
        builder.absorb_all([])
        return builder.finish()

    target = nearest_disjoint_position(n, (k, l), (i, j))
    transport = certify_transport(k, l, target[0], target[1], c, ring.one(), d, ring, n,
                                  settings, (third, fourth))
    moved = transport.rhs
    logger.debug(f"quadruple: moved y[{k},{l}] to {target} with {len(transport.atoms)} atoms")

    atoms: List[WitnessAtom] = []
    passed: List[Word] = [moved]
    for tau in transport.atoms:
        t = ConjTransvection(IDENTITY, tau.i, tau.j, tau.arg, right_ideal)
        z_atoms = conjugation_atoms(flatten(Inverse(tau.conj), ring), y1, left_ideal, ring, n)
        inner = [atom.conjugated(Gen(y1)) for atom in _commutator_with_product(z_atoms, t)]
        triple = certify_triple(i, j, a, b, tau.i, tau.j, tau.arg, ring, n, settings,
                                (first, second, right_ideal))
        prefix = Product(tuple(passed) + (tau.conj,))
        atoms.extend(atom.conjugated(prefix) for atom in inner + list(triple.atoms))
        passed.append(tau.word())
    builder.absorb_all(atoms)
    return builder.finish()
