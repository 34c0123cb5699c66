from itertools import product

import pytest

from app.Certify.commutators import certify_centrality, certify_quadruple, certify_triple, certify_z_in_mixed
from app.Certify.elementary import (
    ADDITIVITY_FORMS, certify_additivity, certify_collapse, certify_comaximal, certify_conjugation, certify_transport,
)
from app.Certify.reduction import plan_reduction
from app.Group.words import Gen, Product, T, evaluate, positions
from app.Helper.helper_constant import SHADOW_RINGS
from app.Helper.helper_exceptions import CapExceededError, UsageError
from app.Helper.helper_parsing import parse_bracket_tree, symbolic_ring
from app.Ideal.ideal_expr import Atom, SymProd
from app.Oracle.closure import (
    centrality_check, closure, elementary_generators, fits_int64, mixed_commutator_generators, mixed_group_generators,
    relative_generators,
)
from app.Oracle.finite_ring import FiniteRing, parse_divisors
from app.Oracle.shadow import SHADOW_IDENTITIES, comaximal_shadow, numeric_shadow, shadow_certificate

AB = SymProd(Atom("A"), Atom("B"))


def test_small_closures(z4):
    sl2 = closure(elementary_generators(FiniteRing(symbolic_ring("Z/2")), 2))
    assert sl2.size == 6
    assert not sl2.is_abelian()

    level_two = closure(elementary_generators(z4, 3, "A"))
    assert len(level_two) == 64
    assert level_two.is_abelian()

    assert mixed_group_generators(z4, 3, "A", "B") == []
    trivial = closure([], z4.ring, 3)
    assert trivial.size == 1


def test_closure_cap(z4):
    with pytest.raises(CapExceededError):
        closure(elementary_generators(z4, 3, "A"), cap=10)


def test_large_moduli_close_with_exact_integers():
    assert fits_int64(8, 3) and not fits_int64(2 ** 40, 3)
    ring = symbolic_ring(f"Z/{2 ** 40}")
    half = evaluate(Gen(T(1, 2, ring.from_int(2 ** 39))), ring, 3)
    group = closure([half])
    assert group.size == 2
    big = evaluate(Gen(T(1, 3, ring.from_int(2 ** 40 - 1))), ring, 3)
    assert not group.contains(big)
    assert group.inverse(half) == half


def test_empty_closure_needs_ring_and_degree():
    with pytest.raises(UsageError):
        closure([])


def test_mixed_group_is_central_modulo_the_relative_group(z8):
    mixed = closure(mixed_group_generators(z8, 3, "A", "B"))
    values = [x for x in range(8) if z8.ideal_contains(AB, x)]
    assert values == [0, 4]
    relative = closure(relative_generators(z8, 3, values))
    assert all(relative.contains(g) for g in mixed.elements())
    result = centrality_check(mixed, elementary_generators(z8, 3), relative)
    assert result.central
    assert result.checked_pairs == len(mixed.generators) * len(elementary_generators(z8, 3))



def test_centrality_fails_against_the_trivial_group(z4):
    trivial = closure([], z4.ring, 3)
    ambient = elementary_generators(z4, 3)
    unitriangular = closure([evaluate(Gen(T(1, 2, 1)), z4.ring, 3), evaluate(Gen(T(2, 3, 1)), z4.ring, 3)])
    assert unitriangular.size == 64 and not unitriangular.is_abelian()
    result = centrality_check(unitriangular, ambient, trivial)
    assert not result.central
    assert result.first_failure and result.checked_pairs >= 1

    level_two = closure(elementary_generators(z4, 3, "A"))
    mixed = closure(mixed_commutator_generators(level_two, level_two), z4.ring, 3)
    assert mixed.size == 1
    assert centrality_check(mixed, ambient, trivial).central


def test_closure_sizes():
    assert closure(elementary_generators(FiniteRing(symbolic_ring("Z/2")), 3)).size == 168
    assert closure(elementary_generators(FiniteRing(symbolic_ring("Z/3")), 2)).size == 24


@pytest.mark.slow
def test_full_elementary_group_over_z4(z4):
    ambient = elementary_generators(z4, 3)
    full = closure(ambient)
    assert full.size == 43008
    assert not centrality_check(full, ambient, closure([], z4.ring, 3)).central


def test_bezout_pairs(z6, z4):
    p, q = z6.bezout_pair("A", "B")
    assert (p, q) == (4, 3)
    with pytest.raises(UsageError):
        z4.bezout_pair("A", "B")


def test_ideal_images():
    assert parse_divisors("A=2, B=3") == {"A": 2, "B": 3}
    with pytest.raises(UsageError):
        parse_divisors("A=two")
    z12 = FiniteRing(symbolic_ring("Z/12"), {"A": 2, "B": 3})
    assert z12.ideal_elements("A") == [0, 2, 4, 6, 8, 10]
    assert z12.ideal_contains(AB, 6) and not z12.ideal_contains(AB, 3)
    assert z12.ideal_elements("R") == list(range(12))

    truncated = FiniteRing(symbolic_ring("trunc(F2; a:A; 1)"))
    a = truncated.ring.letter("a")
    elements = truncated.ideal_elements("A")
    assert len(elements) == 2
    assert a in elements and truncated.ring.zero() in elements
    with pytest.raises(UsageError):
        FiniteRing(symbolic_ring("free(Z; a:A)"))
    with pytest.raises(UsageError):
        FiniteRing(truncated.ring, {"A": 2})


@pytest.mark.parametrize("name", SHADOW_IDENTITIES)
def test_identities_survive_numeric_substitution(name, z6, z8):
    for finite in (z6, z8):
        result = numeric_shadow(name, finite, trials=5, seed=7)
        assert result.passed, result.first_failure
        assert result.trials == 5 and result.seed == 7


def test_identity_shadow_over_a_truncated_algebra():
    finite = FiniteRing(symbolic_ring("trunc(F2; a:A, b:B, c:C; 2)"))
    assert numeric_shadow("y-explicit", finite, trials=3, seed=1).passed


def test_unknown_identity(z6):
    with pytest.raises(UsageError):
        numeric_shadow("no-such-identity", z6, trials=1)


def test_certificate_shadow(z6, free_conj):
    a, b, c = (free_conj.letter(name) for name in "abc")
    cert = certify_conjugation(Gen(T(1, 3, c)), 1, 2, a, b, free_conj, 3)
    result = shadow_certificate(cert, z6, trials=10, seed=3)
    assert result.passed, result.first_failure
    again = shadow_certificate(cert, z6, trials=10, seed=3)
    assert again == result


def test_comaximal_shadow(z6):
    lines = comaximal_shadow(z6, trials=10, seed=0)
    assert [line.passed for line in lines] == [True, True, True]
    assert lines[0].detail == "4 + 3 = 1 with p in A, q in B"
    assert lines[2].name == "y[1,2](2;3) in GL(3, R, A o B)"


def _letters(ring, names):
    return [ring.letter(name) for name in names.split()]


def constructed_certificates():
    """One certificate of every construction, over every position at n = 3."""
    certs = []
    conj = symbolic_ring("free(Z; a:A, b:B, c:R, d:R)")
    a, b, c, d = _letters(conj, "a b c d")
    for (i, j), (h, k) in product(positions(3), repeat=2):
        certs.append(certify_conjugation(Gen(T(h, k, c)), i, j, a, b, conj, 3))
    certs.append(certify_conjugation(Product((Gen(T(2, 3, c)), Gen(T(3, 1, d)))), 1, 2, a, b, conj, 3))
    for source, target in product(positions(3), repeat=2):
        if source != target:
            certs.append(certify_transport(*source, *target, a, c, b, conj, 3))

    pair = symbolic_ring("free(Z; a:A, a2:A, b:B, b2:B)")
    a, a2, b, b2 = _letters(pair, "a a2 b b2")
    for form, (i, j) in product(ADDITIVITY_FORMS, positions(3)):
        certs.append(certify_additivity(i, j, a, b, pair, 3, form, a2=a2, b2=b2))
    certs.append(certify_collapse(1, 2, a, a2, b, pair, 3, "first"))
    certs.append(certify_collapse(2, 3, a, b2, b, pair, 3, "second"))

    comaximal = symbolic_ring("free(Z; a:A, b:B, p:A, q:B)")
    a, b, p, q = _letters(comaximal, "a b p q")
    certs.extend(certify_comaximal(i, j, a, b, p, q, comaximal, 3) for i, j in positions(3))

    triple = symbolic_ring("free(Z; a:A, b:B, c:C, r:R)")
    a, b, c, r = _letters(triple, "a b c r")
    for (i, j), (h, k) in product([(1, 2), (3, 1)], positions(3)):
        certs.append(certify_triple(i, j, a, b, h, k, c, triple, 3))
        certs.append(certify_centrality(i, j, a, b, h, k, r, triple, 3))
    for (i, j), variant in product(positions(3), ("ab", "ba")):
        certs.append(certify_z_in_mixed(i, j, a, b, c, triple, 3, variant))

    for step in plan_reduction(parse_bracket_tree("[A,[B,C]]"), 3):
        certs.extend(cert for _, cert in step.certificates)
    return certs


def _shadow_rings():
    return [FiniteRing(symbolic_ring(text), divisors) for text, divisors in SHADOW_RINGS.items()]


def test_every_construction_survives_its_numeric_shadow():
    certs = constructed_certificates()
    assert len(certs) > 100
    for finite in _shadow_rings():
        for index, cert in enumerate(certs):
            result = shadow_certificate(cert, finite, trials=3, seed=index)
            assert result.passed, (finite.describe(), index, result.first_failure)


@pytest.mark.slow
def test_quadruple_certificates_survive_their_numeric_shadow():
    ring = symbolic_ring("free(Z; a:A, b:B, c:C, d:D)")
    a, b, c, d = _letters(ring, "a b c d")
    certs = [certify_quadruple(1, 2, a, b, k, l, c, d, ring, 4) for k, l in positions(4)]
    certs += [cert for step in plan_reduction(parse_bracket_tree("[[A,B],[C,D]]"), 4)
              for _, cert in step.certificates]
    for finite in _shadow_rings():
        for index, cert in enumerate(certs):
            assert shadow_certificate(cert, finite, trials=3, seed=index).passed, (finite.describe(), index)
