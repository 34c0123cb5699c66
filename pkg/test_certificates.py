from itertools import product

import pytest

from app.Certify.certificate import (
    Certificate, ConjTransvection, Modulus, certificate_to_text, check, parse_certificate,
    read_certificate, write_certificate,
)
from app.Certify.elementary import (
    ADDITIVITY_FORMS, certify_additivity, certify_collapse, certify_comaximal, certify_conjugation,
    certify_transport, comaximal_specialisation, plan_transport,
)
from app.Group.words import IDENTITY, Gen, Inverse, Product, T, Y, evaluate, positions
from app.Helper.helper_exceptions import CapExceededError, ParseError, UsageError
from app.Helper.helper_parsing import parse_word, symbolic_ring
from app.Helper.helper_pydantic import EngineSettings
from app.Ideal.ideal_expr import Atom, SymProd

AB = SymProd(Atom("A"), Atom("B"))


def letters(ring, names):
    return [ring.letter(name) for name in names.split()]


def test_conjugation_by_single_transvections(free_conj):
    a, b, c = letters(free_conj, "a b c")
    for (i, j), (h, k) in product(positions(3), repeat=2):
        cert = certify_conjugation(Gen(T(h, k, c)), i, j, a, b, free_conj, 3)
        result = check(cert)
        assert result.passed, (i, j, h, k, result.detail)
        assert cert.rhs == Gen(Y(i, j, a, b))


@pytest.mark.slow
def test_conjugation_by_words_of_length_two(free_conj):
    a, b, c, d = letters(free_conj, "a b c d")
    for (i, j), first, second in product(positions(3), positions(3), positions(3)):
        x = Product((Gen(T(*first, c)), Gen(T(*second, d))))
        assert check(certify_conjugation(x, i, j, a, b, free_conj, 3)).passed, (i, j, first, second)


def test_conjugation_at_larger_n(free_conj):
    a, b, c, d = letters(free_conj, "a b c d")
    x = parse_word("t[3,1](c) t[2,4](d) t[1,2](c)", free_conj)
    assert check(certify_conjugation(x, 1, 2, a, b, free_conj, 4)).passed


def test_conjugator_length_cap(free_conj):
    a, b, c = letters(free_conj, "a b c")
    x = Product(tuple(Gen(T(1, 3, c)) for _ in range(3)))
    with pytest.raises(CapExceededError):
        certify_conjugation(x, 1, 2, a, b, free_conj, 3, EngineSettings(conjugator_length_cap=2))


def test_additivity_and_inverse_forms():
    ring = symbolic_ring("free(Z; a:A, a2:A, b:B, b2:B)")
    a, a2, b, b2 = letters(ring, "a a2 b b2")
    for form in ADDITIVITY_FORMS:
        for i, j in [(1, 2), (2, 3), (3, 1)]:
            cert = certify_additivity(i, j, a, b, ring, 3, form, a2=a2, b2=b2)
            assert check(cert).passed, (form, i, j)
    first = certify_additivity(1, 2, a, b, ring, 3, "first", a2=a2)
    assert first.lhs == Gen(Y(1, 2, a + a2, b))
    with pytest.raises(UsageError):
        certify_additivity(1, 2, a, b, ring, 3, "first")
    with pytest.raises(UsageError):
        certify_additivity(1, 2, a, b, ring, 3, "third", a2=a2)


def test_transport_plans_need_at_most_three_moves():
    for source, target in product(positions(3), repeat=2):
        if source != target:
            assert 1 <= len(plan_transport(3, source, target, carried=False)) <= 3, (source, target)


def test_transport_examples(free_conj):
    a, b, c = letters(free_conj, "a b c")
    for target in [(1, 3), (2, 1), (3, 2)]:
        cert = certify_transport(1, 2, target[0], target[1], a, c, b, free_conj, 3)
        assert check(cert).passed, target
        assert evaluate(cert.rhs, free_conj, 3) == evaluate(Gen(Y(*target, a, c * b)), free_conj, 3)


@pytest.mark.slow
def test_transport_between_every_pair_of_positions(free_conj):
    a, b, c = letters(free_conj, "a b c")
    for source, target in product(positions(3), repeat=2):
        if source == target:
            continue
        cert = certify_transport(*source, *target, a, c, b, free_conj, 3)
        assert check(cert).passed, (source, target)


def test_collapse_both_sides():
    ring = symbolic_ring("free(Z; a:A, a2:A, b:B, b2:B)")
    a, a2, b, b2 = letters(ring, "a a2 b b2")
    first = certify_collapse(1, 2, a, a2, b, ring, 3, "first")
    second = certify_collapse(1, 2, a, b2, b, ring, 3, "second")
    for cert in (first, second):
        assert check(cert).passed
        assert cert.rhs == IDENTITY
    assert first.lhs == Gen(Y(1, 2, a * a2, b))
    assert second.lhs == Gen(Y(1, 2, a, b2 * b))


def test_comaximal_collapse_and_specialisation():
    ring = symbolic_ring("free(Z; a:A, b:B, p:A, q:B)")
    a, b, p, q = letters(ring, "a b p q")
    for i, j in positions(3):
        cert = certify_comaximal(i, j, a, b, p, q, ring, 3)
        assert check(cert).passed, (i, j)
        assert cert.rhs == IDENTITY
    assert comaximal_specialisation(cert, a, "p", "q")
    assert not comaximal_specialisation(cert, b, "p", "q")


def test_failed_claims_and_evaluations_are_reported(free_conj):
    a, b = letters(free_conj, "a b")
    y = Gen(Y(1, 2, a, b))
    wrong = Certificate(y, IDENTITY, Modulus.elem(AB), (), 3, free_conj)
    result = check(wrong)
    assert not result.passed and "differs" in result.detail

    bad_claim = Certificate(Gen(T(1, 2, a)), IDENTITY, Modulus.elem(AB),
                            (ConjTransvection(IDENTITY, 1, 2, a, AB),), 3, free_conj)
    result = check(bad_claim)
    assert not result.passed and "not in" in result.detail


def test_reversed_certificate(free_conj):
    a, b, c = letters(free_conj, "a b c")
    cert = certify_conjugation(Gen(T(1, 3, c)), 1, 2, a, b, free_conj, 3)
    back = cert.reversed()
    assert back.lhs == cert.rhs and back.rhs == cert.lhs
    assert check(back).passed
    assert check(cert.conjugated(Gen(T(2, 3, c)))).passed


def test_certificate_file_round_trip(free_conj, tmp_path):
    a, b, c = letters(free_conj, "a b c")
    certs = [
        certify_conjugation(Gen(T(3, 1, c)), 1, 2, a, b, free_conj, 3),
        certify_transport(1, 2, 2, 1, a, c, b, free_conj, 3),
        certify_additivity(2, 3, a, b, free_conj, 3, "inverse"),
    ]
    for index, cert in enumerate(certs):
        path = tmp_path / f"cert{index}.txt"
        write_certificate(cert, path)
        again = read_certificate(path)
        assert check(again).passed
        assert len(again.atoms) == len(cert.atoms)
        assert again.n == cert.n and again.modulus == cert.modulus
        assert certificate_to_text(again).splitlines()[0] == certificate_to_text(cert).splitlines()[0]


def test_malformed_certificate_text(free_conj):
    a, b, c = letters(free_conj, "a b c")
    text = certificate_to_text(certify_conjugation(Gen(T(1, 3, c)), 1, 2, a, b, free_conj, 3))
    with pytest.raises(ParseError):
        parse_certificate(text.replace("certificate v1", "certificate v9"))
    with pytest.raises(ParseError):
        parse_certificate(text.replace("modulus ELEM", "modulus OTHER"))
    with pytest.raises(ParseError):
        parse_certificate("certificate v1 n=3 ring=Z/6\n")
    with pytest.raises(ParseError):
        read_certificate("/nonexistent/certificate.txt")


def test_inverse_word_of_a_certificate_side(free_conj):
    a, b = letters(free_conj, "a b")
    cert = certify_additivity(1, 2, a, b, free_conj, 3, "inverse-second")
    assert cert.lhs == Inverse(Gen(Y(1, 2, a, b)))
    assert check(cert).passed
