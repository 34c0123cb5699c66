import pytest
from hypothesis import given, settings as hsettings, strategies as st

from app.Helper.helper_exceptions import ParseError, UsageError
from app.Helper.helper_parsing import parse_polynomial, parse_ring_spec, symbolic_ring
from app.Helper.helper_constant import RingKind
from app.Ring.rings import build_ring, evaluate_hom

FREE = symbolic_ring("free(Z; a:A, b:B, c:C)")
Z7 = symbolic_ring("Z/7")

monomials = st.lists(st.integers(min_value=0, max_value=2), max_size=3).map(tuple)
polynomials = st.dictionaries(monomials, st.integers(min_value=-4, max_value=4), max_size=4).map(FREE.from_terms)


@hsettings(max_examples=60, deadline=None)
@given(polynomials, polynomials, polynomials)
def test_free_algebra_ring_axioms(p, q, r):
    assert (p * q) * r == p * (q * r)
    assert p * (q + r) == p * q + p * r
    assert (p + q) * r == p * r + q * r
    assert p + (-p) == FREE.zero()
    assert p * FREE.one() == p == FREE.one() * p


@hsettings(max_examples=60, deadline=None)
@given(polynomials, polynomials, st.tuples(*[st.integers(min_value=0, max_value=6)] * 3))
def test_substitution_is_a_ring_homomorphism(p, q, values):
    assignment = dict(zip("abc", values))
    image = lambda x: evaluate_hom(x, assignment, Z7)
    assert image(p * q) == Z7.mul(image(p), image(q))
    assert image(p + q) == Z7.add(image(p), image(q))
    assert image(FREE.one()) == 1


def test_free_algebra_is_noncommutative():
    a, b = FREE.letter("a"), FREE.letter("b")
    assert a * b != b * a
    assert (a * b - b * a).to_text() == "a*b - b*a"


def test_polynomial_text_splits_undeclared_names_into_letters():
    ring = FREE
    a, b = ring.letter("a"), ring.letter("b")
    assert parse_polynomial("abab", ring) == a * b * a * b
    assert parse_polynomial("1 + a b + a*b*a*b", ring) == 1 + a * b + a * b * a * b
    assert parse_polynomial("(a + b)^2", ring) == a * a + a * b + b * a + b * b
    assert parse_polynomial("-b a b", ring) == -(b * a * b)


def test_declared_multi_character_letters_take_precedence():
    ring = symbolic_ring("free(Z; a:A, a2:A, b:B)")
    assert parse_polynomial("a2", ring) == ring.letter("a2")
    assert parse_polynomial("a2 b", ring) == ring.letter("a2") * ring.letter("b")


def test_parse_errors():
    cases = [
        ("free(Z; a:A", "unterminated ring spec"),
        ("Z/1", "modulus below 2"),
        ("trunc(F4; a:A; 2)", "non-prime truncation field"),
    ]
    for text, name in cases:
        with pytest.raises(ParseError):
            symbolic_ring(text)
    with pytest.raises(ParseError):
        parse_polynomial("a + x", FREE)


def test_ring_spec_kinds():
    assert parse_ring_spec("Z/6").kind is RingKind.MODULAR
    assert parse_ring_spec("poly(Q; x, y)").kind is RingKind.POLY_Q
    assert parse_ring_spec("poly(Z; x)").kind is RingKind.POLY_Z
    spec = parse_ring_spec("trunc(F2; a:A, b:B; 2)")
    assert spec.kind is RingKind.TRUNCATED and spec.degree == 2 and spec.modulus == 2
    assert build_ring(spec) is build_ring(parse_ring_spec("trunc(F2; a:A, b:B; 2)"))


def test_truncated_algebra_drops_high_degree_and_reduces_coefficients():
    ring = symbolic_ring("trunc(F3; a:A, b:B; 2)")
    a, b = ring.letter("a"), ring.letter("b")
    assert ring.is_zero(a * b * a)
    assert 3 * a == ring.zero()
    assert len(ring.basis()) == 1 + 2 + 4
    assert ring.element_count == 3 ** 7


def test_truncated_algebra_enumerates_every_element():
    ring = symbolic_ring("trunc(F2; a:A; 1)")
    elements = list(ring.elements())
    assert len(elements) == ring.element_count == 4
    assert len({ring.encode(x) for x in elements}) == 4


def test_modular_and_commutative_backends():
    z6 = symbolic_ring("Z/6")
    assert z6.mul(2, 3) == 0
    assert z6.neg(1) == 5
    poly = symbolic_ring("poly(Q; x, y)")
    x, y = poly.letter("x"), poly.letter("y")
    assert poly.mul(x, y) == poly.mul(y, x)
    assert poly.is_zero(poly.sub(poly.mul(x, y), poly.mul(y, x)))


def test_unassigned_letter_is_a_usage_error():
    with pytest.raises(UsageError):
        evaluate_hom(FREE.letter("c"), {"a": 1, "b": 2}, Z7)
