import pytest
from hypothesis import given, settings as hsettings, strategies as st

from app.Certify.formula_tables import Y_BLOCK, Y_INVERSE_BLOCK
from app.Group.bracket_tree import classify, composite_ideal, cut_point, internal_nodes, leaf_count
from app.Group.matrix import SquareMatrix, congruence_level
from app.Group.steinberg import commutator_rule, derived_rule, factor_line, steinberg_conjugate, steinberg_rule_table
from app.Group.words import (
    IDENTITY, Commutator, Conjugate, Gen, Inverse, Product, T, Y, Z, evaluate, flatten,
    mixed_generators, positions, simplify, word_to_text,
)
from app.Helper.helper_exceptions import ParseError, UsageError
from app.Helper.helper_parsing import parse_bracket_tree, parse_polynomial, parse_word, symbolic_ring
from app.Ideal.ideal_expr import FULL_RING, Atom, SymProd

RING = symbolic_ring("free(Z; a:A, b:B, c:C)")
A, B, C = (RING.letter(name) for name in "abc")


def block_of(g: SquareMatrix, i: int, j: int):
    return {"ii": g.entry(i, i), "ij": g.entry(i, j), "ji": g.entry(j, i), "jj": g.entry(j, j)}


@pytest.mark.parametrize("n", [3, 4, 5])
def test_elementary_commutator_has_the_explicit_block(n):
    expected = {key: parse_polynomial(text, RING) for key, text in Y_BLOCK.items()}
    expected_inverse = {key: parse_polynomial(text, RING) for key, text in Y_INVERSE_BLOCK.items()}
    for i, j in positions(n):
        y = Gen(Y(i, j, A, B))
        g, g_inverse = evaluate(y, RING, n), evaluate(Inverse(y), RING, n)
        assert block_of(g, i, j) == expected
        assert block_of(g_inverse, i, j) == expected_inverse
        assert (g * g_inverse).is_identity()
        others = [k for k in range(1, n + 1) if k not in (i, j)]
        for k in others:
            assert g.entry(k, k) == RING.one()
            assert all(RING.is_zero(g.entry(k, m)) for m in range(1, n + 1) if m != k)


def test_transvection_products():
    g = evaluate(Product((Gen(T(1, 2, A)), Gen(T(1, 2, B)))), RING, 3)
    assert g == evaluate(Gen(T(1, 2, A + B)), RING, 3)
    assert evaluate(Commutator(Gen(T(1, 2, A)), Gen(T(2, 3, B))), RING, 3) == evaluate(Gen(T(1, 3, A * B)), RING, 3)
    assert evaluate(Gen(Z(1, 2, A, C)), RING, 3) == evaluate(Conjugate(Gen(T(1, 2, C)), Gen(T(2, 1, A))), RING, 3)
    assert evaluate(Gen(Z(1, 2, A * B, RING.zero())), RING, 3) == evaluate(Gen(T(2, 1, A * B)), RING, 3)


transvections = st.builds(
    lambda pos, coeffs: T(pos[0], pos[1], RING.from_terms({(idx,): coeff for idx, coeff in coeffs})),
    st.sampled_from(positions(3)),
    st.lists(st.tuples(st.integers(0, 2), st.integers(-2, 2)), max_size=2),
)


@hsettings(max_examples=40, deadline=None)
@given(st.lists(transvections, max_size=4))
def test_structural_inverse_is_the_matrix_inverse(symbols):
    word = Product(tuple(Gen(t) for t in symbols))
    g = evaluate(word, RING, 3)
    assert (g * evaluate(Inverse(word), RING, 3)).is_identity()
    assert (evaluate(Inverse(word), RING, 3) * g).is_identity()


def test_invalid_indices():
    with pytest.raises(UsageError):
        evaluate(Gen(T(1, 4, A)), RING, 3)
    with pytest.raises(UsageError):
        evaluate(Gen(T(2, 2, A)), RING, 3)
    with pytest.raises(ParseError):
        parse_word("t[0,1](a)", RING)


def test_word_grammar_round_trip():
    texts = [
        "t[1,2](a) ~t[2,3](b)",
        "^{t[1,3](c)} y[1,2](a;b)",
        "[t[1,2](a), t[2,1](b), t[1,3](c)]",
        "z[2,1](a*b;c) e",
    ]
    for text in texts:
        word = parse_word(text, RING)
        again = parse_word(word_to_text(word, RING), RING)
        assert evaluate(again, RING, 3) == evaluate(word, RING, 3), text


def test_simplify_drops_trivial_generators():
    word = Product((Gen(T(1, 2, RING.zero())), Conjugate(Gen(T(1, 3, A)), Gen(Y(1, 2, RING.zero(), B)))))
    assert simplify(word, RING) == IDENTITY
    assert len(flatten(Gen(Y(1, 2, A, B)), RING)) == 4


def test_steinberg_rules_hold():
    for n in (3, 4):
        lines = steinberg_rule_table(n)
        assert lines and all(line.passed for line in lines)
    s, t = T(1, 2, C), T(2, 1, A)
    assert steinberg_conjugate(t, s, RING) == Gen(Z(1, 2, A, C))


@pytest.mark.parametrize("n", [3, 4])
def test_derived_rules_match_the_closed_forms(n):
    for (i, j), (k, l) in [(p, q) for p in positions(n) for q in positions(n)]:
        rule = commutator_rule(T(i, j, C), T(k, l, A), RING)
        if (k, l) == (j, i):
            assert rule is None
        elif k == j:
            assert rule == [T(i, l, C * A)], (i, j, k, l)
        elif l == i:
            assert rule == [T(k, j, -(A * C))], (i, j, k, l)
        else:
            assert rule == [], (i, j, k, l)
    assert derived_rule((1, 2), (2, 3)) is derived_rule((1, 2), (2, 3))


def test_line_factorisation():
    column = Product((Gen(T(1, 3, A)), Gen(T(2, 3, B))))
    assert factor_line(evaluate(column, RING, 3)) == [T(1, 3, A), T(2, 3, B)]
    row = Product((Gen(T(2, 1, C)), Gen(T(2, 3, A))))
    assert factor_line(evaluate(row, RING, 3)) == [T(2, 1, C), T(2, 3, A)]
    assert factor_line(SquareMatrix.identity(RING, 3)) == []
    assert factor_line(evaluate(Gen(Y(1, 2, A, B)), RING, 3)) is None


def test_mixed_generators_lie_in_the_congruence_subgroup():
    ab = SymProd(Atom("A"), Atom("B"))
    word = Product(tuple(mixed_generators(3, A, B, C)))
    assert congruence_level(evaluate(word, RING, 3), ab)
    assert not congruence_level(evaluate(Gen(T(1, 2, A)), RING, 3), ab)
    assert congruence_level(evaluate(Gen(T(1, 2, A)), RING, 3), Atom("A"))


def test_bracket_trees():
    tree = parse_bracket_tree("[[[A,B],C],[D,E]]")
    assert leaf_count(tree) == 5
    assert cut_point(tree) == 3
    assert tree.to_text() == "[[[A,B],C],[D,E]]"
    assert [classify(node) for node in internal_nodes(tree)] == ["base", "s=m-1", "base", "interior"]
    assert composite_ideal(parse_bracket_tree("[A,[B,C]]")) == SymProd(Atom("A"), SymProd(Atom("B"), Atom("C")))
    assert composite_ideal(parse_bracket_tree("[R,A]")) == SymProd(FULL_RING, Atom("A"))
    assert parse_bracket_tree("[A,B,C]") == parse_bracket_tree("[[A,B],C]")
    with pytest.raises(ParseError):
        parse_bracket_tree("[A,b]")
