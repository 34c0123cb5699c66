from itertools import product

import pytest

from app.Certify.certificate import check
from app.Certify.commutators import (
    certify_centrality, certify_quadruple, certify_triple, certify_z_in_mixed, nearest_disjoint_position,
)
from app.Certify.reduction import plan_reduction, reduce_bracket_tree
from app.Group.words import IDENTITY, positions
from app.Helper.helper_constant import ModulusKind
from app.Helper.helper_exceptions import CapExceededError, NotSupportedError, UsageError
from app.Helper.helper_parsing import parse_bracket_tree
from app.Helper.helper_pydantic import EngineSettings


def test_z_generators_lie_in_the_mixed_group(free_abc):
    a, b, c = (free_abc.letter(name) for name in "abc")
    for (i, j), variant in product(positions(3), ("ab", "ba")):
        cert = certify_z_in_mixed(i, j, a, b, c, free_abc, 3, variant)
        result = check(cert)
        assert result.passed, (i, j, variant, result.detail)
        assert cert.modulus.kind is ModulusKind.MIXED
        assert len(cert.atoms) == 1 and cert.rhs == IDENTITY
    with pytest.raises(UsageError):
        certify_z_in_mixed(1, 2, a, b, c, free_abc, 3, "abc")


def test_triple_commutators_at_one_position(free_abc):
    a, b, c = (free_abc.letter(name) for name in "abc")
    for h, k in positions(3):
        cert = certify_triple(1, 2, a, b, h, k, c, free_abc, 3)
        result = check(cert)
        assert result.passed, (h, k, result.detail)
        assert cert.rhs == IDENTITY


@pytest.mark.slow
@pytest.mark.parametrize("n", [3, 4])
def test_triple_commutators_everywhere(free_abc, n):
    a, b, c = (free_abc.letter(name) for name in "abc")
    for (i, j), (h, k) in product(positions(n), repeat=2):
        assert check(certify_triple(i, j, a, b, h, k, c, free_abc, n)).passed, (i, j, h, k)


def test_centrality_modulo_the_relative_group(free_abcr):
    a, b, r = (free_abcr.letter(name) for name in "abr")
    for h, k in [(1, 2), (2, 1), (1, 3), (3, 2)]:
        cert = certify_centrality(1, 2, a, b, h, k, r, free_abcr, 3)
        assert check(cert).passed, (h, k)


def test_quadruple_with_disjoint_positions_is_trivial(free_abcd):
    a, b, c, d = (free_abcd.letter(name) for name in "abcd")
    cert = certify_quadruple(1, 2, a, b, 3, 4, c, d, free_abcd, 4)
    assert check(cert).passed
    assert cert.atoms == () and cert.rhs == IDENTITY


def test_quadruple_at_n3_is_not_supported(free_abcd):
    a, b, c, d = (free_abcd.letter(name) for name in "abcd")
    with pytest.raises(NotSupportedError, match="Problem 1"):
        certify_quadruple(1, 2, a, b, 2, 3, c, d, free_abcd, 3)
    with pytest.raises(NotSupportedError):
        certify_quadruple(1, 2, a, b, 2, 3, c, d, free_abcd, 3, EngineSettings(experimental_n3=True))


def test_nearest_disjoint_position():
    assert nearest_disjoint_position(4, (2, 3), (1, 2)) in {(3, 4), (4, 3)}
    with pytest.raises(NotSupportedError):
        nearest_disjoint_position(3, (2, 3), (1, 2))


@pytest.mark.slow
@pytest.mark.parametrize("k,l", positions(4))
def test_quadruple_commutators_at_every_position(free_abcd, k, l):
    a, b, c, d = (free_abcd.letter(name) for name in "abcd")
    cert = certify_quadruple(1, 2, a, b, k, l, c, d, free_abcd, 4)
    result = check(cert)
    assert result.passed, result.detail


@pytest.mark.parametrize("text", ["[[A,B],C]", "[A,[B,C]]", "[[A,R],B]"])
def test_three_leaf_trees_reduce_at_n3(text):
    report = reduce_bracket_tree(parse_bracket_tree(text), 3)
    assert report.passed
    assert [step.construction for step in report.steps] == ["z-in-mixed", "triple"]
    assert report.steps[-1].cut_point == (2 if text.startswith("[[") else 1)


@pytest.mark.slow
@pytest.mark.parametrize("text", ["[[[A,B],C],D]", "[[A,B],[C,D]]", "[A,[[B,C],D]]"])
def test_four_leaf_trees_reduce_at_n4(text):
    report = reduce_bracket_tree(parse_bracket_tree(text), 4)
    assert report.passed
    assert len(report.steps) == 3


@pytest.mark.slow
def test_five_leaf_tree_reduces_at_n4():
    report = reduce_bracket_tree(parse_bracket_tree("[[[A,B],C],[D,E]]"), 4)
    assert report.passed
    assert [step.construction for step in report.steps] == ["z-in-mixed", "triple", "z-in-mixed", "quadruple"]
    assert len(report.steps[-1].checks) == 12


def test_two_leaf_tree_in_parallel():
    report = reduce_bracket_tree(parse_bracket_tree("[A,B]"), 3, EngineSettings(jobs=2))
    assert report.passed
    (step,) = report.steps
    assert step.case == "base" and len(step.checks) == 12


def test_reduction_rejects_bad_trees():
    with pytest.raises(UsageError):
        plan_reduction(parse_bracket_tree("A"), 3)
    with pytest.raises(CapExceededError):
        plan_reduction(parse_bracket_tree("[A,B,C,D]"), 4, EngineSettings(tree_leaf_cap=3))
    with pytest.raises(UsageError):
        plan_reduction(parse_bracket_tree("[A,B]"), 2)
    with pytest.raises(NotSupportedError):
        plan_reduction(parse_bracket_tree("[[A,B],[C,D]]"), 3)
