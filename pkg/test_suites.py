import pytest

from app.Certify import formula_tables
from app.Certify.formula_tables import (
    CLAIM_ABC, SUITES, derive_commutation, displayed_formula, identity_pairs, run_suite,
)
from app.Group.words import Y
from app.Helper.helper_constant import VERIFY_SUITES
from app.Helper.helper_exceptions import UsageError
from app.Helper.helper_parsing import symbolic_ring
from app.Ideal.membership import poly_member

TABLE_KEYS = ("ih", "jh", "hi", "hj")


def test_every_registered_suite_is_listed():
    assert sorted(SUITES) == sorted(VERIFY_SUITES)


@pytest.mark.parametrize("name", VERIFY_SUITES)
def test_suites_pass_at_n3(name):
    lines = run_suite(name, 3)
    assert lines
    failures = [f"{line.name}: {line.detail}" for line in lines if not line.passed]
    assert not failures


@pytest.mark.parametrize("name", ["lemma5-table", "lemma6-table", "y-explicit"])
def test_table_suites_pass_at_n4(name):
    assert all(line.passed for line in run_suite(name, 4))


def test_explicit_y_matrix_is_printed_once():
    lines = run_suite("y-explicit", 3)
    printed = [line for line in lines if line.extra]
    assert len(printed) == 1
    assert printed[0].name == "n=3 y[1,2](a;b)"
    assert len(printed[0].extra) == 3


def test_table_arguments_lie_in_their_claimed_products():
    ring = symbolic_ring("free(Z; a:A, b:B, c:C)")
    for key in TABLE_KEYS:
        _, factors = displayed_formula(ring, 1, 2, 3, key)
        for factor, claim in factors:
            assert poly_member(factor.c, claim), (key, claim.to_text())


@pytest.mark.parametrize("i,j,h", [(1, 2, 3), (3, 1, 2), (2, 4, 1)])
def test_derived_commutations_equal_the_display(i, j, h):
    ring = symbolic_ring("free(Z; a:A, b:B, c:C)")
    y = Y(i, j, ring.letter("a"), ring.letter("b"))
    for key in TABLE_KEYS:
        t, displayed = displayed_formula(ring, i, j, h, key)
        derived = derive_commutation(ring, 4, t, y)
        assert {(f.i, f.j): f.c for f in derived} == {(f.i, f.j): f.c for f, _ in displayed}, key
        inverse = derive_commutation(ring, 4, t, y, transvection_first=False)
        assert {(f.i, f.j): f.c for f in inverse} == {(f.i, f.j): -f.c for f, _ in displayed}, key


def test_table_suites_show_the_derivation():
    lines = run_suite("lemma5-table", 3)
    assert lines[0].detail.startswith("derived t[")
    assert all(line.detail.endswith("matches display") for line in lines)


def test_a_mistyped_display_is_reported(monkeypatch):
    table = dict(formula_tables.COMMUTATION_TABLE)
    table["ih"] = [("i", "h", "-a*b*c", CLAIM_ABC)] + table["ih"][1:]
    monkeypatch.setattr(formula_tables, "COMMUTATION_TABLE", table)
    for name in ("lemma5-table", "lemma6-table"):
        failed = [line for line in run_suite(name, 3) if not line.passed]
        assert failed
        assert all("displayed" in line.detail for line in failed)


def test_identity_pairs_agree():
    for name in ("y-explicit", "y-inverse-explicit", "lemma9.row-formula", "commutation-table", "steinberg-rules"):
        pairs = identity_pairs(name, 3)
        assert pairs
        for label, left, right in pairs:
            assert left == right, (name, label)


def test_unknown_names():
    with pytest.raises(UsageError):
        identity_pairs("no-such-identity")
    with pytest.raises(UsageError):
        run_suite("no-such-suite", 3)
    with pytest.raises(UsageError):
        run_suite("lemma5-table", 2)
