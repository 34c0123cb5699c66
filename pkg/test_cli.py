import logging

import pytest

from app.Certify.certificate import Certificate, ConjTransvection, Modulus, write_certificate
from app.Commands.base_command import settings_from_args
from app.Group.words import IDENTITY, Gen, T
from app.Helper.helper_parsing import symbolic_ring
from app.Ideal.ideal_expr import Atom, SymProd
from main import build_parser, run

RING = "free(Z; a:A, b:B, c:C)"


def test_member_reports_the_failing_monomial(capsys):
    code = run(["member", "--ring", RING, "--ideal", "(A o B) o C", "--poly", "b c a"])
    out = capsys.readouterr().out.splitlines()
    assert code == 0
    assert out[0] == "NOT MEMBER b*c*a in (A o B) o C: monomial b*c*a has no witness"


def test_member_with_witness_and_brute_force(capsys):
    code = run(["member", "--ring", RING, "--ideal", "A o (B o C)", "--poly", "a c b", "--brute"])
    out = capsys.readouterr().out.splitlines()
    assert code == 0
    assert out[0] == "MEMBER a*c*b in A o (B o C)"
    assert out[1].startswith("  ")
    assert out[-1] == "PASS brute-force agreement: 1 monomials"


def test_verify_prints_the_explicit_matrix(capsys):
    code = run(["verify", "--suite", "y-explicit", "--n", "3"])
    out = capsys.readouterr().out.splitlines()
    assert code == 0
    assert out[0] == "PASS n=3 y[1,2](a;b): exact"
    assert out[1].startswith("  [")
    assert out[-1] == "PASS suite y-explicit n=3: 12/12 checks passed"


def test_quadruple_at_n3_exits_not_supported(caplog, capsys):
    with caplog.at_level(logging.ERROR):
        code = run(["certify", "--lemma", "8", "--n", "3"])
    assert code == 3
    assert "Problem 1" in caplog.text
    assert capsys.readouterr().out == ""


def test_certificate_written_then_checked(tmp_path, capsys):
    path = tmp_path / "conjugation.cert"
    assert run(["certify", "--lemma", "9", "--out", str(path)]) == 0
    out = capsys.readouterr().out.splitlines()
    assert out[0].startswith("PASS certify lemma 9 n=3")
    assert out[-1] == f"  written to {path}"
    assert path.read_text().startswith("certificate v1 n=3 ring=")

    assert run(["check", "--in", str(path), "--shadow", "--trials", "5"]) == 0
    out = capsys.readouterr().out.splitlines()
    assert out[0].startswith(f"PASS check {path}")
    assert len(out) == 3 and all(line.startswith("  PASS shadow certificate") for line in out[1:])


def test_certificate_printed_to_stdout(capsys):
    assert run(["certify", "--lemma", "comaximal"]) == 0
    out = capsys.readouterr().out.splitlines()
    assert out[0].startswith("certificate v1 n=3")
    assert any(line.startswith("PASS certify lemma comaximal n=3") for line in out)
    assert out[-1].startswith("  PASS specialisation")


def test_tampered_certificate_fails(tmp_path, capsys):
    path = tmp_path / "collapse.cert"
    assert run(["certify", "--lemma", "12", "--out", str(path)]) == 0
    text = path.read_text()
    path.write_text(text.replace("rhs e", "rhs t[1,2](a)"))
    capsys.readouterr()
    assert run(["check", "--in", str(path)]) == 1
    assert capsys.readouterr().out.startswith("FAIL check")


def test_usage_errors(capsys):
    assert run(["member", "--ring", "free(Z; a:A", "--ideal", "A", "--poly", "a"]) == 2
    assert run(["member", "--ring", "Z/6", "--ideal", "A", "--poly", "1"]) == 2
    assert run(["oracle", "--ring", "Z/6", "--task", "shadow", "--trials", "-1"]) == 2
    with pytest.raises(SystemExit) as excinfo:
        run(["verify", "--suite", "y-explicit", "--unknown-flag"])
    assert excinfo.value.code == 2


def test_oracle_cap_exceeded():
    assert run(["oracle", "--ring", "Z/4", "--ideal", "A=2,B=2", "--task", "closure", "--cap", "10"]) == 4


def test_oracle_centrality(capsys):
    assert run(["oracle", "--ring", "Z/4", "--ideal", "A=2,B=2", "--task", "centrality"]) == 0
    out = capsys.readouterr().out.splitlines()
    assert out[0].startswith("PASS oracle centrality")
    assert out[-1].startswith("  PASS [E(3,A),E(3,B)] central modulo E(3,R,A o B)")


def test_shadow_is_deterministic(capsys):
    argv = ["oracle", "--ring", "Z/6", "--ideal", "A=2,B=3", "--task", "shadow",
            "--identity", "y-explicit", "--trials", "5", "--seed", "11"]
    assert run(argv) == 0
    first = capsys.readouterr().out
    assert run(argv) == 0
    assert capsys.readouterr().out == first
    assert "seed 11" in first


def test_comaximal_shadow_command(capsys):
    argv = ["oracle", "--ring", "Z/6", "--ideal", "A=2,B=3", "--task", "shadow",
            "--identity", "comaximal", "--trials", "5"]
    assert run(argv) == 0
    out = capsys.readouterr().out.splitlines()
    assert "  PASS bezout pair: 4 + 3 = 1 with p in A, q in B" in out


def test_theorem1_emits_and_rechecks(tmp_path, capsys):
    emit = tmp_path / "steps"
    assert run(["theorem1", "--tree", "[A,B]", "--n", "3", "--emit", str(emit)]) == 0
    out = capsys.readouterr().out.splitlines()
    assert out[0] == "PASS theorem1 [A,B] n=3: 1 steps, 12 certificates"
    assert out[-1] == f"  PASS re-check {emit}: 12/12 certificates from file"
    assert len(list(emit.glob("step01_*.cert"))) == 12


def test_tampered_atom_argument_fails(tmp_path, capsys):
    ring = symbolic_ring(RING)
    a, b, c = (ring.letter(name) for name in "abc")
    claim = SymProd(SymProd(Atom("A"), Atom("B")), Atom("C"))
    cert = Certificate(Gen(T(1, 3, a * b * c)), IDENTITY, Modulus.elem(claim),
                       (ConjTransvection(IDENTITY, 1, 3, a * b * c, claim),), 3, ring)
    path = tmp_path / "triple.cert"
    write_certificate(cert, path)
    assert run(["check", "--in", str(path)]) == 0
    path.write_text(path.read_text().replace("a*b*c", "a*c*b"))
    capsys.readouterr()
    assert run(["check", "--in", str(path)]) == 1
    out = capsys.readouterr().out
    assert out.startswith("FAIL check")
    assert "argument a*c*b not in (A o B) o C" in out


@pytest.mark.parametrize("tree,n,steps", [
    ("[A,[B,C]]", 3, 2),
    pytest.param("[[A,B],[C,D]]", 4, 3, marks=pytest.mark.slow),
    pytest.param("[[[A,B],C],[D,E]]", 4, 4, marks=pytest.mark.slow),
])
def test_theorem1_certificates_recheck_from_file(tmp_path, capsys, tree, n, steps):
    emit = tmp_path / "steps"
    assert run(["theorem1", "--tree", tree, "--n", str(n), "--emit", str(emit)]) == 0
    header = capsys.readouterr().out.splitlines()[0]
    assert header.startswith(f"PASS theorem1 {tree} n={n}: {steps} steps")
    files = sorted(emit.glob("step*.cert"))
    assert files and {path.name[:6] for path in files} == {f"step{k:02d}" for k in range(1, steps + 1)}
    argv = ["check", "--jobs", "2"]
    for path in files:
        argv += ["--in", str(path)]
    assert run(argv) == 0
    out = capsys.readouterr().out.splitlines()
    assert len(out) == len(files)
    assert all(line.startswith("PASS check") for line in out)


def test_jobs_and_cap_are_shared_options():
    parser = build_parser()
    for argv in (["verify", "--suite", "y-explicit"], ["member", "--ring", RING, "--ideal", "A", "--poly", "a"],
                 ["oracle", "--ring", "Z/4", "--task", "closure"]):
        settings = settings_from_args(parser.parse_args(argv + ["--jobs", "3", "--cap", "5"]))
        assert settings.jobs == 3 and settings.closure_cap == 5
    assert run(["verify", "--suite", "y-explicit", "--jobs", "0"]) == 2
