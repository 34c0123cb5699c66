"""
Numeric shadows: replay symbolic identities and certificates under random
substitutions into a finite ring.
"""
import logging
from typing import Dict, List, Mapping, Optional

import numpy as np
from tqdm import tqdm

from app.Certify.certificate import Certificate, CommAtom
from app.Certify.elementary import certify_comaximal
from app.Certify.formula_tables import TABLE_RING, identity_pairs
from app.Group.words import Gen, Y, evaluate, substitute_word
from app.Helper.helper_constant import CERTIFY_DEFAULT_RINGS
from app.Helper.helper_exceptions import UsageError
from app.Helper.helper_parsing import symbolic_ring
from app.Helper.helper_pydantic import ShadowResult, SuiteLine
from app.Ideal.ideal_expr import Atom, SymProd
from app.Oracle.finite_ring import FiniteRing
from app.Ring.rings import evaluate_hom

logger = logging.getLogger(__name__)

SHADOW_IDENTITIES = (
    "y-explicit",
    "y-inverse-explicit",
    "conjugation-table",
    "lemma9.row-formula",
    "commutation-table",
    "steinberg-rules",
)


class _Substitution:
    """Memoised image of free-algebra elements for one trial."""

    def __init__(self, assignment: Mapping[str, object], target):
        self.assignment = assignment
        self.target = target
        self.cache: Dict[object, object] = {}

    def __call__(self, value):
        if value not in self.cache:
            self.cache[value] = evaluate_hom(value, self.assignment, self.target)
        return self.cache[value]


def numeric_shadow(name: str, finite: FiniteRing, trials: int, seed: int = 0,
                   forced: Optional[Mapping[str, object]] = None, n: int = 3,
                   progress: bool = False) -> ShadowResult:
    """
    Check a named identity under `trials` random letter assignments.

    The symbolic matrices are computed once; each trial maps their entries
    through the substitution homomorphism.
    """
    if name not in SHADOW_IDENTITIES:
        raise UsageError(f"unknown identity {name!r}; expected one of {', '.join(SHADOW_IDENTITIES)}")
    pairs = identity_pairs(name, n)
    source = symbolic_ring(TABLE_RING)
    target = finite.ring
    rng = np.random.default_rng(seed)
    logger.info(f"Shadowing {name} over {finite.describe()} with seed {seed}, {trials} trials")

    result = ShadowResult(name=name, ring=finite.describe(), trials=trials, seed=seed)
    for trial in tqdm(range(trials), desc=f"Shadow {name}", unit="trial", disable=not progress):
        image = _Substitution(finite.assignment(source, rng, forced), target)
        for label, left, right in pairs:
            if left.map_entries(image, target) != right.map_entries(image, target):
                result.failures += 1
                if result.first_failure is None:
                    values = ", ".join(f"{key}={target.to_text(value)}" for key, value in image.assignment.items())
                    result.first_failure = f"trial {trial}: {label} with {values}"
                break
    return result


def shadow_certificate(cert: Certificate, finite: FiniteRing, trials: int, seed: int = 0,
                       forced: Optional[Mapping[str, object]] = None, progress: bool = False) -> ShadowResult:
    """
    Replay a certificate over a finite ring: lhs = rhs * atoms after substitution,
    and every atom argument lands in the image of its claimed ideal.
    """
    ring = cert.ring
    if not ring.is_free:
        raise UsageError(f"certificate shadows need a free algebra certificate, got {ring.describe()}")
    target = finite.ring
    rng = np.random.default_rng(seed)
    result = ShadowResult(name="certificate", ring=finite.describe(), trials=trials, seed=seed)
    rhs = cert.rhs_word()
    parts = []
    for atom in cert.atoms:
        parts.extend((atom.left, atom.right) if isinstance(atom, CommAtom) else (atom,))

    for trial in tqdm(range(trials), desc="Shadow certificate", unit="trial", disable=not progress):
        assignment = finite.assignment(ring, rng, forced)
        reason = None
        left = evaluate(substitute_word(cert.lhs, assignment, target), target, cert.n)
        right = evaluate(substitute_word(rhs, assignment, target), target, cert.n)
        difference = left.first_difference(right)
        if difference is not None:
            reason = f"entry ({difference[0]},{difference[1]}) differs"
        else:
            for part in parts:
                value = evaluate_hom(part.arg, assignment, target)
                if not finite.ideal_contains(part.claim, value):
                    reason = f"atom argument {target.to_text(value)} outside {part.claim.to_text()}"
                    break
        if reason is not None:
            result.failures += 1
            if result.first_failure is None:
                result.first_failure = f"trial {trial}: {reason}"
    logger.info(f"Certificate shadow over {finite.describe()}: {result.failures} failures in {trials} trials")
    return result


def _first_nonzero(finite: FiniteRing, tag: str):
    for value in finite.ideal_elements(tag):
        if not finite.ring.is_zero(value):
            return value
    raise UsageError(f"ideal {tag} of {finite.describe()} is zero")


def comaximal_shadow(finite: FiniteRing, trials: int, seed: int = 0, n: int = 3,
                     progress: bool = False) -> List[SuiteLine]:
    """
    Comaximal collapse over a finite ring with comaximal ideals A and B.

    Finds and checks a Bezout pair p + q = 1, replays the symbolic comaximal
    certificate with p and q substituted for a' and b', and checks that
    y_12(a, b) for the first nonzero a in A and b in B reduces to e mod A o B.
    """
    target = finite.ring
    p, q = finite.bezout_pair("A", "B")
    lines = [SuiteLine(passed=True, name="bezout pair",
                       detail=f"{target.to_text(p)} + {target.to_text(q)} = 1 with p in A, q in B")]

    source = symbolic_ring(CERTIFY_DEFAULT_RINGS["comaximal"])
    letters = {name: source.letter(name) for name in ("a", "b", "p", "q")}
    cert = certify_comaximal(1, 2, letters["a"], letters["b"], letters["p"], letters["q"], source, n)
    result = shadow_certificate(cert, finite, trials, seed, forced={"p": p, "q": q}, progress=progress)
    lines.append(SuiteLine(passed=result.passed, name="shadow comaximal certificate",
                           detail=f"{result.failures} failures in {trials} trials, seed {seed}",
                           extra=[result.first_failure] if result.first_failure else []))

    a, b = _first_nonzero(finite, "A"), _first_nonzero(finite, "B")
    g = evaluate(Gen(Y(1, 2, a, b)), target, n)
    claim = SymProd(Atom("A"), Atom("B"))
    one = target.one()
    level = all(
        finite.ideal_contains(claim, target.sub(g.entry(r, c), one if r == c else target.zero()))
        for r in range(1, n + 1) for c in range(1, n + 1)
    )
    name = f"y[1,2]({target.to_text(a)};{target.to_text(b)}) in GL({n}, R, A o B)"
    detail = "identity matrix" if g.is_identity() else "congruent to e"
    lines.append(SuiteLine(passed=level, name=name, detail=detail if level else "not congruent to e",
                           extra=[] if level else g.to_lines()))
    return lines
