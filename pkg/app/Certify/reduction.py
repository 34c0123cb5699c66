"""
Bracket-tree reduction

Walks the internal nodes of a multiple-commutator bracket tree bottom-up and,
for each node, certifies the generator-level inclusion its children need:

    [L, L']        z-generators of the leaf ideals lie in the mixed group
    [N, L], [L, N] triple commutators [y, t] with composite ideals
    [N, N']        quadruple commutators [y, y'] (n >= 4)

Every leaf gets its own letter in a free algebra tagged by the leaf ideal;
a subtree is represented by the product of its leaf letters, which lies in
the composite ideal of the subtree.
"""
import logging
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Tuple

from tqdm import tqdm

from app.Certify.certificate import Certificate, Modulus, check_all
from app.Certify.commutators import certify_quadruple, certify_triple, certify_z_in_mixed
from app.Group.bracket_tree import (
    BracketTree, Leaf, Node, classify, composite_ideal, cut_point, leaf_count, leaves,
)
from app.Group.words import positions
from app.Helper.helper_constant import PLAIN_TAG, RingKind
from app.Helper.helper_exceptions import CapExceededError, UsageError
from app.Helper.helper_pydantic import (
    EngineSettings, Letter, ReductionReport, RingSpec, StepReport,
)
from app.Ring.rings import Ring, build_ring

logger = logging.getLogger(__name__)

PLAIN_LETTER = "c"


@dataclass
class PlannedStep:
    """Certificates for one internal node, before checking."""
    node: str
    case: str
    cut_point: int
    construction: str
    target: str
    certificates: List[Tuple[str, Certificate]] = field(default_factory=list)


class _Representatives:
    """Leaf letters and subtree representatives for one tree."""

    def __init__(self, tree: BracketTree):
        self.names: Dict[int, str] = {}
        letters = []
        for index, leaf in enumerate(leaves(tree), start=1):
            if leaf.tag == PLAIN_TAG:
                continue
            lowered = leaf.tag.lower()
            name = f"{lowered}{index}" if lowered.isalpha() else f"{lowered}_{index}"
            self.names[index] = name
            letters.append(Letter(name=name, tag=leaf.tag))
        letters.append(Letter(name=PLAIN_LETTER, tag=PLAIN_TAG))
        self.ring: Ring = build_ring(RingSpec(kind=RingKind.FREE, letters=tuple(letters)))

    def of(self, tree: BracketTree, start: int):
        """Product of the leaf letters under `tree`, whose first leaf has number `start`."""
        result = self.ring.one()
        for index in range(start, start + leaf_count(tree)):
            if index in self.names:
                result = self.ring.mul(result, self.ring.letter(self.names[index]))
        return result

    @property
    def plain(self):
        return self.ring.letter(PLAIN_LETTER)


def _base_step(node: Node, start: int, reps: _Representatives, n: int,
               settings: EngineSettings) -> PlannedStep:
    ring = reps.ring
    ideals = (composite_ideal(node.left), composite_ideal(node.right))
    step = PlannedStep(node.to_text(), classify(node), cut_point(node), "z-in-mixed",
                       Modulus.mixed(*ideals).to_text())
    a, b = reps.of(node.left, start), reps.of(node.right, start + 1)
    for i, j in positions(n):
        for variant in ("ab", "ba"):
            cert = certify_z_in_mixed(i, j, a, b, reps.plain, ring, n, variant, settings, ideals)
            step.certificates.append((f"z[{i},{j}]({variant};c)", cert))
    return step


def _triple_step(node: Node, inner: Node, inner_start: int, outer: BracketTree, outer_start: int,
                 reps: _Representatives, n: int, settings: EngineSettings) -> PlannedStep:
    ring = reps.ring
    ideals = (composite_ideal(inner.left), composite_ideal(inner.right), composite_ideal(outer))
    step = PlannedStep(node.to_text(), classify(node), cut_point(node), "triple",
                       Modulus.mixed(composite_ideal(inner), ideals[2]).to_text())
    a = reps.of(inner.left, inner_start)
    b = reps.of(inner.right, inner_start + leaf_count(inner.left))
    c = reps.of(outer, outer_start)
    for h, k in positions(n):
        cert = certify_triple(1, 2, a, b, h, k, c, ring, n, settings, ideals)
        step.certificates.append((f"[y[1,2], t[{h},{k}]]", cert))
    return step


def _quadruple_step(node: Node, start: int, reps: _Representatives, n: int,
                    settings: EngineSettings) -> PlannedStep:
    ring = reps.ring
    left, right = node.left, node.right
    ideals = (composite_ideal(left.left), composite_ideal(left.right),
              composite_ideal(right.left), composite_ideal(right.right))
    step = PlannedStep(node.to_text(), classify(node), cut_point(node), "quadruple",
                       Modulus.mixed(composite_ideal(left), composite_ideal(right)).to_text())
    right_start = start + leaf_count(left)
    a = reps.of(left.left, start)
    b = reps.of(left.right, start + leaf_count(left.left))
    c = reps.of(right.left, right_start)
    d = reps.of(right.right, right_start + leaf_count(right.left))
    for k, l in positions(n):
        cert = certify_quadruple(1, 2, a, b, k, l, c, d, ring, n, settings, ideals)
        step.certificates.append((f"[y[1,2], y[{k},{l}]]", cert))
    return step


def _walk(tree: BracketTree, start: int = 1) -> List[Tuple[Node, int]]:
    """Internal nodes in post-order with the number of their first leaf."""
    if isinstance(tree, Leaf):
        return []
    return _walk(tree.left, start) + _walk(tree.right, start + leaf_count(tree.left)) + [(tree, start)]


def plan_reduction(tree: BracketTree, n: int, settings: Optional[EngineSettings] = None) -> List[PlannedStep]:
    """Build (but do not check) the certificates of every reduction step."""
    settings = settings or EngineSettings()
    if isinstance(tree, Leaf):
        raise UsageError("a bracket tree needs at least two leaves")
    count = leaf_count(tree)
    if count > settings.tree_leaf_cap:
        raise CapExceededError(f"bracket tree with {count} leaves", settings.tree_leaf_cap)
    if n < 3:
        raise UsageError(f"bracket-tree reductions need n >= 3, got {n}")
    building = settings.model_copy(update={"verify_steps": False})
    reps = _Representatives(tree)
    logger.info(f"Reducing {tree.to_text()} at n={n} over {reps.ring.describe()}")

    steps: List[PlannedStep] = []
    nodes = _walk(tree)
    with tqdm(total=len(nodes), desc="Reduction steps", unit="step", disable=not settings.progress) as pbar:
        for node, start in nodes:
            right_start = start + leaf_count(node.left)
            left_leaf, right_leaf = isinstance(node.left, Leaf), isinstance(node.right, Leaf)
            if left_leaf and right_leaf:
                step = _base_step(node, start, reps, n, building)
            elif right_leaf:
                step = _triple_step(node, node.left, start, node.right, right_start, reps, n, building)
            elif left_leaf:
                step = _triple_step(node, node.right, right_start, node.left, start, reps, n, building)
            else:
                step = _quadruple_step(node, start, reps, n, building)
            logger.debug(f"Planned {step.construction} for {step.node}: {len(step.certificates)} certificates")
            steps.append(step)
            pbar.update(1)
    return steps


def check_plan(tree: BracketTree, n: int, steps: List[PlannedStep], jobs: int = 1) -> ReductionReport:
    """Check every planned certificate and collect the per-step verdicts in plan order."""
    flat = [cert for step in steps for _, cert in step.certificates]
    results = iter(check_all(flat, jobs))

    report = ReductionReport(tree=tree.to_text(), n=n)
    for step in steps:
        checks = [(label, next(results)) for label, _ in step.certificates]
        report.steps.append(StepReport(
            node=step.node, case=step.case, cut_point=step.cut_point,
            construction=step.construction, target=step.target, checks=checks,
        ))
    logger.info(f"Reduction of {report.tree}: {'passed' if report.passed else 'failed'}")
    return report


def reduce_bracket_tree(tree: BracketTree, n: int, settings: Optional[EngineSettings] = None) -> ReductionReport:
    """Plan every step, then check all certificates."""
    settings = settings or EngineSettings()
    return check_plan(tree, n, plan_reduction(tree, n, settings), settings.jobs)
