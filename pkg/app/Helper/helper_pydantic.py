from pydantic import BaseModel, ConfigDict, Field
from typing import List, Optional, Tuple

from app.Helper.helper_constant import ENGINE_DEFAULTS, PLAIN_TAG, RingKind


# ============================================================================
# Ring descriptors
# ============================================================================

class Letter(BaseModel):
    """A named generator of a free algebra together with its ideal tag."""
    model_config = ConfigDict(frozen=True)

    name: str = Field(..., min_length=1, description="Identifier used in polynomial text")
    tag: str = Field(PLAIN_TAG, description="Ideal tag; 'R' marks a plain letter")

    @property
    def is_plain(self) -> bool:
        return self.tag == PLAIN_TAG


class RingSpec(BaseModel):
    """Parsed ring-spec string."""
    model_config = ConfigDict(frozen=True)

    kind: RingKind
    letters: Tuple[Letter, ...] = ()
    modulus: Optional[int] = Field(None, ge=2, description="m for Z/m, p for truncated algebras")
    degree: Optional[int] = Field(None, ge=0, description="Truncation degree D")

    def to_text(self) -> str:
        if self.kind is RingKind.MODULAR:
            return f"Z/{self.modulus}"
        if self.kind in (RingKind.POLY_Z, RingKind.POLY_Q):
            base = "Z" if self.kind is RingKind.POLY_Z else "Q"
            return f"poly({base}; {', '.join(letter.name for letter in self.letters)})"
        declared = ", ".join(f"{letter.name}:{letter.tag}" for letter in self.letters)
        if self.kind is RingKind.TRUNCATED:
            return f"trunc(F{self.modulus}; {declared}; {self.degree})"
        return f"free(Z; {declared})"


# ============================================================================
# Engine settings
# ============================================================================

class EngineSettings(BaseModel):
    """Runtime knobs, filled from command-line flags."""
    closure_cap: int = Field(ENGINE_DEFAULTS["closure_cap"], ge=1, description="Maximum closure size")
    brute_degree_bound: int = Field(ENGINE_DEFAULTS["brute_degree_bound"], ge=0, le=16)
    conjugator_length_cap: int = Field(ENGINE_DEFAULTS["conjugator_length_cap"], ge=0,
                                       description="Maximum number of transvections in a user conjugator")
    tree_leaf_cap: int = Field(ENGINE_DEFAULTS["tree_leaf_cap"], ge=2)
    shadow_trials: int = Field(ENGINE_DEFAULTS["shadow_trials"], ge=0)
    seed: int = Field(ENGINE_DEFAULTS["seed"], ge=0, lt=2 ** 64)
    jobs: int = Field(ENGINE_DEFAULTS["jobs"], ge=1)
    verify_steps: bool = Field(True, description="Evaluate every construction step while building")
    progress: bool = False
    experimental_n3: bool = False


# ============================================================================
# Reports
# ============================================================================

class CheckResult(BaseModel):
    """Outcome of checking one certificate."""
    passed: bool
    detail: str
    atoms: int = Field(0, ge=0)


class MembershipReport(BaseModel):
    member: bool
    monomials: int = Field(0, ge=0)
    failing_monomial: Optional[str] = None
    witnesses: List[str] = Field(default_factory=list)


class SuiteLine(BaseModel):
    """One line of a verification report."""
    passed: bool
    name: str
    detail: str = ""
    extra: List[str] = Field(default_factory=list, description="Indented lines printed after the verdict")


class StepReport(BaseModel):
    """One node of a bracket-tree reduction."""
    node: str
    case: str = Field(..., description="base, s=1, s=m-1 or interior")
    cut_point: int = Field(..., ge=1)
    construction: str
    target: str
    checks: List[Tuple[str, CheckResult]] = Field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(result.passed for _, result in self.checks)


class ReductionReport(BaseModel):
    tree: str
    n: int = Field(..., ge=2)
    steps: List[StepReport] = Field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(step.passed for step in self.steps)


class ShadowResult(BaseModel):
    name: str
    ring: str
    trials: int = Field(..., ge=0)
    seed: int
    failures: int = Field(0, ge=0)
    first_failure: Optional[str] = None

    @property
    def passed(self) -> bool:
        return self.failures == 0


class CentralityResult(BaseModel):
    central: bool
    checked_pairs: int = Field(0, ge=0)
    first_failure: Optional[str] = None


class CommandOutcome(BaseModel):
    lines: List[str] = Field(default_factory=list)
    exit_code: int = 0


class OracleReport(BaseModel):
    """Verdict lines of one finite-oracle task."""
    task: str
    ring: str
    seed: Optional[int] = None
    lines: List[SuiteLine] = Field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(line.passed for line in self.lines)
