from enum import Enum, IntEnum


# Exit statuses of the command line
class ExitCode(IntEnum):
    PASSED = 0
    FAILED = 1
    USAGE = 2
    NOT_SUPPORTED = 3
    CAP_EXCEEDED = 4


# Ring backends
class RingKind(Enum):
    FREE = "free"
    TRUNCATED = "trunc"
    MODULAR = "modular"
    POLY_Z = "poly_z"
    POLY_Q = "poly_q"


# Target group of a congruence certificate
class ModulusKind(Enum):
    ELEM = "ELEM"
    MIXED = "MIXED"


# Tag of letters that belong to no proper ideal
PLAIN_TAG = "R"

CERTIFICATE_VERSION = 1

LOG_FORMAT = '%(asctime)s - %(name)s - %(levelname)s - %(message)s'

# Engine defaults (overridable through EngineSettings)
ENGINE_DEFAULTS = {
    "closure_cap": 2 ** 22,
    "brute_degree_bound": 8,
    "conjugator_length_cap": 8,
    "tree_leaf_cap": 6,
    "shadow_trials": 100,
    "seed": 0,
    "jobs": 1,
}

# Default free rings used by `certify` when --ring is omitted
CERTIFY_DEFAULT_RINGS = {
    "9": "free(Z; a:A, b:B, c:R, d:R)",
    "10": "free(Z; a:A, a2:A, b:B, b2:B)",
    "11": "free(Z; a:A, b:B, c:R)",
    "12": "free(Z; a:A, a2:A, b:B, b2:B)",
    "7": "free(Z; a:A, b:B, c:C)",
    "8": "free(Z; a:A, b:B, c:C, d:D)",
    "z": "free(Z; a:A, b:B, c:R)",
    "comaximal": "free(Z; a:A, b:B, p:A, q:B)",
}

# Default argument texts for `certify`
CERTIFY_DEFAULT_ARGS = {
    "a": "a",
    "a2": "a2",
    "b": "b",
    "b2": "b2",
    "c": "c",
    "d": "d",
    "a_prime": "p",
    "b_prime": "q",
}

# Finite rings for numeric shadows: ring spec -> ideal tag -> divisor
SHADOW_RINGS = {
    "Z/6": {"A": 2, "B": 3},
    "Z/8": {"A": 2, "B": 2, "C": 2, "D": 2},
}

# Formula-table suites accepted by `verify`
VERIFY_SUITES = [
    "y-explicit",
    "lemma5-table",
    "lemma6-table",
    "steinberg-rules",
    "identities-sec2",
    "explicit-matrices",
]

# Oracle tasks
ORACLE_TASKS = ["closure", "centrality", "shadow"]
