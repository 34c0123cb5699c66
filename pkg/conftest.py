import pytest

from app.Helper.helper_parsing import symbolic_ring
from app.Helper.helper_pydantic import EngineSettings
from app.Oracle.finite_ring import FiniteRing


def pytest_configure(config):
    config.addinivalue_line("markers", "slow: exhaustive checks that take more than a few seconds")


@pytest.fixture
def free_abc():
    """free(Z; a:A, b:B, c:C), the ring of the formula tables."""
    return symbolic_ring("free(Z; a:A, b:B, c:C)")


@pytest.fixture
def free_abcr():
    """Three tagged letters and one plain letter r."""
    return symbolic_ring("free(Z; a:A, b:B, c:C, r:R)")


@pytest.fixture
def free_conj():
    """Ring for conjugation and transport certificates: a in A, b in B, c and d plain."""
    return symbolic_ring("free(Z; a:A, b:B, c:R, d:R)")


@pytest.fixture
def free_abcd():
    return symbolic_ring("free(Z; a:A, b:B, c:C, d:D)")


@pytest.fixture
def settings():
    return EngineSettings()


@pytest.fixture
def z6():
    """Z/6 with the comaximal ideals A = 2Z/6 and B = 3Z/6."""
    return FiniteRing(symbolic_ring("Z/6"), {"A": 2, "B": 3})


@pytest.fixture
def z4():
    """Z/4 with A = B = 2Z/4, so A o B = 0."""
    return FiniteRing(symbolic_ring("Z/4"), {"A": 2, "B": 2})


@pytest.fixture
def z8():
    return FiniteRing(symbolic_ring("Z/8"), {"A": 2, "B": 2, "C": 2, "D": 2})
