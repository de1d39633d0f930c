import numpy as np
import pytest

from quidem import (
    Functional,
    cyclic,
    dihedral,
    function_algebra,
    group_algebra,
    kac_paljutkin,
    symmetric,
)


@pytest.fixture(scope="session")
def cz2():
    return function_algebra(cyclic(2))


@pytest.fixture(scope="session")
def cz4():
    return function_algebra(cyclic(4))


@pytest.fixture(scope="session")
def cz6():
    return function_algebra(cyclic(6))


@pytest.fixture(scope="session")
def cs3():
    return function_algebra(symmetric(3))


@pytest.fixture(scope="session")
def gz4():
    return group_algebra(cyclic(4))


@pytest.fixture(scope="session")
def gs3():
    return group_algebra(symmetric(3))


@pytest.fixture(scope="session")
def gd4():
    return group_algebra(dihedral(4))


@pytest.fixture(scope="session")
def kp():
    return kac_paljutkin()


@pytest.fixture(scope="session")
def mu0(cz4):
    """(δ0 − δ2)/2 on C(Z4): the standard non-positive contractive idempotent."""
    return Functional.from_covector(cz4.algebra, np.array([0.5, 0.0, -0.5, 0.0]))
