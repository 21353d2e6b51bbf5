import pytest

from ruijsenaars.operators import OperatorContext
from ruijsenaars.scalars import rat

Q = rat("3/10")
T = rat("1/2")


@pytest.fixture(scope="session")
def ctx2():
    return OperatorContext(2, Q, T)


@pytest.fixture(scope="session")
def ctx3():
    return OperatorContext(3, Q, T)
