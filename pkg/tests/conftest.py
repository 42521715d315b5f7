import pytest

from triquot.exactalg import FieldSpec
from triquot.algrep import MonomialAlgebra, Quiver, serial_algebra

F2 = FieldSpec.prime(2)
F3 = FieldSpec.prime(3)
F5 = FieldSpec.prime(5)
QQ = FieldSpec.rationals()


@pytest.fixture(scope="session")
def kx3():
    """k[x]/x^3 over F2."""
    return serial_algebra(F2, 1, 3)


@pytest.fixture(scope="session")
def kx3_q():
    return serial_algebra(QQ, 1, 3)


@pytest.fixture(scope="session")
def kx3_f3():
    return serial_algebra(F3, 1, 3)


@pytest.fixture(scope="session")
def kx4():
    return serial_algebra(F2, 1, 4)


@pytest.fixture(scope="session")
def kx4_q():
    return serial_algebra(QQ, 1, 4)


@pytest.fixture(scope="session")
def nak32():
    """Cyclic Nakayama algebra on 3 vertices with radical square zero."""
    return serial_algebra(F2, 3, 2)


@pytest.fixture(scope="session")
def nak23():
    return serial_algebra(F2, 2, 3)


@pytest.fixture(scope="session")
def a2_quiver_algebra():
    """Path algebra of 1 -> 2 (not self-injective); built with a dummy length-2
    relation-free presentation: no relations at all."""
    q = Quiver(("1", "2"), (("1", "2", "a"),))
    return MonomialAlgebra(q, [], F2)
