"""Shared fixtures: the classified calculi of dimensions 2 and 3."""
import pytest

from f2geo.algebra import StructureConstants


def gamma_bits(n, spec):
    """Pack {generator: [(nu, rho), ...]} into Gamma bits."""
    bits = 0
    for mu, pairs in spec.items():
        for nu, rho in pairs:
            bits ^= 1 << ((mu * n + nu) * n + rho)
    return bits


def products2(extra):
    return StructureConstants.from_products(2, {(0, 0): [0], (0, 1): [1], **extra})


def products3(extra):
    return StructureConstants.from_products(
        3, {(0, 0): [0], (0, 1): [1], (0, 2): [2], **extra}
    )


CASES_N2 = {
    "A": products2({(1, 1): []}),
    "B": products2({(1, 1): [1]}),
    "C": products2({(1, 1): [0, 1]}),
}

CASES_N3 = {
    "A": products3({(1, 1): [], (1, 2): [], (2, 2): []}),
    "B": products3({(1, 1): [1], (1, 2): [], (2, 2): [2]}),
    "C": products3({(1, 1): [1], (1, 2): [], (2, 2): []}),
    "D": products3({(1, 1): [2], (1, 2): [1, 2], (2, 2): [1]}),
    "E": products3({(1, 1): [2], (1, 2): [], (2, 2): []}),
    "F": products3({(1, 1): [0, 1, 2], (1, 2): [0, 1], (2, 2): [1]}),
}

# Non-inner n=2 families of the discussion section.
NONINNER_N2 = {
    "D": StructureConstants.from_products(2, {(0, 0): [0], (0, 1): [], (1, 1): []}),
    "E": StructureConstants.from_products(2, {(0, 0): [1], (0, 1): [], (1, 1): []}),
}


@pytest.fixture(scope="session")
def cases_n2():
    return CASES_N2


@pytest.fixture(scope="session")
def cases_n3():
    return CASES_N3
