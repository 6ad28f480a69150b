import functools

import pytest

from twinrigid.catalog import Catalog
from twinrigid.oracle import Oracle
from twinrigid.quiver import Quiver, linear_quiver, orientations

A_EDGES = {2: [(1, 2)], 3: [(1, 2), (2, 3)], 4: [(1, 2), (2, 3), (3, 4)]}
D4_EDGES = [(1, 2), (3, 2), (4, 2)]


def small_quivers() -> list[Quiver]:
    """All orientations of A2, A3, A4 and D4 (22 quivers)."""
    out = []
    for n in (2, 3, 4):
        out += orientations(n, A_EDGES[n])
    return out + orientations(4, D4_EDGES)


@functools.lru_cache(maxsize=None)
def catalog(q: Quiver) -> Catalog:
    return Catalog(q)


@functools.lru_cache(maxsize=None)
def oracle(q: Quiver) -> Oracle:
    return Oracle(catalog(q))


@pytest.fixture(scope="session")
def a1():
    return catalog(linear_quiver(1))


@pytest.fixture(scope="session")
def a2():
    # 1 <- 2
    return catalog(linear_quiver(2, "<"))


@pytest.fixture(scope="session")
def a3():
    # 1 <- 2 <- 3
    return catalog(linear_quiver(3, "<<"))


@pytest.fixture(scope="session")
def a3_alt():
    # 1 -> 2 <- 3
    return catalog(linear_quiver(3, "><"))


@pytest.fixture(scope="session")
def d4():
    return catalog(Quiver(4, tuple(D4_EDGES)))


@pytest.fixture(scope="session")
def o2(a2):
    return oracle(a2.quiver)


@pytest.fixture(scope="session")
def o3(a3):
    return oracle(a3.quiver)


def ids(c: Catalog, text: str) -> frozenset:
    return c.parse_ids(text)
