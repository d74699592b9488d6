"""Session-wide fixtures: the standard catalog of constructed objects,
built once because the automorphism searches are the expensive part."""

from __future__ import annotations

import pytest

from gddkit import construct, symmetry
from gddkit.graph import Graph


PAPER_RDS_28 = ([0, 1, 9, 11], 7, 2)
PAPER_RDS_52 = ([0, 9, 11, 15, 18, 19, 20, 23, 25], 13, 2)


@pytest.fixture(scope="session")
def dih28() -> Graph:
    return construct.dihedrant_from_rds(construct.verify_rds(*PAPER_RDS_28))


@pytest.fixture(scope="session")
def dih52() -> Graph:
    return construct.dihedrant_from_rds(construct.verify_rds(*PAPER_RDS_52))


@pytest.fixture(scope="session")
def gamma23() -> Graph:
    return construct.graph_dq(2, 3).graph


@pytest.fixture(scope="session")
def gamma33() -> Graph:
    return construct.graph_dq(3, 3).graph


@pytest.fixture(scope="session")
def quotient252() -> Graph:
    return construct.graph_dqn(2, 5, 2)


@pytest.fixture(scope="session")
def aut_gamma33(gamma33):
    return symmetry.automorphism_group(gamma33)


@pytest.fixture(scope="session")
def aut_dih52(dih52):
    return symmetry.automorphism_group(dih52)


def cycle(n: int) -> Graph:
    return Graph.from_edges(n, [(i, (i + 1) % n) for i in range(n)])


def complete(n: int) -> Graph:
    return Graph.from_edges(n, [(i, j) for i in range(n) for j in range(i + 1, n)])


def petersen() -> Graph:
    edges = (
        [(i, (i + 1) % 5) for i in range(5)]
        + [(5 + i, 5 + (i + 2) % 5) for i in range(5)]
        + [(i, i + 5) for i in range(5)]
    )
    return Graph.from_edges(10, edges)
