"""Graph core: metrics, partitions, diagrams, dihedrants, quotients."""

from __future__ import annotations

import pytest

from conftest import complete, cycle
from gddkit import construct
from gddkit.graph import (
    Graph,
    check_equitable,
    diagram_to_ascii,
    diagram_to_dot,
    dihedrant,
    distance_partition,
    gdddp_diagram,
    metrics,
    quotient_graph,
    six_cell_partition,
    split_distance3,
)
from gddkit.symmetry import PermGroup, is_automorphism


def test_graph_validation():
    with pytest.raises(ValueError):
        Graph(2, [0b01, 0b01])  # loop at 0 via bit 0
    with pytest.raises(ValueError):
        Graph(2, [0b10, 0b00])  # asymmetric
    with pytest.raises(ValueError):
        Graph.from_edges(3, [(0, 0)])


def test_metrics_c6():
    m = metrics(cycle(6))
    assert m.connected and m.bipartite
    assert m.diameter == 3 and m.regular_degree == 2


def test_metrics_gamma23(gamma23):
    m = metrics(gamma23)
    assert gamma23.n == 16
    assert m.diameter == 4 and m.bipartite and m.regular_degree == 3


def test_metrics_dih28(dih28):
    m = metrics(dih28)
    assert dih28.n == 28 and m.regular_degree == 4
    assert m.diameter == 4 and m.bipartite


def test_metrics_disconnected():
    g = Graph.from_edges(4, [(0, 1), (2, 3)])
    m = metrics(g)
    assert not m.connected and m.diameter is None
    with pytest.raises(ValueError):
        distance_partition(g, 0)


def test_distance_partition_sizes(gamma23, dih28):
    assert [len(c) for c in distance_partition(complete(5), 0)] == [1, 4]
    assert [len(c) for c in distance_partition(gamma23, 0)] == [1, 3, 6, 5, 1]
    assert [len(c) for c in distance_partition(dih28, 0)] == [1, 4, 12, 10, 1]


def test_split_distance3(gamma23, dih28, gamma33):
    for x in range(dih28.n):
        tail, plain = split_distance3(dih28, x)
        assert (len(tail), len(plain)) == (4, 6)
    tail, plain = split_distance3(gamma33, 0)
    assert (len(tail), len(plain)) == (9, 8)
    tail, plain = split_distance3(gamma23, 0)
    assert (len(tail), len(plain)) == (3, 2)
    with pytest.raises(ValueError, match="eccentricity"):
        split_distance3(cycle(6), 0)


def test_check_equitable_c5_failure():
    rep = check_equitable(cycle(5), [(0,), (1, 2, 3, 4)])
    assert not rep.equitable
    _, u, v, j, cu, cv = rep.witness
    assert {cu, cv} == {1, 2}


def test_check_equitable_distance_partition_of_c6():
    rep = check_equitable(cycle(6), distance_partition(cycle(6), 0))
    assert rep.equitable
    # (c_i, a_i, b_i) structure of a distance-regular graph
    assert rep.diagram.q == ((0, 2, 0, 0), (1, 0, 1, 0), (0, 1, 0, 1), (0, 0, 2, 0))


def test_six_cell_partition_equitable_everywhere(dih28):
    want = gdddp_diagram(4, 1, 1)
    for x in range(dih28.n):
        rep = check_equitable(dih28, six_cell_partition(dih28, x))
        assert rep.equitable and rep.diagram == want


@pytest.mark.parametrize(
    "k,c2,k4,sizes",
    [
        (4, 1, 1, (1, 4, 12, 4, 6, 1)),
        (9, 3, 1, (1, 9, 24, 9, 8, 1)),
        (3, 1, 1, (1, 3, 6, 3, 2, 1)),
        (5, 2, 1, (1, 5, 10, 5, 2, 1)),
        (9, 1, 2, (1, 9, 72, 18, 48, 2)),
    ],
)
def test_gdddp_diagram_sizes(k, c2, k4, sizes):
    diag = gdddp_diagram(k, c2, k4)
    assert diag.sizes == sizes
    assert diag.check_double_count()
    # rows of the quotient matrix sum to the valency
    assert all(sum(row) == k for row in diag.q)


def test_gdddp_diagram_totals():
    assert gdddp_diagram(4, 1, 1).total == 28
    assert gdddp_diagram(9, 3, 1).total == 52
    assert gdddp_diagram(3, 1, 1).total == 16


def test_gdddp_diagram_degenerate_and_errors():
    assert gdddp_diagram(4, 2, 1).degenerate  # b2 = 0
    assert gdddp_diagram(4, 1, 0).degenerate  # k4 = 0
    assert not gdddp_diagram(4, 1, 1).degenerate
    with pytest.raises(ValueError):
        gdddp_diagram(3, 2, 1)  # b2 < 0
    with pytest.raises(ValueError):
        gdddp_diagram(5, 3, 0)  # k(k-1)/c2 not an integer


def test_dihedrant_k33():
    from gddkit.symmetry import are_isomorphic

    g = dihedrant(3, (), (0, 1, 2))
    k33 = Graph.from_edges(6, [(i, 3 + j) for i in range(3) for j in range(3)])
    assert are_isomorphic(g, k33)


def test_dihedrant_28(dih28):
    assert dih28 == dihedrant(14, (), (0, 1, 9, 11))
    assert metrics(dih28).regular_degree == 4


def test_dihedrant_disconnected_rotation_only():
    g = dihedrant(4, (1, 3), ())
    m = metrics(g)
    assert not m.connected
    comps = {frozenset(distance_from(g, v)) for v in range(8)}
    assert len(comps) == 2 and all(len(c) == 4 for c in comps)


def distance_from(g, v):
    seen = {v}
    frontier = [v]
    while frontier:
        nxt = []
        for x in frontier:
            for y in g.neighbors(x):
                if y not in seen:
                    seen.add(y)
                    nxt.append(y)
        frontier = nxt
    return seen


def test_dihedrant_validation():
    with pytest.raises(ValueError):
        dihedrant(5, (0,), ())
    with pytest.raises(ValueError):
        dihedrant(5, (1,), ())  # 1 != -1 mod 5


def test_dihedrant_vertex_transitive(dih28):
    grp = PermGroup(construct.left_dihedral_generators(14))
    for gen in grp.generators:
        assert is_automorphism(dih28, gen)
    assert grp.is_transitive()


def test_quotient_graph_trivial_partitions():
    g = cycle(6)
    same, dropped = quotient_graph(g, [(i,) for i in range(6)])
    assert same == g and dropped == 0
    single, dropped = quotient_graph(g, [tuple(range(6))])
    assert single.n == 1 and single.edge_count() == 0 and dropped == 6


def test_quotient_gamma25_scalar_orbits():
    cells = construct.scalar_orbit_cells(2, 5, 2)
    assert all(len(c) == 2 for c in cells)
    g, dropped = quotient_graph(construct.graph_dq(2, 5).graph, cells)
    assert dropped == 0
    assert g.n == 24
    assert g == construct.graph_dqn(2, 5, 2)


def test_diagram_renderings():
    diag = gdddp_diagram(4, 1, 1)
    dot = diagram_to_dot(diag)
    assert dot.startswith("graph") and 'label="12"' in dot and "c0 -- c1" in dot
    ascii_art = diagram_to_ascii(diag)
    assert "(12)" in ascii_art and "--4/1--" in ascii_art


def test_walk_count_identity_along_distance_partition(dih28):
    # k_{i-1} b_{i-1} = k_i c_i along the first two distances
    rep = check_equitable(dih28, six_cell_partition(dih28, 0))
    sizes, q = rep.diagram.sizes, rep.diagram.q
    assert sizes[0] * q[0][1] == sizes[1] * q[1][0]
    assert sizes[1] * q[1][2] == sizes[2] * q[2][1]
