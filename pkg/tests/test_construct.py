"""Constructions: designs, incidence graphs, polarities, quotients,
difference sets, extraction, admissibility, bi-coset graphs."""

from __future__ import annotations

import pytest

from conftest import cycle
from gddkit import construct
from gddkit.design import GDDParams, verify_dual_property, verify_gdd
from gddkit.gf import vec_encoding, dot
from gddkit.graph import check_equitable, gdddp_diagram, metrics, six_cell_partition
from gddkit.spectral import adjacency_algebra_dimension, poly_from_squares, verify_annihilating_polynomial
from gddkit.symmetry import PermGroup, are_isomorphic, is_dihedral_regular


@pytest.mark.parametrize(
    "d,q,points,expected",
    [
        (2, 3, 8, GDDParams(2, 4, 3, 0, 1)),
        (3, 3, 26, GDDParams(2, 13, 9, 0, 3)),
        (2, 4, 15, GDDParams(3, 5, 4, 0, 1)),
        (3, 2, 7, GDDParams(1, 7, 4, 0, 2)),
    ],
)
def test_design_dq_parameters(d, q, points, expected):
    s, groups, params = construct.design_dq(d, q)
    assert params == expected
    assert s.num_points == s.num_blocks == points
    assert verify_gdd(s, groups, params).passed
    assert verify_dual_property(s, params).passed


def test_graph_dq_22_is_c6():
    g = construct.graph_dq(2, 2).graph
    assert g.n == 6 and metrics(g).regular_degree == 2 and metrics(g).connected
    assert are_isomorphic(g, cycle(6))


def test_graph_dq_23_spectrum(gamma23):
    m = metrics(gamma23)
    assert gamma23.n == 16 and m.diameter == 4
    assert adjacency_algebra_dimension(gamma23) == 6
    assert verify_annihilating_polynomial(gamma23, poly_from_squares([9, 3, 1]))


def test_graph_dq_33_matches_diagram(gamma33):
    assert gamma33.n == 52
    rep = check_equitable(gamma33, six_cell_partition(gamma33, 0))
    assert rep.diagram == gdddp_diagram(9, 3, 1)


@pytest.mark.parametrize("d,q", [(2, 3), (3, 2), (2, 4), (3, 3)])
def test_singer_polarity_properties(d, q):
    rho, phi = construct.singer_polarity(d, q)
    gamma = construct.graph_dq(d, q)
    n = q**d - 1
    assert (phi * phi).is_identity()
    grp = PermGroup([rho, phi])
    assert grp.order() == 2 * n == gamma.graph.n
    assert is_dihedral_regular(grp, gamma.graph)
    # regular: transitive with trivial point stabilizer (order == V)
    assert grp.is_transitive()


def test_incidence_depends_only_on_index_difference():
    # v_j^T u_i = e1^T A^(i-j) e1: circulant structure of the labels
    from gddkit.gf import singer_matrix

    d, q = 2, 3
    gamma = construct.graph_dq(d, q)
    a_z = singer_matrix(d, q)
    at_inv = a_z.transpose().inverse()
    field = gamma.field
    e1 = tuple([field.one] + [field.zero] * (d - 1))
    u, us = e1, []
    v, vs = e1, []
    n = q**d - 1
    for _ in range(n):
        us.append(u)
        vs.append(v)
        u = a_z.apply(u)
        v = at_inv.apply(v)
    for delta in range(n):
        vals = {dot(vs[j], us[(j + delta) % n]).encoding for j in range(n)}
        assert len(vals) == 1


def test_graph_dqn_252(quotient252):
    assert quotient252.n == 24
    m = metrics(quotient252)
    assert m.regular_degree == 5 and m.diameter == 4 and m.bipartite
    rep = check_equitable(quotient252, six_cell_partition(quotient252, 0))
    assert rep.diagram == gdddp_diagram(5, 2, 1)
    assert construct.expected_quotient_diagram(2, 5, 2) == gdddp_diagram(5, 2, 1)
    assert adjacency_algebra_dimension(quotient252) == 6
    assert verify_annihilating_polynomial(quotient252, poly_from_squares([25, 5, 1]))


def test_graph_dqn_trivial_and_errors():
    assert construct.graph_dqn(2, 5, 4) == construct.graph_dq(2, 5).graph
    with pytest.raises(ValueError, match="divide"):
        construct.graph_dqn(2, 5, 3)
    with pytest.raises(ValueError):
        construct.graph_dqn(2, 5, 1)


def test_verify_rds_examples():
    spec = construct.verify_rds([0, 1, 9, 11], 7, 2)
    assert (spec.m, spec.n, spec.k, spec.lam) == (7, 2, 4, 1)
    spec52 = construct.verify_rds([0, 9, 11, 15, 18, 19, 20, 23, 25], 13, 2)
    assert (spec52.m, spec52.n, spec52.k, spec52.lam) == (13, 2, 9, 3)
    tiny = construct.verify_rds([0, 1], 2, 2)
    assert (tiny.m, tiny.n, tiny.k, tiny.lam) == (2, 2, 2, 1)


def brute_difference_counts(residues, modulus):
    counts = [0] * modulus
    for a in residues:
        for b in residues:
            if a != b:
                counts[(a - b) % modulus] += 1
    return counts


def test_verify_rds_against_brute_counts():
    counts = brute_difference_counts([0, 1], 4)
    assert counts == [0, 1, 0, 1]  # each of 1, 3 once; 2 (the subgroup) zero
    counts28 = brute_difference_counts([0, 1, 9, 11], 14)
    assert counts28[7] == 0 and all(counts28[x] == 1 for x in range(1, 14) if x != 7)


def test_verify_rds_failures():
    with pytest.raises(ValueError):
        construct.verify_rds([0, 1, 2], 3, 2)  # lambda not integral for k=3, mn=6? -> counts fail
    with pytest.raises(ValueError, match="representations"):
        construct.verify_rds([0, 1, 9, 12], 7, 2)
    with pytest.raises(ValueError, match="repeated"):
        construct.verify_rds([0, 1, 1], 7, 2)


def test_dihedrant_from_rds(dih28, dih52):
    assert dih28.n == 28 and metrics(dih28).regular_degree == 4
    assert dih52.n == 52 and metrics(dih52).regular_degree == 9
    rep = check_equitable(dih52, six_cell_partition(dih52, 0))
    assert rep.diagram == gdddp_diagram(9, 3, 1)  # same diagram as Gamma(3,3)
    c8 = construct.dihedrant_from_rds(construct.verify_rds([0, 1], 2, 2))
    assert are_isomorphic(c8, cycle(8))


@pytest.mark.parametrize(
    "fixture,params",
    [
        ("dih28", GDDParams(2, 7, 4, 0, 1)),
        ("dih52", GDDParams(2, 13, 9, 0, 3)),
        ("gamma23", GDDParams(2, 4, 3, 0, 1)),
    ],
)
def test_extract_gdddp(request, fixture, params):
    g = request.getfixturevalue(fixture)
    structure, cells, got = construct.extract_gdddp_from_dihedrant(g)
    assert got == params
    assert verify_gdd(structure, cells, got).passed


def test_extract_round_trip_matches_design(gamma23):
    from gddkit.design import incidence_graph

    structure, _, params = construct.extract_gdddp_from_dihedrant(gamma23)
    s0, _, params0 = construct.design_dq(2, 3)
    assert params == params0
    assert are_isomorphic(incidence_graph(structure), incidence_graph(s0))


def test_extract_rejects_wrong_shape():
    with pytest.raises(ValueError):
        construct.extract_gdddp_from_dihedrant(cycle(6))  # diameter 3


def test_rds_parameters_admissible():
    assert construct.rds_parameters_admissible(3, 2, 2)
    assert construct.rds_parameters_admissible(4, 3, 6)   # q even, d odd: 6 | 6
    assert not construct.rds_parameters_admissible(5, 3, 3)
    with pytest.raises(ValueError):
        construct.rds_parameters_admissible(6, 2, 1)


def test_verified_rds_instances_are_admissible():
    # (m, k) -> (q, d): m = (q^d-1)/(q-1), k = q^(d-1)
    for residues, m, n, q, d in [
        ([0, 1, 9, 11], 7, 2, 3, 2),
        ([0, 9, 11, 15, 18, 19, 20, 23, 25], 13, 2, 3, 3),
    ]:
        spec = construct.verify_rds(residues, m, n)
        assert spec.k == q ** (d - 1) and spec.m == (q**d - 1) // (q - 1)
        assert construct.rds_parameters_admissible(q, d, n)


def test_bicoset_graphs(gamma23):
    b22 = construct.bicoset_graph(2, 2)
    assert are_isomorphic(b22, construct.graph_dq(2, 2).graph)
    b23 = construct.bicoset_graph(2, 3)
    assert b23.n == 16
    m = metrics(b23)
    assert m.regular_degree == 3  # |LR| / |L| = 18 / 6
    assert are_isomorphic(b23, gamma23)


def test_bicoset_subgroup_sizes():
    from gddkit.construct import _enumerate_gl

    elements = _enumerate_gl(2, 3)
    assert len(elements) == 48
    field = elements[0].field
    e1 = (field.one, field.zero)
    r_sub = [m for m in elements if m.rows[0] == e1]
    l_sub = [m for m in elements if tuple(row[0] for row in m.rows) == e1]
    assert len(r_sub) == len(l_sub) == 6
    both = [m for m in r_sub if tuple(row[0] for row in m.rows) == e1]
    assert len(both) == 2  # |L n R|
    lr = {(a * b)._key for a in l_sub for b in r_sub}
    assert len(lr) == 18  # |L||R| / |L n R|


def test_bicoset_cap():
    with pytest.raises(ValueError, match="cap"):
        construct.bicoset_graph(3, 5)


def test_left_dihedral_generators_are_automorphisms(dih28):
    from gddkit.symmetry import is_automorphism

    for gen in construct.left_dihedral_generators(14):
        assert is_automorphism(dih28, gen)
