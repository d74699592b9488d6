"""Incidence structures, GDD verification, duals, polarities."""

from __future__ import annotations

import pytest

from gddkit import construct
from gddkit.design import (
    GDDParams,
    IncidenceStructure,
    dual,
    incidence_graph,
    infer_dual_groups,
    verify_dual_property,
    verify_gdd,
    verify_polarity,
)
from gddkit.graph import metrics
from gddkit.symmetry import Permutation


def test_dual_transposes_incidence():
    s = IncidenceStructure.from_blocks(3, [[0, 1], [1, 2], [2]])
    d = dual(s)
    assert d.num_points == 3 and d.num_blocks == 3
    n = s.incidence_matrix()
    nt = d.incidence_matrix()
    assert all(n[i][j] == nt[j][i] for i in range(3) for j in range(3))
    assert dual(d) == s


def test_dual_of_symmetric_incidence_is_itself():
    s = IncidenceStructure.from_blocks(3, [[0, 1], [0, 1, 2], [1, 2]])
    mat = s.incidence_matrix()
    assert all(mat[i][j] == mat[j][i] for i in range(3) for j in range(3))
    assert dual(s) == s


def test_dual_block_sizes_of_d23():
    s, _, _ = construct.design_dq(2, 3)
    d = dual(s)
    assert d.num_points == 8 and d.num_blocks == 8
    # block sizes of the dual = point degrees of the primal, by enumeration
    degrees = [sum(1 for b in s.blocks if p in b) for p in range(s.num_points)]
    assert sorted(len(b) for b in d.blocks) == sorted(degrees) == [3] * 8


def test_verify_gdd_d23_and_deletion():
    s, groups, params = construct.design_dq(2, 3)
    assert params == GDDParams(2, 4, 3, 0, 1)
    assert verify_gdd(s, groups, params).passed
    broken = IncidenceStructure(s.num_points, s.blocks[1:])
    rep = verify_gdd(broken, groups, params)
    assert not rep.passed
    kind, p, q, found, wanted = rep.witness
    assert kind == "pair" and found < wanted  # some pair lost coverage


def test_verify_gdd_degenerate_group_size_one():
    s, groups, params = construct.design_dq(3, 2)
    assert params.n == 1
    rep = verify_gdd(s, groups, params)
    assert rep.passed and rep.degenerate


def test_verify_gdd_rejects_bad_partition():
    s, groups, params = construct.design_dq(2, 3)
    with pytest.raises(ValueError):
        verify_gdd(s, [[0, 1], [2, 3]], params)


def test_infer_dual_groups_d23():
    s, _, params = construct.design_dq(2, 3)
    classes = infer_dual_groups(s, params)
    assert len(classes) == 4 and all(len(c) == 2 for c in classes)
    assert verify_dual_property(s, params).passed


def test_infer_dual_groups_unequal_classes():
    s = IncidenceStructure.from_blocks(4, [[0, 1], [2, 3], [0, 2]])
    with pytest.raises(ValueError, match="classes"):
        infer_dual_groups(s, GDDParams(1, 3, 2, 0, 1))


def test_infer_dual_groups_requires_lambda1_zero():
    s, _, params = construct.design_dq(2, 3)
    with pytest.raises(ValueError, match="lambda1"):
        infer_dual_groups(s, params._replace(lambda1=1))


def test_infer_dual_groups_28_vertex(dih28):
    _, cells, params = construct.extract_gdddp_from_dihedrant(dih28)
    structure = construct.extract_gdddp_from_dihedrant(dih28)[0]
    classes = infer_dual_groups(structure, params)
    assert len(classes) == 7 and all(len(c) == 2 for c in classes)


def test_incidence_graph_star_and_designs():
    star = incidence_graph(IncidenceStructure.from_blocks(5, [[0, 1, 2, 3, 4]]))
    assert star.n == 6 and star.degree(5) == 5 and star.edge_count() == 5
    g = incidence_graph(construct.design_dq(2, 3)[0])
    m = metrics(g)
    assert g.n == 16 and m.bipartite and m.regular_degree == 3
    g33 = incidence_graph(construct.design_dq(3, 3)[0])
    assert g33.n == 52 and metrics(g33).regular_degree == 9


def test_polarity_on_d23():
    s, _, _ = construct.design_dq(2, 3)
    _, phi = construct.singer_polarity(2, 3)
    rep = verify_polarity(s, phi)
    assert rep.is_polarity


def test_polarity_rejects_non_involution():
    # composing with a rotation keeps a polarity (reflections of the
    # dihedral group are involutions); a transvection action breaks it
    s, _, _ = construct.design_dq(2, 3)
    rho, phi = construct.singer_polarity(2, 3)
    rep = verify_polarity(s, rho * phi)
    assert rep.is_polarity  # still a reflection
    trans = construct.gl_action_generators(2, 3)[1]
    rep2 = verify_polarity(s, trans * phi)
    assert not rep2.is_polarity
    assert rep2.witness[0] == "not-involution"


def test_polarity_side_swap_required():
    s, _, _ = construct.design_dq(2, 3)
    with pytest.raises(ValueError, match="block"):
        verify_polarity(s, Permutation(range(16)))


def test_polarity_of_symmetric_incidence():
    s = IncidenceStructure.from_blocks(3, [[0, 1], [0, 1, 2], [1, 2]])
    swap = Permutation([3, 4, 5, 0, 1, 2])
    rep = verify_polarity(s, swap)
    mat = s.incidence_matrix()
    assert rep.is_polarity
    assert rep.absolute_points == sum(mat[i][i] for i in range(3)) == 2


def test_polarity_reordering_symmetrizes_incidence():
    # order blocks by the polarity image of each point: the incidence
    # matrix becomes symmetric with absolute points on the diagonal
    s, _, _ = construct.design_dq(2, 3)
    _, phi = construct.singer_polarity(2, 3)
    rep = verify_polarity(s, phi)
    np_ = s.num_points
    reordered = [s.blocks[phi(p) - np_] for p in range(np_)]
    mat = [[1 if p in b else 0 for b in reordered] for p in range(np_)]
    assert all(mat[i][j] == mat[j][i] for i in range(np_) for j in range(np_))
    assert sum(mat[i][i] for i in range(np_)) == rep.absolute_points


def test_double_dual_preserves_gdd_verdict():
    s, groups, params = construct.design_dq(2, 4)
    assert verify_gdd(s, groups, params).passed
    assert verify_gdd(dual(dual(s)), groups, params).passed
