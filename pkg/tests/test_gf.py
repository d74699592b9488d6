"""Finite field arithmetic, Singer matrices, GL generators, actions."""

from __future__ import annotations

import itertools
import random

import pytest

from gddkit import construct
from gddkit.gf import (
    MatrixGF,
    ff_make,
    gl_generators,
    nonzero_vectors,
    point_block_action,
    prime_power,
    primitive_element,
    singer_matrix,
    vec_encoding,
)
from gddkit.graph import metrics
from gddkit.symmetry import PermGroup, is_automorphism


def brute_irreducible_cubics_gf2():
    """Oracle: a cubic over GF(2) is irreducible iff it has no root.
    Returns the coefficient tuples (low first, monic) in encoding order."""
    out = []
    for n in range(8):
        c = (n & 1, (n >> 1) & 1, (n >> 2) & 1, 1)
        has_root = any(
            (c[0] + c[1] * x + c[2] * x * x + x * x * x) % 2 == 0 for x in (0, 1)
        )
        if not has_root:
            out.append(c)
    return out


def test_modulus_examples():
    assert ff_make(3, 1).modulus == (0, 1)       # plain Z_3
    assert ff_make(2, 2).modulus == (1, 1, 1)    # the unique irreducible quadratic
    oracle = brute_irreducible_cubics_gf2()
    assert oracle[0] == (1, 1, 0, 1)             # x^3 + x + 1 comes first
    assert ff_make(2, 3).modulus == oracle[0]


def test_modulus_is_irreducible_by_enumeration():
    # no product of two lower-degree monic polynomials reproduces it
    f = ff_make(2, 4).modulus
    for da in (1, 2):
        db = 4 - da
        for a in itertools.product(range(2), repeat=da):
            for b in itertools.product(range(2), repeat=db):
                pa = list(a) + [1]
                pb = list(b) + [1]
                prod = [0] * 5
                for i, x in enumerate(pa):
                    for j, y in enumerate(pb):
                        prod[i + j] = (prod[i + j] + x * y) % 2
                assert tuple(prod) != f


def test_ff_make_rejects_bad_input():
    with pytest.raises(ValueError):
        ff_make(4, 1)
    with pytest.raises(ValueError):
        ff_make(3, 0)
    with pytest.raises(ValueError):
        prime_power(12)


def test_primitive_element_examples():
    assert primitive_element(ff_make(3, 1)).encoding == 2
    z4 = primitive_element(ff_make(2, 2))
    assert z4.encoding == 2 and z4.multiplicative_order() == 3
    # brute-force order oracle on GF(7): 2 has order 3, 3 has order 6
    f7 = ff_make(7, 1)
    orders = {}
    for a in f7.nonzero_elements():
        acc, o = a, 1
        while acc != f7.one:
            acc, o = acc * a, o + 1
        orders[a.encoding] = o
    assert orders[2] == 3 and orders[3] == 6
    assert primitive_element(f7).encoding == 3


@pytest.mark.parametrize("p,e", [(2, 3), (3, 2), (5, 1), (2, 2), (3, 3)])
def test_field_axioms_random_samples(p, e):
    field = ff_make(p, e)
    rng = random.Random(p * 100 + e)
    elems = list(field.elements())
    for _ in range(60):
        a, b, c = (rng.choice(elems) for _ in range(3))
        assert (a + b) + c == a + (b + c)
        assert (a * b) * c == a * (b * c)
        assert a * (b + c) == a * b + a * c
        assert a + b == b + a and a * b == b * a
        if not a.is_zero():
            assert a * a.inverse() == field.one
    # Frobenius is additive
    for a, b in itertools.product(elems, repeat=2):
        assert (a + b) ** p == a**p + b**p


@pytest.mark.parametrize("d,q", [(2, 2), (2, 3), (3, 2), (2, 4), (2, 5), (3, 3)])
def test_singer_matrix_order(d, q):
    m = singer_matrix(d, q)
    n = q**d - 1
    ident = MatrixGF.identity(m.field, d)
    assert m**n == ident
    # no proper divisor exponent gives the identity
    for r in range(2, n + 1):
        if n % r == 0:
            assert m ** (n // r) != ident
    # acts transitively on nonzero vectors
    e1 = tuple([m.field.one] + [m.field.zero] * (d - 1))
    seen = set()
    v = e1
    for _ in range(n):
        seen.add(vec_encoding(v))
        v = m.apply(v)
    assert len(seen) == n


def test_singer_matrix_pinned_conventions():
    # companion acting on columns, last column = negated low coefficients
    assert singer_matrix(2, 2)._key == ((0, 1), (1, 1))
    # minimal polynomial of a primitive element of GF(8): x^3 + x + 1
    assert singer_matrix(3, 2)._key == ((0, 0, 1), (1, 0, 1), (0, 1, 0))


def gl_order(d, q):
    out = 1
    for i in range(d):
        out *= q**d - q**i
    return out


@pytest.mark.parametrize("d,q,expected", [(2, 2, 6), (2, 3, 48), (3, 2, 168)])
def test_gl_generators_generate_gl(d, q, expected):
    assert gl_order(d, q) == expected  # formula oracle
    # order of the generated matrix group, by closure
    gens = gl_generators(d, q)
    seen = {MatrixGF.identity(gens[0].field, d)}
    frontier = list(seen)
    while frontier:
        nxt = []
        for m in frontier:
            for s in gens:
                t = m * s
                if t not in seen:
                    seen.add(t)
                    nxt.append(t)
        frontier = nxt
    assert len(seen) == expected
    # and via the permutation action
    perms = construct.gl_action_generators(d, q)
    assert PermGroup(perms).order() == expected


def test_point_block_action_identity_and_scalar():
    gamma = construct.graph_dq(2, 3)
    field = gamma.field
    ident = MatrixGF.identity(field, 2)
    assert point_block_action(ident, gamma.points, gamma.block_labels).is_identity()
    alpha = primitive_element(field)
    scalar = MatrixGF(field, [[alpha, field.zero], [field.zero, alpha]])
    act = point_block_action(scalar, gamma.points, gamma.block_labels)
    # fixes every projective class G_x setwise
    _, groups, _ = construct.design_dq(2, 3)
    for cell in groups:
        assert {act(p) for p in cell} == set(cell)


def test_point_block_action_composition_and_automorphism():
    gamma = construct.graph_dq(2, 3)
    rng = random.Random(5)
    gens = gl_generators(2, 3)
    mats = [gens[rng.randrange(3)] * gens[rng.randrange(3)] for _ in range(8)]
    for m1 in mats[:4]:
        for m2 in mats[4:]:
            a12 = point_block_action(m1 * m2, gamma.points, gamma.block_labels)
            a1 = point_block_action(m1, gamma.points, gamma.block_labels)
            a2 = point_block_action(m2, gamma.points, gamma.block_labels)
            # (M1 M2) x = M1 (M2 x): action(M2) runs first, and our
            # Permutation product applies left to right
            assert a12 == a2 * a1
    for m in mats:
        assert is_automorphism(gamma.graph, point_block_action(m, gamma.points, gamma.block_labels))


def test_singer_action_is_single_cycle_on_points():
    gamma = construct.graph_dq(2, 3)
    rho = point_block_action(singer_matrix(2, 3), gamma.points, gamma.block_labels)
    npts = len(gamma.points)
    point_cycles = [c for c in rho.cycles() if c[0] < npts]
    assert len(point_cycles) == 1 and len(point_cycles[0]) == 8


def test_singular_matrix_rejected():
    field = ff_make(3, 1)
    zero = MatrixGF(field, [[field.zero, field.zero], [field.zero, field.zero]])
    gamma = construct.graph_dq(2, 3)
    with pytest.raises(ValueError):
        point_block_action(zero, gamma.points, gamma.block_labels)
    with pytest.raises(ValueError):
        zero.inverse()


def test_nonzero_vectors_count():
    field = ff_make(2, 2)
    assert len(nonzero_vectors(field, 2)) == 15
    assert metrics(construct.graph_dq(2, 4).graph).regular_degree == 4
