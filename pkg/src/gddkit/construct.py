"""Constructions: the hyperplane design on nonzero vectors and its
incidence graph, the rotation/polarity pair generating a regular
dihedral group, scalar quotients, cyclic relative difference sets and
their dihedrants, design extraction from graphs, and bi-coset graphs.

Labeling conventions:

* Points of the design on GF(q)^d are the nonzero vectors in encoding
  order; block y is H_y = {u != 0 : y^T u = 1}, the affine hyperplanes
  avoiding the origin (x + H with x not in H equals H_y for the unique
  y with y^T x = 1 and y orthogonal to H).
* Incidence-graph vertices are [points | blocks]; vertex N + j is the
  block labeled by the j-th nonzero vector.
* The base points of the rotation orderings are u_0 = v_0 = e_1; the
  incidence between u_i and H_{v_j} depends only on i - j, which makes
  the choice immaterial (verified at construction time).
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Sequence

from . import design as dsg
from .design import GDDParams, IncidenceStructure
from .gf import (
    FieldElement,
    FiniteField,
    MatrixGF,
    dot,
    field_of_order,
    gl_generators,
    nonzero_vectors,
    point_block_action,
    prime_power,
    primitive_element,
    singer_matrix,
    vec_encoding,
)
from .graph import Graph, dihedrant, gdddp_diagram, metrics, quotient_graph
from .symmetry import Permutation


@dataclass(frozen=True)
class LabeledGamma:
    """Incidence graph of the hyperplane design, with its vertex labels."""

    graph: Graph
    field: FiniteField
    d: int
    points: tuple        # nonzero vectors, encoding order
    block_labels: tuple  # ditto

    @property
    def num_points(self) -> int:
        return len(self.points)

    def point_vertex(self, i: int) -> int:
        return i

    def block_vertex(self, j: int) -> int:
        return len(self.points) + j


def design_params(d: int, q: int) -> GDDParams:
    return GDDParams(
        n=q - 1,
        m=(q**d - 1) // (q - 1),
        k=q ** (d - 1),
        lambda1=0,
        lambda2=q ** (d - 2),
    )


@lru_cache(maxsize=32)
def design_dq(d: int, q: int):
    """The GDD on the nonzero vectors of GF(q)^d: groups are the scalar
    classes, blocks the affine hyperplanes missing the origin. Returns
    (structure, groups, params); q = 2 gives group size 1 (degenerate
    but valid)."""
    if d < 2:
        raise ValueError("dimension must be >= 2")
    field = field_of_order(q)
    vectors = nonzero_vectors(field, d)
    index = {vec_encoding(v): i for i, v in enumerate(vectors)}
    one = field.one
    blocks = []
    for y in vectors:
        blocks.append(frozenset(index[vec_encoding(u)] for u in vectors if dot(y, u) == one))
    structure = IncidenceStructure(len(vectors), tuple(blocks))
    seen: set[int] = set()
    groups = []
    for i, v in enumerate(vectors):
        if i in seen:
            continue
        cell = set()
        for alpha in field.nonzero_elements():
            cell.add(index[vec_encoding(tuple(alpha * x for x in v))])
        groups.append(frozenset(cell))
        seen |= cell
    return structure, tuple(groups), design_params(d, q)


@lru_cache(maxsize=32)
def graph_dq(d: int, q: int) -> LabeledGamma:
    """Incidence graph on 2(q^d - 1) vertices, q^(d-1)-regular."""
    structure, _, _ = design_dq(d, q)
    field = field_of_order(q)
    vectors = tuple(nonzero_vectors(field, d))
    return LabeledGamma(
        graph=dsg.incidence_graph(structure),
        field=field,
        d=d,
        points=vectors,
        block_labels=vectors,
    )


def singer_polarity(d: int, q: int) -> tuple[Permutation, Permutation]:
    """(rho, phi) on the vertices of graph_dq(d, q): rho is the
    rotation induced by the Singer matrix, phi the polarity
    u_i <-> H_{v_{-i}} built from the two rotation orderings.

    phi is verified to be a polarity and to square to the identity;
    failure raises (it would mean a construction bug, not bad input).
    """
    gamma = graph_dq(d, q)
    structure, _, _ = design_dq(d, q)
    a_z = singer_matrix(d, q)
    rho = point_block_action(a_z, gamma.points, gamma.block_labels)
    n = len(gamma.points)
    index = {vec_encoding(v): i for i, v in enumerate(gamma.points)}
    e1 = tuple(
        gamma.field.one if i == 0 else gamma.field.zero for i in range(d)
    )
    # u_{i+1} = A_z u_i ; v_{i+1} = (A_z^T)^{-1} v_i
    u_order = [index[vec_encoding(e1)]]
    v_order = [index[vec_encoding(e1)]]
    at_inv = a_z.transpose().inverse()
    u, v = e1, e1
    for _ in range(n - 1):
        u = a_z.apply(u)
        v = at_inv.apply(v)
        u_order.append(index[vec_encoding(u)])
        v_order.append(index[vec_encoding(v)])
    if len(set(u_order)) != n or len(set(v_order)) != n:
        raise RuntimeError("rotation orderings do not sweep all nonzero vectors")
    img = [0] * (2 * n)
    for i in range(n):
        img[u_order[i]] = n + v_order[(-i) % n]
        img[n + v_order[i]] = u_order[(-i) % n]
    phi = Permutation(img)
    if any(phi(phi(x)) != x for x in range(2 * n)):
        raise RuntimeError("polarity candidate is not an involution")
    report = dsg.verify_polarity(structure, phi)
    if not report.is_polarity:
        raise RuntimeError(f"polarity verification failed: {report.witness}")
    return rho, phi


def gl_action_generators(d: int, q: int) -> list[Permutation]:
    """The GL(d, q) generators as permutations of graph_dq's vertices."""
    gamma = graph_dq(d, q)
    return [
        point_block_action(m, gamma.points, gamma.block_labels)
        for m in gl_generators(d, q)
    ]


def scalar_orbit_cells(d: int, q: int, n: int) -> tuple[tuple[int, ...], ...]:
    """Orbit cells of the order-(q-1)/n scalar subgroup acting on the
    vertices of graph_dq (points by x -> cx, blocks by y -> c^{-1} y)."""
    gamma = graph_dq(d, q)
    field = gamma.field
    alpha = primitive_element(field)
    c = alpha**n
    index = {vec_encoding(v): i for i, v in enumerate(gamma.points)}
    size = (q - 1) // n
    npts = len(gamma.points)
    cells = []
    seen: set[int] = set()
    for start in range(2 * npts):
        if start in seen:
            continue
        cell = []
        if start < npts:
            vec = gamma.points[start]
            mult = c
        else:
            vec = gamma.block_labels[start - npts]
            mult = c.inverse()
        cur = vec
        for _ in range(size):
            idx = index[vec_encoding(cur)] + (0 if start < npts else npts)
            cell.append(idx)
            cur = tuple(mult * x for x in cur)
        if vec_encoding(cur) != vec_encoding(vec):
            raise RuntimeError("scalar orbit did not close after (q-1)/n steps")
        cells.append(tuple(sorted(cell)))
        seen |= set(cell)
    return tuple(cells)


def graph_dqn(d: int, q: int, n: int) -> Graph:
    """Quotient of graph_dq(d, q) by the scalar subgroup of order
    (q-1)/n; 2n(q^d-1)/(q-1) vertices with the six-cell diagram of
    parameters (q^(d-1), q^(d-2)(q-1)/n, n-1)."""
    if n < 2:
        raise ValueError("n must be >= 2")
    if (q - 1) % n:
        raise ValueError("n must divide q-1")
    gamma = graph_dq(d, q)
    cells = scalar_orbit_cells(d, q, n)
    quotient, dropped = quotient_graph(gamma.graph, cells)
    if dropped:
        raise RuntimeError("scalar quotient dropped intra-orbit edges; construction bug")
    return quotient


# ---------------------------------------------------------------------------
# cyclic relative difference sets

@dataclass(frozen=True)
class RDSSpec:
    """Verified (m, n; k, lam) cyclic relative difference set in
    Z_modulus relative to the order-n subgroup of index multiples of m."""

    modulus: int
    n: int
    m: int
    residues: tuple[int, ...]
    k: int
    lam: int


def verify_rds(d_set: Sequence[int], m: int, n: int) -> RDSSpec:
    """Check the difference-multiset condition: every element outside
    the subgroup N = <m> has exactly lam = k(k-1)/(mn-n) difference
    representations, and no nonzero element of N has any.

    Raises ValueError (with a witness element) on failure.
    """
    modulus = m * n
    residues = tuple(sorted(x % modulus for x in d_set))
    if len(set(residues)) != len(residues):
        raise ValueError("difference set contains repeated residues")
    k = len(residues)
    forbidden = {(m * i) % modulus for i in range(n)}
    denom = modulus - n
    if denom <= 0 or (k * (k - 1)) % denom:
        raise ValueError(
            f"k(k-1) = {k * (k - 1)} is not divisible by mn - n = {denom}"
        )
    lam = k * (k - 1) // denom
    counts = [0] * modulus
    for r1 in residues:
        for r2 in residues:
            if r1 != r2:
                counts[(r1 - r2) % modulus] += 1
    for x in range(1, modulus):
        want = 0 if x in forbidden else lam
        if counts[x] != want:
            raise ValueError(
                f"difference {x} has {counts[x]} representations, wanted {want}"
            )
    return RDSSpec(modulus=modulus, n=n, m=m, residues=residues, k=k, lam=lam)


def dihedrant_from_rds(spec: RDSSpec) -> Graph:
    """Dih(2mn, {}, D): bipartite, k-regular, on 2mn vertices."""
    return dihedrant(spec.modulus, (), spec.residues)


def left_dihedral_generators(n: int) -> list[Permutation]:
    """Left-regular action of the dihedral group on the dihedrant
    vertex encoding (i -> a^i, n + j -> a^j b): left multiplication is
    an automorphism of any Cayley graph of the group."""
    rot = Permutation(
        [(i + 1) % n for i in range(n)] + [n + ((i + 1) % n) for i in range(n)]
    )
    refl = Permutation(
        [n + ((-i) % n) for i in range(n)] + [(-i) % n for i in range(n)]
    )
    return [rot, refl]


def extract_gdddp_from_dihedrant(g: Graph):
    """Recover (structure, groups, params) from a bipartite diameter-4
    graph with the six-cell diagram shape: points are vertex 0's side,
    blocks are the neighbourhoods of the other side, and the group of a
    point x is {x} plus the points at distance 4 from x.

    Verifies the GDD axioms and the dual property before returning.
    """
    m = metrics(g)
    if not (m.connected and m.bipartite):
        raise ValueError("graph must be connected and bipartite")
    if m.diameter != 4:
        raise ValueError(f"diameter is {m.diameter}, need 4")
    if m.regular_degree is None:
        raise ValueError("graph must be regular")
    side0 = sorted(v for v in range(g.n) if m.bipartition_mask >> v & 1)
    if 0 not in side0:
        side0 = sorted(set(range(g.n)) - set(side0))
    side1 = sorted(set(range(g.n)) - set(side0))
    pindex = {v: i for i, v in enumerate(side0)}
    blocks = []
    for b in side1:
        blocks.append(frozenset(pindex[w] for w in g.neighbors(b)))
    structure = IncidenceStructure(len(side0), tuple(blocks))
    cells = []
    seen: set[int] = set()
    for v in side0:
        if pindex[v] in seen:
            continue
        cell = {pindex[v]}
        for w in side0:
            if m.distances[v][w] == 4:
                cell.add(pindex[w])
        cells.append(frozenset(cell))
        seen |= cell
    sizes = {len(c) for c in cells}
    if len(sizes) != 1:
        raise ValueError(f"distance-4 closures have unequal sizes {sorted(sizes)}")
    covered = set().union(*cells)
    if covered != set(range(len(side0))) or sum(len(c) for c in cells) != len(side0):
        raise ValueError("distance-4 closures do not partition the points")
    n0 = sizes.pop()
    k = m.regular_degree
    x, y = side0[0], next(w for w in side0 if m.distances[side0[0]][w] == 2)
    lam2 = (g.rows[x] & g.rows[y]).bit_count()
    params = GDDParams(n=n0, m=len(side0) // n0, k=k, lambda1=0, lambda2=lam2)
    gdd = dsg.verify_gdd(structure, cells, params)
    if not gdd.passed:
        raise ValueError(f"GDD axioms fail on the extracted design: {gdd.witness}")
    dual_rep = dsg.verify_dual_property(structure, params)
    if not dual_rep.passed:
        raise ValueError(f"dual property fails on the extracted design: {dual_rep.witness}")
    return structure, tuple(cells), params


def rds_parameters_admissible(q: int, d: int, n: int) -> bool:
    """Divisibility criterion for the existence of a cyclic relative
    difference set with parameters ((q^d-1)/(q-1), n; q^(d-1),
    q^(d-2)(q-1)/n): n | q-1 when q is odd or d is even, and n | 2(q-1)
    when q is even and d is odd."""
    prime_power(q)
    if d < 2 or n < 1:
        raise ValueError("need d >= 2 and n >= 1")
    if q % 2 == 0 and d % 2 == 1:
        return (2 * (q - 1)) % n == 0
    return (q - 1) % n == 0


# ---------------------------------------------------------------------------
# bi-coset graphs

GL_ENUMERATION_CAP = 100_000


def _gl_order(d: int, q: int) -> int:
    out = 1
    for i in range(d):
        out *= q**d - q**i
    return out


def _enumerate_gl(d: int, q: int) -> list[MatrixGF]:
    expected = _gl_order(d, q)
    if expected > GL_ENUMERATION_CAP:
        raise ValueError(f"|GL({d},{q})| = {expected} exceeds the enumeration cap")
    gens = gl_generators(d, q)
    seen = {}
    frontier = [MatrixGF.identity(gens[0].field, d)]
    for mtx in frontier:
        seen[mtx] = True
    while frontier:
        nxt = []
        for mtx in frontier:
            for s in gens:
                prod = mtx * s
                if prod not in seen:
                    seen[prod] = True
                    nxt.append(prod)
        frontier = nxt
    if len(seen) != expected:
        raise RuntimeError(
            f"generated {len(seen)} matrices, |GL({d},{q})| = {expected}"
        )
    return list(seen)


def bicoset_graph(d: int, q: int) -> Graph:
    """Bipartite graph on the right cosets of R (first row e_1) and L
    (first column e_1) in GL(d, q); Rg1 is adjacent to Lg2 iff
    g2 g1^{-1} lies in the set product LR.

    Coset invariants: Rg is determined by the first row of g, Lg by the
    first column of g^{-1}; adjacency via representatives is
    well-defined because L (g2 g1^{-1}) R is contained in LR.
    """
    elements = _enumerate_gl(d, q)
    field = elements[0].field
    e1 = tuple([field.one] + [field.zero] * (d - 1))

    def first_row_key(mtx: MatrixGF) -> int:
        return vec_encoding(mtx.rows[0])

    r_sub = [mtx for mtx in elements if mtx.rows[0] == e1]
    l_sub = [mtx for mtx in elements if tuple(row[0] for row in mtx.rows) == e1]
    lr_keys = set()
    for l_m in l_sub:
        for r_m in r_sub:
            lr_keys.add((l_m * r_m)._key)
    r_reps: dict[int, MatrixGF] = {}
    l_reps: dict[int, MatrixGF] = {}
    for mtx in elements:
        r_reps.setdefault(first_row_key(mtx), mtx)
        inv = mtx.inverse()
        l_reps.setdefault(vec_encoding(tuple(row[0] for row in inv.rows)), mtx)
    r_keys = sorted(r_reps)
    l_keys = sorted(l_reps)
    nr = len(r_keys)
    edges = []
    l_inverses = [(j, l_reps[key]) for j, key in enumerate(l_keys)]
    for i, rk in enumerate(r_keys):
        g1_inv = r_reps[rk].inverse()
        for j, g2 in l_inverses:
            if ((g2 * g1_inv))._key in lr_keys:
                edges.append((i, nr + j))
    return Graph.from_edges(nr + len(l_keys), edges)


def expected_quotient_diagram(d: int, q: int, n: int):
    """Six-cell diagram parameters of graph_dqn(d, q, n)."""
    return gdddp_diagram(q ** (d - 1), q ** (d - 2) * (q - 1) // n, n - 1)
