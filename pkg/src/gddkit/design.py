"""Incidence structures, duals, group-divisible designs, and polarities.

Blocks form a multiset: duplicates are allowed and counted with
multiplicity in all pair-coverage checks.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import NamedTuple, Sequence

from .graph import Graph
from .symmetry import Permutation


@dataclass(frozen=True)
class IncidenceStructure:
    num_points: int
    blocks: tuple[frozenset[int], ...]

    def __post_init__(self):
        for b in self.blocks:
            for p in b:
                if not 0 <= p < self.num_points:
                    raise ValueError("block contains an unknown point")

    @classmethod
    def from_blocks(cls, num_points: int, blocks: Sequence[Sequence[int]]) -> "IncidenceStructure":
        return cls(num_points, tuple(frozenset(b) for b in blocks))

    @property
    def num_blocks(self) -> int:
        return len(self.blocks)

    def incidence_matrix(self) -> list[list[int]]:
        return [
            [1 if p in b else 0 for b in self.blocks] for p in range(self.num_points)
        ]


class GDDParams(NamedTuple):
    n: int        # group size
    m: int        # number of groups
    k: int        # block size
    lambda1: int  # same-group pair coverage
    lambda2: int  # cross-group pair coverage


def group_partition(num_points: int, cells: Sequence[Sequence[int]]) -> tuple[frozenset[int], ...]:
    """Validate a partition of the points into equal-size groups."""
    norm = tuple(frozenset(c) for c in cells)
    seen: set[int] = set()
    for c in norm:
        if not c:
            raise ValueError("empty group")
        if c & seen:
            raise ValueError("groups are not disjoint")
        seen |= c
    if seen != set(range(num_points)):
        raise ValueError("groups do not cover the point set")
    sizes = {len(c) for c in norm}
    if len(sizes) != 1:
        raise ValueError("groups have unequal sizes")
    return norm


def dual(s: IncidenceStructure) -> IncidenceStructure:
    """Swap points and blocks (transpose the incidence matrix); block j
    of the dual is the set of blocks through point j."""
    blocks = []
    for p in range(s.num_points):
        blocks.append(frozenset(j for j, b in enumerate(s.blocks) if p in b))
    return IncidenceStructure(s.num_blocks, tuple(blocks))


@dataclass(frozen=True)
class GDDReport:
    passed: bool
    degenerate: bool            # n == 1 or m == 1
    witness: tuple | None       # ("block-size", j, size) or ("pair", p, q, found, wanted)

    def __bool__(self):
        return self.passed


def verify_gdd(
    s: IncidenceStructure,
    groups: Sequence[Sequence[int]],
    params: GDDParams,
) -> GDDReport:
    """Every block has size k; same-group pairs lie in exactly lambda1
    blocks, cross-group pairs in exactly lambda2."""
    cells = group_partition(s.num_points, groups)
    n, m, k, l1, l2 = params
    degenerate = n == 1 or m == 1
    if len(cells) != m or any(len(c) != n for c in cells):
        return GDDReport(False, degenerate, ("groups", len(cells), m, n))
    if n * m != s.num_points:
        return GDDReport(False, degenerate, ("point-count", s.num_points, n * m))
    for j, b in enumerate(s.blocks):
        if len(b) != k:
            return GDDReport(False, degenerate, ("block-size", j, len(b)))
    group_of = {}
    for i, c in enumerate(cells):
        for p in c:
            group_of[p] = i
    counts = [[0] * s.num_points for _ in range(s.num_points)]
    for b in s.blocks:
        bl = sorted(b)
        for i, p in enumerate(bl):
            for q in bl[i + 1 :]:
                counts[p][q] += 1
    for p in range(s.num_points):
        for q in range(p + 1, s.num_points):
            want = l1 if group_of[p] == group_of[q] else l2
            if counts[p][q] != want:
                return GDDReport(False, degenerate, ("pair", p, q, counts[p][q], want))
    return GDDReport(True, degenerate, None)


def infer_dual_groups(s: IncidenceStructure, params: GDDParams) -> tuple[frozenset[int], ...]:
    """Group the blocks by the relation "disjoint as point sets".

    With lambda1 = 0 the dual's groups, if they exist, must be exactly
    the classes of this relation; raises ValueError (with a witness in
    the message) when the relation is not an equivalence with m classes
    of size n.
    """
    if params.lambda1 != 0:
        raise ValueError("dual-group inference is only defined for lambda1 = 0")
    nb = s.num_blocks
    adj = [set() for _ in range(nb)]
    for i in range(nb):
        for j in range(i + 1, nb):
            if not (s.blocks[i] & s.blocks[j]):
                adj[i].add(j)
                adj[j].add(i)
    unseen = set(range(nb))
    classes = []
    while unseen:
        start = min(unseen)
        comp = {start}
        frontier = [start]
        while frontier:
            nxt = []
            for x in frontier:
                for y in adj[x]:
                    if y not in comp:
                        comp.add(y)
                        nxt.append(y)
            frontier = nxt
        # every two blocks in a class must be disjoint (clique check)
        for x in comp:
            missing = comp - adj[x] - {x}
            if missing:
                y = min(missing)
                raise ValueError(
                    f"disjointness is not an equivalence: blocks {x},{y} "
                    f"meet but share a class"
                )
        classes.append(frozenset(comp))
        unseen -= comp
    sizes = {len(c) for c in classes}
    if len(classes) != params.m or sizes != {params.n}:
        raise ValueError(
            f"disjointness classes have shape {sorted(map(len, classes))}, "
            f"need {params.m} classes of size {params.n}"
        )
    return tuple(classes)


def verify_dual_property(s: IncidenceStructure, params: GDDParams) -> GDDReport:
    """The dual structure is again a GDD with the same parameters, with
    its groups forced by the disjointness relation (lambda1 = 0 case)."""
    groups = infer_dual_groups(s, params)
    return verify_gdd(dual(s), groups, params)


def incidence_graph(s: IncidenceStructure) -> Graph:
    """Bipartite graph on points + blocks; vertex num_points + j is block j."""
    edges = []
    for j, b in enumerate(s.blocks):
        for p in b:
            edges.append((p, s.num_points + j))
    return Graph.from_edges(s.num_points + s.num_blocks, edges)


@dataclass(frozen=True)
class PolarityReport:
    is_polarity: bool
    absolute_points: int | None
    witness: tuple | None

    def __bool__(self):
        return self.is_polarity


def verify_polarity(s: IncidenceStructure, sigma: Permutation) -> PolarityReport:
    """sigma (on the incidence-graph vertex list: points then blocks)
    is a polarity iff it swaps the two sides, squares to the identity,
    and reverses incidence: p in B  iff  sigma(B) in sigma(p).

    Absolute points are those incident with their own image.
    """
    np_, nb = s.num_points, s.num_blocks
    if sigma.degree != np_ + nb:
        raise ValueError("permutation degree != points + blocks")
    for p in range(np_):
        if sigma(p) < np_:
            raise ValueError(f"sigma does not map point {p} to a block")
    for j in range(nb):
        if sigma(np_ + j) >= np_:
            raise ValueError(f"sigma does not map block {j} to a point")
    for v in range(np_ + nb):
        if sigma(sigma(v)) != v:
            return PolarityReport(False, None, ("not-involution", v))
    for p in range(np_):
        for j, b in enumerate(s.blocks):
            before = p in b
            after = sigma(np_ + j) in s.blocks[sigma(p) - np_]
            if before != after:
                return PolarityReport(False, None, ("incidence", p, j))
    absolute = sum(1 for p in range(np_) if p in s.blocks[sigma(p) - np_])
    return PolarityReport(True, absolute, None)
