"""Permutations, permutation groups, and graph symmetry computations.

Composition convention (fixed, tested): permutations compose left to
right, (p * q)(x) == q(p(x)).

The automorphism-group and canonical-form machinery is a deterministic
individualization-refinement search:

* refinement splits cells by neighbour counts into "active" cells until
  the partition is equitable; sub-cells are ordered by count value, so
  the procedure commutes with graph relabelings;
* the branching cell is the first smallest non-singleton cell;
* leaves yield labelings; equal leaf certificates yield automorphisms;
  the least certificate over all leaves is the canonical form;
* subtrees equivalent to an explored sibling under the automorphisms
  found so far (restricted to those fixing the branching prefix
  pointwise) are pruned, which preserves both the generated group and
  the canonical certificate.

Known limits: degree <= 128 and group order <= 10^9 for the search and
element enumeration; far above everything this library constructs.
"""

from __future__ import annotations

import math
from collections import deque
from dataclasses import dataclass
from typing import Iterable, Iterator, Sequence

DEGREE_CAP = 128
ORDER_CAP = 10**9


class Permutation:
    """A bijection of range(n), stored as its image array."""

    __slots__ = ("img",)

    def __init__(self, img: Sequence[int]):
        img = tuple(img)
        n = len(img)
        seen = [False] * n
        for v in img:
            if not 0 <= v < n or seen[v]:
                raise ValueError("not a permutation image array")
            seen[v] = True
        self.img = img

    @classmethod
    def identity(cls, n: int) -> "Permutation":
        return cls(range(n))

    @classmethod
    def from_cycles(cls, n: int, cycles: Iterable[Sequence[int]]) -> "Permutation":
        img = list(range(n))
        for cyc in cycles:
            for a, b in zip(cyc, cyc[1:] + type(cyc)([cyc[0]])):
                img[a] = b
        return cls(img)

    @property
    def degree(self) -> int:
        return len(self.img)

    def __call__(self, v: int) -> int:
        return self.img[v]

    def act_tuple(self, t: Sequence[int]) -> tuple[int, ...]:
        return tuple(self.img[v] for v in t)

    def __mul__(self, other: "Permutation") -> "Permutation":
        # apply self first, then other
        return Permutation(tuple(other.img[v] for v in self.img))

    def inverse(self) -> "Permutation":
        inv = [0] * len(self.img)
        for i, v in enumerate(self.img):
            inv[v] = i
        return Permutation(inv)

    def is_identity(self) -> bool:
        return all(i == v for i, v in enumerate(self.img))

    def order(self) -> int:
        out = 1
        for cyc in self.cycles():
            out = math.lcm(out, len(cyc))
        return out

    def cycles(self) -> list[tuple[int, ...]]:
        seen = [False] * len(self.img)
        out = []
        for i in range(len(self.img)):
            if seen[i] or self.img[i] == i:
                seen[i] = True
                continue
            cyc = [i]
            seen[i] = True
            j = self.img[i]
            while j != i:
                cyc.append(j)
                seen[j] = True
                j = self.img[j]
            out.append(tuple(cyc))
        return out

    def __eq__(self, other):
        return isinstance(other, Permutation) and other.img == self.img

    def __hash__(self):
        return hash(self.img)

    def __repr__(self):
        cycs = self.cycles()
        if not cycs:
            return f"Permutation(id/{self.degree})"
        return "Permutation(%s)" % "".join("(" + " ".join(map(str, c)) + ")" for c in cycs)


@dataclass
class _Level:
    beta: int
    gens: list[Permutation]
    transversal: dict[int, Permutation]  # point -> perm with perm(beta) == point


class PermGroup:
    """Finitely generated permutation group with a deterministic
    base-and-strong-generators chain (base points in natural order of
    first moved points)."""

    def __init__(self, generators: Sequence[Permutation], degree: int | None = None):
        gens = [g for g in generators if not g.is_identity()]
        if degree is None:
            if not generators:
                raise ValueError("degree required for the trivial group")
            degree = generators[0].degree
        if any(g.degree != degree for g in gens):
            raise ValueError("generators have mismatched degrees")
        self.degree = degree
        self.generators = tuple(gens)
        self._levels: list[_Level] | None = None

    # -- stabilizer chain ---------------------------------------------------

    def _chain(self) -> list[_Level]:
        if self._levels is None:
            self._levels = []
            for g in self.generators:
                self._add_generator(0, g)
        return self._levels

    def _rebuild_orbit(self, level: _Level) -> None:
        ident = Permutation.identity(self.degree)
        level.transversal = {level.beta: ident}
        frontier = [level.beta]
        while frontier:
            nxt = []
            for x in frontier:
                tx = level.transversal[x]
                for s in level.gens:
                    y = s(x)
                    if y not in level.transversal:
                        level.transversal[y] = tx * s
                        nxt.append(y)
            frontier = nxt

    def _sift(self, start: int, p: Permutation) -> tuple[Permutation, int]:
        """Reduce p through levels >= start; return (residue, level) where
        residue fixes all base points below `level`."""
        levels = self._levels
        i = start
        while i < len(levels):
            x = p(levels[i].beta)
            if x == levels[i].beta:
                i += 1
                continue
            rep = levels[i].transversal.get(x)
            if rep is None:
                return p, i
            p = p * rep.inverse()
            if p.is_identity():
                return p, i
            i += 1
        return p, len(levels)

    def _add_generator(self, i: int, g: Permutation) -> None:
        """Install g, known to fix base[0..i-1], at level i.

        Generators are placed at the level of the prefix they fix (not
        where sifting stalls): the order formula needs the level-0
        orbit computed under every original generator. The sift is only
        a membership pre-check.
        """
        if g.is_identity():
            return
        residue, _ = self._sift(i, g)
        if residue.is_identity():
            return
        levels = self._levels
        if i == len(levels):
            beta = next(v for v in range(self.degree) if g(v) != v)
            levels.append(_Level(beta, [], {}))
        level = levels[i]
        level.gens.append(g)
        self._rebuild_orbit(level)
        # close under Schreier generators at this level; each fixes
        # base[0..i], so it belongs at level i+1
        for x in sorted(level.transversal):
            tx = level.transversal[x]
            for s in level.gens:
                schreier = tx * s * level.transversal[s(x)].inverse()
                self._add_generator(i + 1, schreier)

    def order(self) -> int:
        out = 1
        for level in self._chain():
            out *= len(level.transversal)
        return out

    def __contains__(self, p: Permutation) -> bool:
        if p.degree != self.degree:
            return False
        self._chain()
        residue, _ = self._sift(0, p)
        return residue.is_identity()

    def elements(self) -> Iterator[Permutation]:
        """All group elements.

        Every g factors as g = h * t with t the level-0 coset rep for
        g(beta_0) and h in the stabilizer, so the element set is built
        deepest level first.
        """
        if self.order() > 10**7:
            raise ValueError("group too large to enumerate")
        levels = self._chain()
        out = [Permutation.identity(self.degree)]
        for level in reversed(levels):
            out = [h * t for h in out for t in level.transversal.values()]
        yield from out

    # -- orbits ---------------------------------------------------------

    def orbit(self, seed):
        """Orbit of a vertex (int) or vertex tuple under the generators."""
        frontier = [seed]
        seen = {seed}
        while frontier:
            nxt = []
            for x in frontier:
                for g in self.generators:
                    y = g(x) if isinstance(x, int) else g.act_tuple(x)
                    if y not in seen:
                        seen.add(y)
                        nxt.append(y)
            frontier = nxt
        return seen

    def orbits(self) -> list[set[int]]:
        left = set(range(self.degree))
        out = []
        while left:
            o = self.orbit(min(left))
            out.append(o)
            left -= o
        return out

    def is_transitive(self) -> bool:
        return len(self.orbit(0)) == self.degree


def group_order(grp: PermGroup) -> int:
    if grp.degree > 4096:
        raise ValueError("degree beyond desk-scale cap")
    return grp.order()


def orbit(grp: PermGroup, seed):
    return grp.orbit(seed)


def tuple_orbit_partition(grp: PermGroup, tuples: Iterable[tuple[int, ...]]) -> list[set[tuple[int, ...]]]:
    """Partition of the given tuples into orbits under the group.

    The tuple set must be closed under the group action (true for the
    set of all t-arcs under automorphisms).
    """
    left = set(tuples)
    out = []
    while left:
        o = grp.orbit(min(left))
        if not o <= left:
            raise ValueError("tuple set is not closed under the group action")
        out.append(o)
        left -= o
    return out


# ---------------------------------------------------------------------------
# graph symmetry

def is_automorphism(g, p: Permutation) -> bool:
    if p.degree != g.n:
        return False
    for v in range(g.n):
        img_row = 0
        row = g.rows[v]
        while row:
            b = row & -row
            row ^= b
            img_row |= 1 << p(b.bit_length() - 1)
        if img_row != g.rows[p(v)]:
            return False
    return True


def _require_automorphisms(g, grp: PermGroup) -> None:
    for gen in grp.generators:
        if not is_automorphism(g, gen):
            raise ValueError("generator is not an automorphism of the graph")


def is_dihedral_regular(grp: PermGroup, g) -> bool:
    """True iff grp acts regularly on V(g) and is dihedral: contains an
    index-2 cyclic subgroup <r> and an involution s outside it with
    s r s = r^{-1}. Orders 2 and 4 count as (degenerate) dihedral."""
    _require_automorphisms(g, grp)
    n2 = g.n
    if grp.order() != n2 or not grp.is_transitive():
        return False
    if n2 % 2 != 0:
        return False
    half = n2 // 2
    elements = list(grp.elements())
    r = next((p for p in elements if p.order() == half), None)
    if r is None:
        return False
    cyc = set()
    t = Permutation.identity(grp.degree)
    for _ in range(half):
        cyc.add(t)
        t = t * r
    r_inv = r.inverse()
    for s in elements:
        if s not in cyc and (s * s).is_identity() and s * r * s == r_inv:
            return True
    return False


def _all_arcs(g, t: int) -> list[tuple[int, ...]]:
    """All t-arcs: (t+1)-tuples, consecutive vertices adjacent, no
    immediate backtracking x_{i-1} != x_{i+1}."""
    arcs: list[tuple[int, ...]] = [(v,) for v in range(g.n)]
    for step in range(t):
        nxt = []
        for a in arcs:
            row = g.rows[a[-1]]
            while row:
                b = row & -row
                row ^= b
                w = b.bit_length() - 1
                if step >= 1 and w == a[-2]:
                    continue
                nxt.append(a + (w,))
        arcs = nxt
    return arcs


@dataclass(frozen=True)
class ArcTransitivityReport:
    transitive: bool
    orbit_size: int
    total: int


def is_t_arc_transitive_under(grp: PermGroup, g, t: int) -> ArcTransitivityReport:
    if t not in (1, 2):
        raise ValueError("t must be 1 or 2")
    if t == 2 and any(g.rows[v].bit_count() < 2 for v in range(g.n)):
        raise ValueError("graph has a vertex of degree < 2; no 2-arcs through it")
    _require_automorphisms(g, grp)
    arcs = _all_arcs(g, t)
    if not arcs:
        return ArcTransitivityReport(False, 0, 0)
    seed = min(arcs)
    orb = grp.orbit(seed)
    return ArcTransitivityReport(len(orb) == len(arcs), len(orb), len(arcs))


def arc_orbit_count(grp: PermGroup, g, t: int) -> int:
    return len(tuple_orbit_partition(grp, _all_arcs(g, t)))


# ---------------------------------------------------------------------------
# individualization-refinement

def _refine(rows: Sequence[int], cells: list[tuple[int, ...]], active: list[int]) -> list[tuple[int, ...]]:
    """Coarsest equitable partition refining `cells`, assuming the input
    was equitable with respect to everything except the cells whose
    masks are listed in `active`."""
    work = deque(active)
    while work:
        w_mask = work.popleft()
        new_cells: list[tuple[int, ...]] = []
        for cell in cells:
            if len(cell) == 1:
                new_cells.append(cell)
                continue
            buckets: dict[int, list[int]] = {}
            for v in cell:
                buckets.setdefault((rows[v] & w_mask).bit_count(), []).append(v)
            if len(buckets) == 1:
                new_cells.append(cell)
            else:
                for key in sorted(buckets):
                    part = tuple(buckets[key])
                    new_cells.append(part)
                    work.append(_mask(part))
        cells = new_cells
    return cells


def _mask(cell: Iterable[int]) -> int:
    m = 0
    for v in cell:
        m |= 1 << v
    return m


def _certificate(rows: Sequence[int], lab: Sequence[int]) -> tuple[int, ...]:
    """Adjacency rows of the graph relabeled so vertex lab[i] gets name i.

    Any fixed total order on certificates works for canonicity; tuples
    of row bitmasks compare cheaply.
    """
    n = len(lab)
    pos = [0] * n
    for i, v in enumerate(lab):
        pos[v] = i
    out = []
    for i in range(n):
        r = rows[lab[i]]
        nr = 0
        while r:
            b = r & -r
            r ^= b
            nr |= 1 << pos[b.bit_length() - 1]
        out.append(nr)
    return tuple(out)


class _IRSearch:
    def __init__(self, g):
        if g.n > DEGREE_CAP:
            raise ValueError(f"graph larger than the degree cap {DEGREE_CAP}")
        self.rows = g.rows
        self.n = g.n
        self.gens: list[Permutation] = []
        self.first: tuple[tuple[int, ...], list[int]] | None = None
        self.best: tuple[tuple[int, ...], list[int]] | None = None

    def run(self) -> None:
        full = tuple(range(self.n))
        cells = _refine(self.rows, [full], [_mask(full)])
        self._node(cells, ())

    def _node(self, cells: list[tuple[int, ...]], fixed: tuple[int, ...]) -> None:
        if all(len(c) == 1 for c in cells):
            self._leaf([c[0] for c in cells])
            return
        target = min(
            (i for i, c in enumerate(cells) if len(c) > 1),
            key=lambda i: (len(cells[i]), i),
        )
        done: list[int] = []
        for v in cells[target]:
            if self._pruned(v, done, fixed):
                continue
            child = list(cells)
            rest = tuple(u for u in cells[target] if u != v)
            child[target : target + 1] = [(v,), rest]
            child = _refine(self.rows, child, [1 << v])
            self._node(child, fixed + (v,))
            done.append(v)

    def _pruned(self, v: int, done: list[int], fixed: tuple[int, ...]) -> bool:
        if not done or not self.gens:
            return False
        stab = [g for g in self.gens if all(g(x) == x for x in fixed)]
        if not stab:
            return False
        seen = {v}
        frontier = [v]
        while frontier:
            nxt = []
            for x in frontier:
                for g in stab:
                    y = g(x)
                    if y not in seen:
                        if y in done:
                            return True
                        seen.add(y)
                        nxt.append(y)
            frontier = nxt
        return False

    def _leaf(self, lab: list[int]) -> None:
        cert = _certificate(self.rows, lab)
        if self.first is None:
            self.first = (cert, lab)
            self.best = (cert, lab)
            return
        for known_cert, known_lab in (self.first, self.best):
            if cert == known_cert and lab != known_lab:
                img = [0] * self.n
                for i in range(self.n):
                    img[known_lab[i]] = lab[i]
                p = Permutation(img)
                if not p.is_identity() and p not in self.gens:
                    self.gens.append(p)
                break
        if cert < self.best[0]:
            self.best = (cert, lab)


def automorphism_group(g) -> PermGroup:
    """Full automorphism group, by individualization-refinement."""
    search = _IRSearch(g)
    search.run()
    grp = PermGroup(search.gens, degree=g.n)
    for gen in grp.generators:
        if not is_automorphism(g, gen):
            raise AssertionError("search produced a non-automorphism")
    return grp


def canonical_form(g) -> tuple[int, ...]:
    """Relabeled adjacency rows of the canonical labeling; equal for
    isomorphic graphs, distinct otherwise."""
    search = _IRSearch(g)
    search.run()
    return search.best[0]


def are_isomorphic(g1, g2) -> bool:
    if g1.n != g2.n:
        return False
    if sorted(r.bit_count() for r in g1.rows) != sorted(r.bit_count() for r in g2.rows):
        return False
    return canonical_form(g1) == canonical_form(g2)
