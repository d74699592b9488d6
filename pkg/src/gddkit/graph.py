"""Graph core: bit-set graphs, BFS metrics, distance partitions, the
distance-3 split, equitable partitions and distribution diagrams,
dihedrants, and quotient graphs.

The six-cell distribution diagram of a GDDDP incidence graph is
computed from parameters (k, c2, k4) by double counting, never read
from a picture:

    cells   {x} | G1 | G2    | G3t (tail: meets G4) | G3p (plain) | G4
    sizes    1  | k  | k(k-1)/c2 | k*k4            | (k-1)b2/c2  | k4

with b2 = k - (k4+1)*c2 the number of G2->G3p edges per G2 vertex, and
edge labels   x-G1: (k;1), G1-G2: (k-1;c2), G2-G3t: (k4*c2; k-1),
G2-G3p: (b2; k), G3t-G4: (1; k).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from typing import Iterable, Iterator, Sequence


class Graph:
    """Simple undirected graph; adjacency stored as one bitmask per vertex."""

    __slots__ = ("n", "rows")

    def __init__(self, n: int, rows: Sequence[int]):
        if len(rows) != n:
            raise ValueError("row count != vertex count")
        rows = tuple(rows)
        for v, r in enumerate(rows):
            if r >> n:
                raise ValueError("adjacency bit out of range")
            if (r >> v) & 1:
                raise ValueError(f"loop at vertex {v}")
        for v in range(n):
            for w in _bits(rows[v]):
                if not (rows[w] >> v) & 1:
                    raise ValueError(f"asymmetric adjacency {v},{w}")
        self.n = n
        self.rows = rows

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[tuple[int, int]]) -> "Graph":
        rows = [0] * n
        for u, v in edges:
            if u == v:
                raise ValueError("loops are not allowed")
            rows[u] |= 1 << v
            rows[v] |= 1 << u
        return cls(n, rows)

    def degree(self, v: int) -> int:
        return self.rows[v].bit_count()

    def has_edge(self, u: int, v: int) -> bool:
        return bool((self.rows[u] >> v) & 1)

    def neighbors(self, v: int) -> list[int]:
        return list(_bits(self.rows[v]))

    def edges(self) -> list[tuple[int, int]]:
        out = []
        for v in range(self.n):
            for w in _bits(self.rows[v]):
                if w > v:
                    out.append((v, w))
        return out

    def edge_count(self) -> int:
        return sum(r.bit_count() for r in self.rows) // 2

    def __eq__(self, other):
        return isinstance(other, Graph) and other.n == self.n and other.rows == self.rows

    def __hash__(self):
        return hash((self.n, self.rows))

    def __repr__(self):
        return f"Graph(n={self.n}, m={self.edge_count()})"


def _bits(mask: int) -> Iterator[int]:
    while mask:
        b = mask & -mask
        mask ^= b
        yield b.bit_length() - 1


def _bfs_layer_masks(g: Graph, src: int) -> list[int]:
    """Bitmask of vertices at each distance from src (unreachable absent)."""
    seen = 1 << src
    frontier = seen
    layers = [frontier]
    while True:
        nxt = 0
        for v in _bits(frontier):
            nxt |= g.rows[v]
        nxt &= ~seen
        if not nxt:
            return layers
        layers.append(nxt)
        seen |= nxt
        frontier = nxt


@dataclass(frozen=True)
class GraphMetrics:
    connected: bool
    diameter: int | None          # None when disconnected
    bipartite: bool
    regular_degree: int | None    # None when irregular
    distances: tuple[tuple[int, ...], ...]  # -1 for unreachable
    layer_masks: tuple[tuple[int, ...], ...]
    bipartition_mask: int | None = field(default=None, compare=False)

    def distance(self, u: int, v: int) -> int:
        return self.distances[u][v]

    def eccentricity(self, v: int) -> int:
        return len(self.layer_masks[v]) - 1


@lru_cache(maxsize=256)
def metrics(g: Graph) -> GraphMetrics:
    """All-pairs BFS distances plus the standard flags."""
    n = g.n
    all_layers = []
    dist = []
    reach_all = True
    for v in range(n):
        layers = _bfs_layer_masks(g, v)
        all_layers.append(tuple(layers))
        row = [-1] * n
        for d, mask in enumerate(layers):
            for w in _bits(mask):
                row[w] = d
        if sum(mask.bit_count() for mask in layers) != n:
            reach_all = False
        dist.append(tuple(row))
    connected = reach_all
    diameter = max(max(r) for r in dist) if connected else None
    degs = {g.degree(v) for v in range(n)}
    regular = degs.pop() if len(degs) == 1 else None
    # 2-color by BFS layer parity per component; bipartite iff no edge
    # joins two vertices of equal parity
    color0 = 0
    assigned = 0
    for v in range(n):
        if (assigned >> v) & 1:
            continue
        layers = all_layers[v]
        for d, mask in enumerate(layers):
            assigned |= mask
            if d % 2 == 0:
                color0 |= mask
    bip = True
    color1 = ~color0
    for v in range(n):
        side = color0 if (color0 >> v) & 1 else color1
        if g.rows[v] & side:
            bip = False
            break
    return GraphMetrics(
        connected=connected,
        diameter=diameter,
        bipartite=bip,
        regular_degree=regular,
        distances=tuple(dist),
        layer_masks=tuple(all_layers),
        bipartition_mask=color0 if bip else None,
    )


# ---------------------------------------------------------------------------
# partitions

def validate_partition(n: int, cells: Sequence[Sequence[int]]) -> tuple[tuple[int, ...], ...]:
    norm = tuple(tuple(c) for c in cells)
    seen = 0
    total = 0
    for c in norm:
        if not c:
            raise ValueError("empty cell")
        for v in c:
            if not 0 <= v < n or (seen >> v) & 1:
                raise ValueError("cells must be disjoint subsets of the vertex set")
            seen |= 1 << v
        total += len(c)
    if total != n:
        raise ValueError("cells do not cover the vertex set")
    return norm


def distance_partition(g: Graph, x: int) -> tuple[tuple[int, ...], ...]:
    m = metrics(g)
    if not m.connected:
        raise ValueError("graph is disconnected")
    return tuple(tuple(_bits(mask)) for mask in m.layer_masks[x])


def split_distance3(g: Graph, x: int) -> tuple[tuple[int, ...], tuple[int, ...]]:
    """Split the distance-3 set from x into the vertices with a
    neighbour at distance 4 (tail) and the rest (plain).

    Requires eccentricity exactly 4.
    """
    m = metrics(g)
    if not m.connected:
        raise ValueError("graph is disconnected")
    layers = m.layer_masks[x]
    if len(layers) - 1 != 4:
        raise ValueError(f"eccentricity of {x} is {len(layers) - 1}, need 4")
    g4 = layers[4]
    tail = []
    plain = []
    for v in _bits(layers[3]):
        (tail if g.rows[v] & g4 else plain).append(v)
    return tuple(tail), tuple(plain)


@dataclass(frozen=True)
class DistributionDiagram:
    """Cell sizes and quotient matrix of an equitable partition."""

    sizes: tuple[int, ...]
    q: tuple[tuple[int, ...], ...]
    degenerate: bool = field(default=False, compare=False)

    @property
    def total(self) -> int:
        return sum(self.sizes)

    def check_double_count(self) -> bool:
        t = len(self.sizes)
        return all(
            self.sizes[i] * self.q[i][j] == self.sizes[j] * self.q[j][i]
            for i in range(t)
            for j in range(t)
        )


@dataclass(frozen=True)
class EquitableReport:
    equitable: bool
    diagram: DistributionDiagram | None
    witness: tuple | None  # (cell index, u, v, other cell index, count u, count v)


def check_equitable(g: Graph, cells: Sequence[Sequence[int]]) -> EquitableReport:
    cells = validate_partition(g.n, cells)
    masks = [sum(1 << v for v in c) for c in cells]
    q = []
    for i, c in enumerate(cells):
        counts0 = [(g.rows[c[0]] & masks[j]).bit_count() for j in range(len(cells))]
        for v in c[1:]:
            for j in range(len(cells)):
                cnt = (g.rows[v] & masks[j]).bit_count()
                if cnt != counts0[j]:
                    return EquitableReport(False, None, (i, c[0], v, j, counts0[j], cnt))
        q.append(tuple(counts0))
    diagram = DistributionDiagram(tuple(len(c) for c in cells), tuple(q))
    return EquitableReport(True, diagram, None)


def gdddp_diagram(k: int, c2: int, k4: int) -> DistributionDiagram:
    """Six-cell diagram of a GDDDP(k4+1, *, k; 0, c2) incidence graph,
    derived from double counting (see module docstring); degenerate when
    b2 = 0 or k4 = 0."""
    if k < 1 or c2 < 1 or k4 < 0:
        raise ValueError("need k >= 1, c2 >= 1, k4 >= 0")
    b2 = k - (k4 + 1) * c2
    if b2 < 0:
        raise ValueError("k - (k4+1)*c2 must be >= 0")
    if (k * (k - 1)) % c2 or ((k - 1) * b2) % c2:
        raise ValueError("parameters give non-integer cell sizes")
    sizes = (1, k, k * (k - 1) // c2, k * k4, (k - 1) * b2 // c2, k4)
    q = (
        (0, k, 0, 0, 0, 0),
        (1, 0, k - 1, 0, 0, 0),
        (0, c2, 0, k4 * c2, b2, 0),
        (0, 0, k - 1, 0, 0, 1),
        (0, 0, k, 0, 0, 0),
        (0, 0, 0, k, 0, 0),
    )
    return DistributionDiagram(sizes, q, degenerate=(b2 == 0 or k4 == 0))


def six_cell_partition(g: Graph, x: int) -> tuple[tuple[int, ...], ...]:
    """({x}, G1, G2, G3-tail, G3-plain, G4) from vertex x."""
    cells = distance_partition(g, x)
    if len(cells) != 5:
        raise ValueError(f"eccentricity of {x} is {len(cells) - 1}, need 4")
    tail, plain = split_distance3(g, x)
    return (cells[0], cells[1], cells[2], tail, plain, cells[4])


def diagram_to_dot(diag: DistributionDiagram) -> str:
    """Balloon-and-line rendering: cell sizes inside balloons, the two
    per-end edge labels next to their balloons."""
    lines = ["graph diagram {", "  node [shape=circle];"]
    for i, s in enumerate(diag.sizes):
        lines.append(f'  c{i} [label="{s}"];')
    t = len(diag.sizes)
    for i in range(t):
        for j in range(i + 1, t):
            if diag.q[i][j] or diag.q[j][i]:
                lines.append(
                    f'  c{i} -- c{j} [taillabel="{diag.q[i][j]}", headlabel="{diag.q[j][i]}"];'
                )
    lines.append("}")
    return "\n".join(lines)


def diagram_to_ascii(diag: DistributionDiagram) -> str:
    out = ["cells: " + " ".join(f"({s})" for s in diag.sizes)]
    t = len(diag.sizes)
    for i in range(t):
        for j in range(i + 1, t):
            if diag.q[i][j] or diag.q[j][i]:
                out.append(f"  ({diag.sizes[i]}) --{diag.q[i][j]}/{diag.q[j][i]}-- ({diag.sizes[j]})")
    return "\n".join(out)


# ---------------------------------------------------------------------------
# dihedrants and quotients

def dihedrant(n: int, s: Iterable[int], t: Iterable[int]) -> Graph:
    """Cayley graph of the dihedral group of order 2n with connection
    set {a^i : i in s} u {a^j b : j in t}.

    Vertex (i, eps) is encoded as i for a^i and n + j for a^j b.
    With the relation b a b = a^{-1}:
      a^i  ~ a^k    iff  k - i  in s   (s must satisfy 0 not in s, s = -s)
      a^i  ~ a^k b  iff  k - i  in t
      a^i b ~ a^k b iff  i - k  in s.
    """
    s = {x % n for x in s}
    t = {x % n for x in t}
    if 0 in s:
        raise ValueError("0 in the rotation connection set would create loops")
    if s != {(-x) % n for x in s}:
        raise ValueError("rotation connection set must be closed under negation")
    edges = []
    for i in range(n):
        for d in s:
            k = (i + d) % n
            edges.append((i, k))
            edges.append((n + i, n + ((i - d) % n)))
        for d in t:
            edges.append((i, n + ((i + d) % n)))
    rows = [0] * (2 * n)
    for u, v in edges:
        rows[u] |= 1 << v
        rows[v] |= 1 << u
    return Graph(2 * n, rows)


def quotient_graph(g: Graph, cells: Sequence[Sequence[int]]) -> tuple[Graph, int]:
    """Graph on the cells, adjacent iff some edge joins them; returns
    (quotient, number of intra-cell edges dropped)."""
    cells = validate_partition(g.n, cells)
    cell_of = [0] * g.n
    for i, c in enumerate(cells):
        for v in c:
            cell_of[v] = i
    rows = [0] * len(cells)
    dropped = 0
    for u, v in g.edges():
        cu, cv = cell_of[u], cell_of[v]
        if cu == cv:
            dropped += 1
        else:
            rows[cu] |= 1 << cv
            rows[cv] |= 1 << cu
    return Graph(len(cells), rows), dropped
