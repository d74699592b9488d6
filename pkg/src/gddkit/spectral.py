"""Exact adjacency-algebra dimension, annihilating polynomials,
walk-regularity, distance-regularity, and the numeric spectrum.

Exactness: matrix powers and ranks use Python integers only; the
numeric eigensolve is cross-checked against the exact dimension. The
exact path is capped at EXACT_VERTEX_CAP vertices; beyond that only
the numeric spectrum is available, flagged unverified.

Walk counts need only be checked for lengths l < dim(adjacency
algebra): every higher power of A is a rational combination of
A^0..A^(dim-1), and constancy over a distance class is linear, so
constancy for l < dim implies it for all l.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from math import gcd
from typing import Sequence

import numpy as np

from .graph import Graph, metrics, _bits

EXACT_VERTEX_CAP = 128


class SpectralToleranceError(ValueError):
    """Numeric clustering is inconsistent with the exact eigenvalue count."""


class ConsistencyError(AssertionError):
    """A proved relation between computed quantities failed; this
    indicates a bug, not bad input."""


def _check_cap(g: Graph) -> None:
    if g.n > EXACT_VERTEX_CAP:
        raise ValueError(f"exact path capped at {EXACT_VERTEX_CAP} vertices")


def _mat_mul_adj(m: list[list[int]], g: Graph) -> list[list[int]]:
    """m @ A using adjacency of g; exact integer arithmetic."""
    nbrs = [g.neighbors(v) for v in range(g.n)]
    out = []
    for row in m:
        out.append([sum(row[z] for z in nbrs[y]) for y in range(g.n)])
    return out


def _identity_int(n: int) -> list[list[int]]:
    return [[1 if i == j else 0 for j in range(n)] for i in range(n)]


def _reduce_against(vec: list[int], basis: dict[int, list[int]]) -> list[int]:
    """Fraction-free elimination of vec against echelonized basis rows."""
    for piv, row in basis.items():
        c = vec[piv]
        if c:
            lead = row[piv]
            vec = [a * lead - b * c for a, b in zip(vec, row)]
            g = 0
            for a in vec:
                g = gcd(g, a)
                if g == 1:
                    break
            if g > 1:
                vec = [a // g for a in vec]
    return vec


@lru_cache(maxsize=64)
def _algebra_powers(g: Graph) -> tuple[int, tuple]:
    """(dimension of span{A^0, A^1, ...}, powers A^0..A^(dim-1) as
    nested tuples). The first dependent power closes the algebra: if
    A^m is a combination of lower powers, so is every higher power.
    """
    _check_cap(g)
    n = g.n
    basis: dict[int, list[int]] = {}
    powers = []
    current = _identity_int(n)
    while True:
        vec = [x for row in current for x in row]
        vec = _reduce_against(vec, basis)
        piv = next((i for i, x in enumerate(vec) if x), None)
        if piv is None:
            break
        basis[piv] = vec
        powers.append(tuple(tuple(r) for r in current))
        current = _mat_mul_adj(current, g)
    return len(powers), tuple(powers)


def adjacency_algebra_dimension(g: Graph) -> int:
    """Dimension of the algebra generated by the adjacency matrix;
    equals the number of distinct eigenvalues (A symmetric, so its
    minimal polynomial is squarefree)."""
    return _algebra_powers(g)[0]


def verify_annihilating_polynomial(g: Graph, coeffs: Sequence[int]) -> bool:
    """Exact check that f(A) = 0 for f given by integer coefficients,
    low degree first."""
    _check_cap(g)
    n = g.n
    acc = [[0] * n for _ in range(n)]
    for c in reversed(list(coeffs)):
        acc = _mat_mul_adj(acc, g)
        if c:
            for i in range(n):
                acc[i][i] += c
    return all(x == 0 for row in acc for x in row)


def poly_from_squares(squares: Sequence[int]) -> list[int]:
    """Integer coefficients (low first) of prod (x^2 - s); the natural
    candidate annihilator for bipartite graphs with spectrum {±sqrt(s)}."""
    coeffs = [1]
    for s in squares:
        shifted = [0, 0] + coeffs
        coeffs = [a - s * b for a, b in zip(shifted, coeffs + [0, 0])]
    return coeffs


@dataclass(frozen=True)
class WalkRegularityReport:
    max_t: int                    # largest t with t-walk-regularity; -1 if none
    cap: int                      # the diameter (checks stop there)
    witness: tuple | None         # (l, distance, pair0, pair, count0, count)


def walk_regularity_order(g: Graph) -> WalkRegularityReport:
    """Largest t such that the number of length-l walks between x and y
    depends only on d(x, y) whenever d(x, y) <= t, for every l."""
    m = metrics(g)
    if not m.connected:
        raise ValueError("graph is disconnected")
    dim, powers = _algebra_powers(g)
    diam = m.diameter
    pairs_at = [[] for _ in range(diam + 1)]
    for x in range(g.n):
        for y in range(x, g.n):
            pairs_at[m.distances[x][y]].append((x, y))
    for t in range(diam + 1):
        for l in range(dim):
            mat = powers[l]
            x0, y0 = pairs_at[t][0]
            want = mat[x0][y0]
            for x, y in pairs_at[t]:
                if mat[x][y] != want:
                    return WalkRegularityReport(
                        t - 1, diam, (l, t, (x0, y0), (x, y), want, mat[x][y])
                    )
    return WalkRegularityReport(diam, diam, None)


@dataclass(frozen=True)
class DistanceRegularityReport:
    is_distance_regular: bool
    b: tuple[int, ...] | None     # b_0 .. b_(D-1)
    c: tuple[int, ...] | None     # c_1 .. c_D
    witness: tuple | None         # (kind, i, pair0, pair, count0, count)


def is_distance_regular(g: Graph) -> DistanceRegularityReport:
    m = metrics(g)
    if not m.connected:
        raise ValueError("graph is disconnected")
    diam = m.diameter
    b = [None] * diam
    c = [None] * (diam + 1)
    pair_b = [None] * (diam + 1)
    pair_c = [None] * (diam + 1)
    for x in range(g.n):
        layers = m.layer_masks[x]
        for y in range(g.n):
            i = m.distances[x][y]
            below = (g.rows[y] & layers[i - 1]).bit_count() if i >= 1 else 0
            above = (g.rows[y] & layers[i + 1]).bit_count() if i + 1 < len(layers) else 0
            if i >= 1:
                if c[i] is None:
                    c[i] = below
                    pair_c[i] = (x, y)
                elif c[i] != below:
                    return DistanceRegularityReport(
                        False, None, None, ("c", i, pair_c[i], (x, y), c[i], below)
                    )
            if i < diam:
                if b[i] is None:
                    b[i] = above
                    pair_b[i] = (x, y)
                elif b[i] != above:
                    return DistanceRegularityReport(
                        False, None, None, ("b", i, pair_b[i], (x, y), b[i], above)
                    )
    return DistanceRegularityReport(True, tuple(b), tuple(c[1:]), None)


@dataclass(frozen=True)
class SpectralSummary:
    distinct_count: int
    eigenvalues: tuple[tuple[float, int], ...]  # (value, multiplicity), descending
    verified: bool                              # exact dimension cross-check ran
    annihilator: tuple[int, ...] | None = None


def numeric_spectrum(g: Graph, tol: float = 1e-9) -> SpectralSummary:
    """Symmetric eigensolve, clustered within tol; the cluster count
    must match the exact algebra dimension (when within the exact cap),
    and clusters must be separated by more than 10*tol."""
    if tol <= 0:
        raise ValueError("tol must be positive")
    a = np.zeros((g.n, g.n))
    for v in range(g.n):
        for w in _bits(g.rows[v]):
            a[v, w] = 1.0
    vals = np.linalg.eigvalsh(a)[::-1]
    clusters: list[list[float]] = [[vals[0]]]
    for v in vals[1:]:
        if clusters[-1][-1] - v <= tol:
            clusters[-1].append(v)
        else:
            clusters.append([v])
    means = [float(np.mean(cl)) for cl in clusters]
    gaps = [means[i] - means[i + 1] for i in range(len(means) - 1)]
    if gaps and min(gaps) <= 10 * tol:
        raise SpectralToleranceError(
            f"inter-cluster gap {min(gaps):.3g} not above 10*tol; adjust tol"
        )
    eig = tuple((means[i], len(clusters[i])) for i in range(len(clusters)))
    if g.n <= EXACT_VERTEX_CAP:
        dim = adjacency_algebra_dimension(g)
        if dim != len(clusters):
            raise SpectralToleranceError(
                f"{len(clusters)} numeric clusters vs exact dimension {dim}"
            )
        return SpectralSummary(dim, eig, True)
    return SpectralSummary(len(clusters), eig, False)


@dataclass(frozen=True)
class PairIntersection:
    distance: int
    table: dict  # (j, h) -> |G_j(x) n G_h(y)|

    def p(self, j: int, h: int) -> int:
        return self.table.get((j, h), 0)

    @property
    def ci(self) -> int:
        return self.p(self.distance - 1, 1)

    @property
    def ai(self) -> int:
        return self.p(self.distance, 1)

    @property
    def bi(self) -> int:
        return self.p(self.distance + 1, 1)


def intersection_numbers_at(g: Graph, x: int, y: int) -> PairIntersection:
    m = metrics(g)
    if not m.connected:
        raise ValueError("graph is disconnected")
    lx, ly = m.layer_masks[x], m.layer_masks[y]
    table = {}
    for j, mj in enumerate(lx):
        for h, mh in enumerate(ly):
            cnt = (mj & mh).bit_count()
            if cnt:
                table[(j, h)] = cnt
    return PairIntersection(m.distances[x][y], table)


@dataclass(frozen=True)
class ConsistencyReport:
    dim: int
    diameter: int
    max_t: int
    bipartite: bool
    distance_regular: bool
    forced_distance_regular: bool


def walk_regularity_consistency(g: Graph) -> ConsistencyReport:
    """Cross-checks between independent computations, all of which are
    theorems for connected graphs:

    * dim >= diameter + 1;
    * an s-walk-regular graph with dim <= s + 2 distinct eigenvalues is
      distance-regular, and a bipartite one already with dim <= s + 3.

    Raises ConsistencyError on violation (an implementation bug).
    """
    m = metrics(g)
    if not m.connected:
        raise ValueError("graph is disconnected")
    dim = adjacency_algebra_dimension(g)
    wr = walk_regularity_order(g)
    dr = is_distance_regular(g)
    if dim < m.diameter + 1:
        raise ConsistencyError(f"dim {dim} < diameter+1 {m.diameter + 1}")
    forced = dim <= wr.max_t + 2 or (m.bipartite and dim <= wr.max_t + 3)
    if forced and not dr.is_distance_regular:
        raise ConsistencyError(
            f"dim {dim}, max_t {wr.max_t}, bipartite {m.bipartite} force "
            f"distance-regularity but the check failed"
        )
    if dr.is_distance_regular and wr.max_t != m.diameter:
        raise ConsistencyError("distance-regular graph not walk-regular to the diameter")
    return ConsistencyReport(
        dim, m.diameter, wr.max_t, m.bipartite, dr.is_distance_regular, forced
    )


def eigenvalue_descriptor(value: float, tol: float = 1e-6) -> dict:
    """Exact JSON-friendly form of a numeric eigenvalue: integers as
    {"value": n}, quadratic irrationals as {"sign": s, "square": n}."""
    r = round(value)
    if abs(value - r) <= tol:
        return {"value": int(r)}
    sq = round(value * value)
    if abs(value * value - sq) <= tol:
        return {"sign": 1 if value > 0 else -1, "square": int(sq)}
    return {"approx": value}
