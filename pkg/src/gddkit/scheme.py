"""Association schemes: the six-relation set attached to a GDDDP
incidence graph, exact axiom verification, eigenmatrices, and the
closed-form eigenmatrices for this family.

Structure constants are verified in integer arithmetic (int64 is exact
here: every entry of a product of two 0/1 matrices is at most the
vertex count). Eigenmatrices are the only numeric artifact; P*Q = |X|*I
is the internal consistency gate.

Row order convention: eigenspace rows are sorted by decreasing |theta|,
then decreasing theta, where theta is the eigenvalue on the adjacency
relation; for this family that reads (k, -k, sqrt(k), -sqrt(k),
sqrt(b2), -sqrt(b2)). Comparisons between computed and closed-form
eigenmatrices match rows by theta, so they are order-insensitive.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .design import GDDParams
from .graph import (
    DistributionDiagram,
    Graph,
    gdddp_diagram,
    metrics,
    six_cell_partition,
)


class SchemeConstructionError(ValueError):
    pass


@dataclass(frozen=True)
class RelationSet:
    """Ordered 0/1 relation matrices on a common vertex set."""

    matrices: tuple  # of np.ndarray, dtype int64
    names: tuple[str, ...]

    @property
    def size(self) -> int:
        return self.matrices[0].shape[0]

    @property
    def classes(self) -> int:
        return len(self.matrices) - 1

    def __post_init__(self):
        n = self.matrices[0].shape[0]
        for m in self.matrices:
            if m.shape != (n, n):
                raise ValueError("relation matrices must share a vertex set")


def build_gdddp_scheme(g: Graph) -> RelationSet:
    """(I, A1, A2, B3, C3, A4) where B3 marks the distance-3 pairs whose
    second vertex has a neighbour at distance 4 from the first.

    B3 must come out symmetric; an asymmetric B3 means the graph is not
    the incidence graph of a GDDDP with lambda1 = 0, and is an error.
    """
    m = metrics(g)
    if not m.connected:
        raise SchemeConstructionError("graph is disconnected")
    if not m.bipartite:
        raise SchemeConstructionError("graph is not bipartite")
    if m.diameter != 4:
        raise SchemeConstructionError(f"diameter is {m.diameter}, need 4")
    if m.regular_degree is None:
        raise SchemeConstructionError("graph is not regular")
    n = g.n
    dist = np.array(m.distances, dtype=np.int64)
    a = [(dist == i).astype(np.int64) for i in range(5)]
    b3 = np.zeros((n, n), dtype=np.int64)
    for x in range(n):
        layers = m.layer_masks[x]
        if len(layers) - 1 != 4:
            raise SchemeConstructionError(f"eccentricity of {x} is {len(layers) - 1}")
        g4 = layers[4]
        row = layers[3]
        while row:
            bbit = row & -row
            row ^= bbit
            v = bbit.bit_length() - 1
            if g.rows[v] & g4:
                b3[x, v] = 1
    if not np.array_equal(b3, b3.T):
        raise SchemeConstructionError("distance-3 tail relation is asymmetric")
    c3 = a[3] - b3
    return RelationSet(
        (a[0], a[1], a[2], b3, c3, a[4]),
        ("identity", "adjacent", "distance2", "distance3-tail", "distance3-plain", "distance4"),
    )


@dataclass(frozen=True)
class SchemeReport:
    passed: bool
    identity_ok: bool
    sum_ok: bool
    transpose_ok: bool
    product_ok: bool
    symmetric: bool
    commutative: bool
    valencies: tuple[int, ...] | None
    p: tuple | None               # p[i][j][k], integers
    witness: tuple | None

    def __bool__(self):
        return self.passed


def verify_scheme_axioms(r: RelationSet) -> SchemeReport:
    """Exact check of the four axioms: R0 = I, sum = J, transpose
    closure, and product closure with integer structure constants read
    off one entry per class and then verified entrywise."""
    mats = r.matrices
    t = len(mats)
    n = r.size
    identity_ok = bool(np.array_equal(mats[0], np.eye(n, dtype=np.int64)))
    total = sum(mats)
    sum_ok = bool(np.array_equal(total, np.ones((n, n), dtype=np.int64)))
    transpose_ok = True
    witness = None
    for i, m in enumerate(mats):
        if not any(np.array_equal(m.T, other) for other in mats):
            transpose_ok = False
            witness = ("transpose", i)
            break
    if not (identity_ok and sum_ok and transpose_ok):
        return SchemeReport(
            False, identity_ok, sum_ok, transpose_ok, False, False, None, None,
            witness or ("axiom", "identity" if not identity_ok else "sum"),
        )
    for i, m in enumerate(mats):
        if not m.any():
            return SchemeReport(
                False, identity_ok, sum_ok, transpose_ok, False, False, None, None,
                ("empty-relation", i),
            )
    # one representative entry per class
    rep = [tuple(np.argwhere(m == 1)[0]) for m in mats]
    p = [[[0] * t for _ in range(t)] for _ in range(t)]
    product_ok = True
    for i in range(t):
        for j in range(t):
            prod = mats[i] @ mats[j]
            recon = np.zeros((n, n), dtype=np.int64)
            for k in range(t):
                x, y = rep[k]
                p[i][j][k] = int(prod[x, y])
                recon += p[i][j][k] * mats[k]
            if not np.array_equal(prod, recon):
                bad = np.argwhere(prod != recon)[0]
                witness = ("product", i, j, int(bad[0]), int(bad[1]),
                           int(prod[bad[0], bad[1]]), int(recon[bad[0], bad[1]]))
                product_ok = False
                break
        if not product_ok:
            break
    symmetric = all(np.array_equal(m, m.T) for m in mats)
    commutative = product_ok and all(
        p[i][j][k] == p[j][i][k] for i in range(t) for j in range(t) for k in range(t)
    )
    valencies = tuple(int(m.sum(axis=1)[0]) for m in mats) if product_ok else None
    ptuple = tuple(tuple(tuple(row) for row in pi) for pi in p) if product_ok else None
    return SchemeReport(
        identity_ok and sum_ok and transpose_ok and product_ok,
        identity_ok, sum_ok, transpose_ok, product_ok,
        symmetric, commutative, valencies, ptuple, witness,
    )


@dataclass(frozen=True)
class EigenmatrixPair:
    p: np.ndarray                      # (t x t), rows = eigenspaces
    q: np.ndarray                      # |X| * P^{-1}
    row_eigenvalues: tuple[float, ...]  # eigenvalue of the adjacency relation per row
    multiplicities: tuple[int, ...]
    size: int


_WEIGHT_BASES = (2, 3, 5, 7, 11, 13, 17, 19)


def eigenmatrices(r: RelationSet, tol: float = 1e-9, adjacency_index: int = 1) -> EigenmatrixPair:
    """Simultaneous diagonalization of a commutative symmetric scheme.

    A deterministic integer combination sum(w^i * A_i) is diagonalized;
    if its eigenvalue clusters fail to split the common eigenspaces
    (checked by per-relation eigenvector residuals), the next weight
    base from a fixed list is tried.
    """
    report = verify_scheme_axioms(r)
    if not report.passed:
        raise ValueError("relation set fails the scheme axioms")
    if not report.commutative:
        raise ValueError("scheme is not commutative")
    t = len(r.matrices)
    n = r.size
    mats = [m.astype(float) for m in r.matrices]
    for base in _WEIGHT_BASES:
        combo = sum((float(base) ** i) * mats[i] for i in range(t))
        vals, vecs = np.linalg.eigh(combo)
        order = np.argsort(vals)[::-1]
        vals, vecs = vals[order], vecs[:, order]
        # the t largest gaps split into exactly t clusters
        if t > 1:
            gaps = vals[:-1] - vals[1:]
            cut_positions = sorted(np.argsort(gaps)[::-1][: t - 1])
        else:
            cut_positions = []
        bounds = [0] + [c + 1 for c in cut_positions] + [len(vals)]
        clusters = [slice(bounds[i], bounds[i + 1]) for i in range(len(bounds) - 1)]
        if len(clusters) != t:
            continue
        p = np.zeros((t, t))
        mults = []
        ok = True
        for ci, sl in enumerate(clusters):
            basis = vecs[:, sl]
            mults.append(sl.stop - sl.start)
            for j, mat in enumerate(mats):
                image = mat @ basis
                lam = float(np.einsum("ij,ij->j", basis, image).mean())
                if np.abs(image - lam * basis).max() > max(tol * 1e3, 1e-7) * max(
                    1.0, np.abs(mat).sum(axis=1).max()
                ):
                    ok = False
                    break
                p[ci, j] = lam
            if not ok:
                break
        if not ok:
            continue
        # round the sort key so +th/-th pairs are not reordered by
        # eigensolver noise
        def sort_key(i: int):
            th = round(float(p[i, adjacency_index]), 9)
            return (-abs(th), -th)

        order = sorted(range(t), key=sort_key)
        p = p[order]
        mults = [int(mults[i]) for i in order]
        q = n * np.linalg.inv(p)
        if np.abs(p @ q - n * np.eye(t)).max() > 1e-6 * n:
            continue
        return EigenmatrixPair(
            p, q, tuple(float(x) for x in p[:, adjacency_index]), tuple(mults), n
        )
    raise ValueError("weight bases exhausted; eigenspaces could not be separated")


def closed_form_eigenmatrices(k: int, k4: int, c2: int) -> EigenmatrixPair:
    """Eigenmatrices of the scheme of a GDDDP(k4+1, *; k; 0, c2)
    incidence graph, as closed forms in (k, k4, c2) with
    b2 = k - (k4+1)*c2.

    The final entry of the last row of P is k4 (forced by the zero row
    sum; the suite confirms it against the exact 52-vertex computation,
    where k4 != c2 distinguishes the two).
    """
    b2 = k - (k4 + 1) * c2
    if b2 < 0:
        raise ValueError("k - (k4+1)*c2 must be >= 0")
    if b2 == 0:
        # sqrt(b2) = -sqrt(b2) = 0 collapses the eigenvalue set: P is
        # singular and Q does not exist
        raise ValueError("b2 = 0 degenerates the scheme; no 6-eigenvalue closed form")
    rk = math.sqrt(k)
    rb = math.sqrt(b2)
    k2 = (k - 1) * k / c2
    k3 = k * k4
    kp = (k - 1) * b2 / c2
    p = np.array(
        [
            [1, k, k2, k3, kp, k4],
            [1, -k, k2, -k3, -kp, k4],
            [1, rk, 0, -rk, 0, -1],
            [1, -rk, 0, rk, 0, -1],
            [1, rb, -k4 - 1, k4 * rb, -(k4 + 1) * rb, k4],
            [1, -rb, -k4 - 1, -k4 * rb, (k4 + 1) * rb, k4],
        ]
    )
    mk = (k * k - b2) * k4 / (k - b2)
    mb = (k - 1) * k / (k - b2)
    q = np.array(
        [
            [1, 1, mk, mk, mb, mb],
            [1, -1, mk / rk, -mk / rk, rb * (k - 1) / (k - b2), -rb * (k - 1) / (k - b2)],
            [1, 1, 0, 0, -1, -1],
            [1, -1, -(k * k - b2) / (rk * (k - b2)), (k * k - b2) / (rk * (k - b2)),
             rb * (k - 1) / (k - b2), -rb * (k - 1) / (k - b2)],
            [1, -1, 0, 0, -k / rb, k / rb],
            [1, 1, -(k * k - b2) / (k - b2), -(k * k - b2) / (k - b2), mb, mb],
        ]
    )
    size = 2 * (1 + k2 + k4)
    mults = (1, 1, mk, mk, mb, mb)
    imults = tuple(int(round(x)) for x in mults)
    if any(abs(a - b) > 1e-9 for a, b in zip(mults, imults)):
        raise ValueError("parameters give non-integral multiplicities")
    return EigenmatrixPair(
        p, q, (float(k), float(-k), rk, -rk, rb, -rb), imults, int(size)
    )


def match_rows_by_eigenvalue(
    computed: EigenmatrixPair, reference: EigenmatrixPair, tol: float = 1e-6
) -> list[int]:
    """Index r such that computed row i corresponds to reference row
    r[i], matching on the adjacency-relation eigenvalue."""
    out = []
    used = set()
    for theta in computed.row_eigenvalues:
        j = min(
            (jj for jj in range(len(reference.row_eigenvalues)) if jj not in used),
            key=lambda jj: abs(reference.row_eigenvalues[jj] - theta),
        )
        if abs(reference.row_eigenvalues[j] - theta) > tol:
            raise ValueError(f"no reference row with eigenvalue {theta}")
        used.add(j)
        out.append(j)
    return out


def diagram_to_gdddp(diag: DistributionDiagram) -> GDDParams:
    """Read (n, m; k; 0, lambda2) off a six-cell diagram of the GDDDP
    shape; raises ValueError when the diagram has a different shape."""
    if len(diag.sizes) != 6:
        raise ValueError(f"diagram has {len(diag.sizes)} cells, need 6")
    k = diag.q[0][1]
    c2 = diag.q[2][1]
    k4 = diag.sizes[5]
    if c2 < 1:
        raise ValueError("second-to-first cell count must be positive")
    expected = gdddp_diagram(k, c2, k4)
    if expected != diag:
        raise ValueError("diagram does not have the GDDDP shape")
    points = diag.total // 2
    n = k4 + 1
    if diag.total % 2 or points % n:
        raise ValueError("cell sizes inconsistent with a point/block split")
    return GDDParams(n=n, m=points // n, k=k, lambda1=0, lambda2=c2)
