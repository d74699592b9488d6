"""Exact arithmetic in GF(p^e), with vectors, matrices, and Singer cycles.

Conventions, fixed once and used everywhere:

* Polynomials over Z_p are coefficient tuples, low degree first.
* Every element of GF(p^e) has an integer *encoding* sum(c_i * p**i).
  "Least" element / polynomial always means least encoding; this makes
  every construction deterministic and reproducible.
* The modulus of GF(p^e) is the first monic irreducible of degree e in
  encoding order of the non-leading coefficients (for e = 1 this is the
  polynomial x, i.e. plain Z_p arithmetic).
* Companion matrices act on column vectors; the last column carries the
  negated low-order coefficients of the polynomial.
* Matrices act on points by x -> M x and on hyperplane labels by
  y -> (M^T)^{-1} y, so that x in H_y iff M x in H_{(M^T)^{-1} y}.
"""

from __future__ import annotations

import itertools
from functools import lru_cache
from typing import Iterator, Sequence

from .symmetry import Permutation


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    d = 2
    while d * d <= n:
        if n % d == 0:
            return False
        d += 1
    return True


def prime_factors(n: int) -> list[int]:
    """Distinct prime factors of n, by trial division (desk scale only)."""
    out = []
    d = 2
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            while n % d == 0:
                n //= d
        d += 1
    if n > 1:
        out.append(n)
    return out


def prime_power(q: int) -> tuple[int, int]:
    """Write q = p^e with p prime, or raise ValueError."""
    if q < 2:
        raise ValueError(f"{q} is not a prime power")
    ps = prime_factors(q)
    if len(ps) != 1:
        raise ValueError(f"{q} is not a prime power")
    p = ps[0]
    e = 0
    m = q
    while m > 1:
        m //= p
        e += 1
    if p**e != q:
        raise ValueError(f"{q} is not a prime power")
    return p, e


# ---------------------------------------------------------------------------
# dense polynomial arithmetic over Z_p (coefficient tuples, low degree first)

def _poly_trim(a: Sequence[int]) -> tuple[int, ...]:
    i = len(a)
    while i > 0 and a[i - 1] == 0:
        i -= 1
    return tuple(a[:i])


def _poly_mul(a, b, p):
    if not a or not b:
        return ()
    out = [0] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                out[i + j] = (out[i + j] + ai * bj) % p
    return _poly_trim(out)


def _poly_mod(a, m, p):
    # m monic
    a = list(a)
    dm = len(m) - 1
    for i in range(len(a) - 1, dm - 1, -1):
        c = a[i] % p
        if c:
            a[i] = 0
            for j in range(dm):
                a[i - dm + j] = (a[i - dm + j] - c * m[j]) % p
    return _poly_trim(a)


def _poly_powmod(a, n, m, p):
    result = (1,)
    base = _poly_mod(a, m, p)
    while n:
        if n & 1:
            result = _poly_mod(_poly_mul(result, base, p), m, p)
        base = _poly_mod(_poly_mul(base, base, p), m, p)
        n >>= 1
    return result


def _poly_gcd(a, b, p):
    a, b = _poly_trim(a), _poly_trim(b)
    while b:
        # make b monic before reducing
        inv = pow(b[-1], p - 2, p) if b[-1] != 1 else 1
        b = tuple((c * inv) % p for c in b)
        a, b = b, _poly_mod(a, b, p)
    return a


def _is_irreducible(f, p) -> bool:
    """Monic f over Z_p has no factor of degree <= deg(f)/2.

    x^{p^i} - x is the product of all monic irreducibles of degree
    dividing i, so a gcd check over i = 1 .. deg/2 is a complete test.
    """
    e = len(f) - 1
    if e <= 0:
        return False
    t = (0, 1)  # x
    for _ in range(e // 2):
        t = _poly_powmod(t, p, f, p)
        # gcd(f, t - x); the zero polynomial means f | x^{p^i} - x
        diff = list(t) + [0] * max(0, 2 - len(t))
        diff[1] = (diff[1] - 1) % p
        g = _poly_gcd(f, _poly_trim(diff), p)
        if len(g) - 1 >= 1 or not g:
            return False
    return True


class FieldElement:
    """Element of a FiniteField in the polynomial basis.

    Immutable; supports +, -, *, /, ** and equality/hash. Mixing elements
    of different fields raises.
    """

    __slots__ = ("field", "coeffs")

    def __init__(self, field: "FiniteField", coeffs: Sequence[int]):
        if len(coeffs) != field.degree:
            raise ValueError("coefficient tuple has wrong length")
        self.field = field
        self.coeffs = tuple(c % field.characteristic for c in coeffs)

    @property
    def encoding(self) -> int:
        p = self.field.characteristic
        n = 0
        for c in reversed(self.coeffs):
            n = n * p + c
        return n

    def _check(self, other):
        if not isinstance(other, FieldElement) or other.field is not self.field:
            raise TypeError("operands belong to different fields")

    def __add__(self, other):
        self._check(other)
        p = self.field.characteristic
        return FieldElement(self.field, [(a + b) % p for a, b in zip(self.coeffs, other.coeffs)])

    def __sub__(self, other):
        self._check(other)
        p = self.field.characteristic
        return FieldElement(self.field, [(a - b) % p for a, b in zip(self.coeffs, other.coeffs)])

    def __neg__(self):
        p = self.field.characteristic
        return FieldElement(self.field, [(-a) % p for a in self.coeffs])

    def __mul__(self, other):
        self._check(other)
        f = self.field
        prod = _poly_mul(self.coeffs, other.coeffs, f.characteristic)
        red = _poly_mod(prod, f.modulus, f.characteristic)
        return f.element(red)

    def inverse(self) -> "FieldElement":
        if self.is_zero():
            raise ZeroDivisionError("inverse of zero")
        return self ** (self.field.order - 2)

    def __truediv__(self, other):
        self._check(other)
        return self * other.inverse()

    def __pow__(self, n: int) -> "FieldElement":
        if n < 0:
            return self.inverse() ** (-n)
        result = self.field.one
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def is_zero(self) -> bool:
        return all(c == 0 for c in self.coeffs)

    def multiplicative_order(self) -> int:
        if self.is_zero():
            raise ValueError("zero has no multiplicative order")
        n = self.field.order - 1
        order = n
        for r in prime_factors(n):
            while order % r == 0 and (self ** (order // r)) == self.field.one:
                order //= r
        return order

    def __eq__(self, other):
        return (
            isinstance(other, FieldElement)
            and other.field is self.field
            and other.coeffs == self.coeffs
        )

    def __hash__(self):
        return hash((id(self.field), self.coeffs))

    def __repr__(self):
        return f"Fe({self.encoding}/{self.field.order})"


class FiniteField:
    """GF(p^e) with the canonical (least-encoding) irreducible modulus."""

    def __init__(self, p: int, e: int):
        if not is_prime(p):
            raise ValueError(f"characteristic {p} is not prime")
        if e < 1:
            raise ValueError("degree must be >= 1")
        self.characteristic = p
        self.degree = e
        self.order = p**e
        self.modulus = self._find_modulus(p, e)
        self.zero = FieldElement(self, (0,) * e)
        self.one = FieldElement(self, (1,) + (0,) * (e - 1))

    @staticmethod
    def _find_modulus(p: int, e: int) -> tuple[int, ...]:
        for n in range(p**e):
            coeffs = []
            m = n
            for _ in range(e):
                coeffs.append(m % p)
                m //= p
            f = tuple(coeffs) + (1,)
            if _is_irreducible(f, p):
                return f
        raise AssertionError("no irreducible polynomial found")  # unreachable

    def element(self, coeffs: Sequence[int]) -> FieldElement:
        coeffs = tuple(coeffs) + (0,) * (self.degree - len(coeffs))
        return FieldElement(self, coeffs)

    def from_encoding(self, n: int) -> FieldElement:
        if not 0 <= n < self.order:
            raise ValueError("encoding out of range")
        p = self.characteristic
        coeffs = []
        for _ in range(self.degree):
            coeffs.append(n % p)
            n //= p
        return FieldElement(self, coeffs)

    def from_int(self, n: int) -> FieldElement:
        """n mod p as a constant of the field (prime-subfield embedding)."""
        return self.element((n % self.characteristic,))

    def elements(self) -> Iterator[FieldElement]:
        for n in range(self.order):
            yield self.from_encoding(n)

    def nonzero_elements(self) -> Iterator[FieldElement]:
        for n in range(1, self.order):
            yield self.from_encoding(n)

    def __eq__(self, other):
        return (
            isinstance(other, FiniteField)
            and other.characteristic == self.characteristic
            and other.degree == self.degree
        )

    def __hash__(self):
        return hash((self.characteristic, self.degree))

    def __repr__(self):
        return f"GF({self.order})"


@lru_cache(maxsize=None)
def ff_make(p: int, e: int) -> FiniteField:
    """The canonical GF(p^e); cached so `is`-identity holds per (p, e)."""
    return FiniteField(p, e)


def field_of_order(q: int) -> FiniteField:
    p, e = prime_power(q)
    return ff_make(p, e)


def primitive_element(field: FiniteField) -> FieldElement:
    """Least element of multiplicative order q - 1.

    Order is certified by checking z^((q-1)/r) != 1 for every prime r
    dividing q - 1.
    """
    n = field.order - 1
    rs = prime_factors(n)
    for a in field.nonzero_elements():
        if all(a ** (n // r) != field.one for r in rs):
            return a
    raise AssertionError("no primitive element found")  # unreachable


# ---------------------------------------------------------------------------
# vectors and matrices

def vector(field: FiniteField, ints: Sequence[int]) -> tuple[FieldElement, ...]:
    return tuple(field.from_int(c) for c in ints)


def vec_encoding(v: Sequence[FieldElement]) -> int:
    """Deterministic integer key of a vector (entry encodings, base q)."""
    q = v[0].field.order
    n = 0
    for x in reversed(v):
        n = n * q + x.encoding
    return n


def all_vectors(field: FiniteField, d: int) -> list[tuple[FieldElement, ...]]:
    """All vectors of GF(q)^d in encoding order."""
    elems = list(field.elements())
    out = []
    for combo in itertools.product(*[elems] * d):
        out.append(tuple(combo))
    out.sort(key=vec_encoding)
    return out


def nonzero_vectors(field: FiniteField, d: int) -> list[tuple[FieldElement, ...]]:
    return [v for v in all_vectors(field, d) if any(not x.is_zero() for x in v)]


def dot(u: Sequence[FieldElement], v: Sequence[FieldElement]) -> FieldElement:
    acc = u[0].field.zero
    for a, b in zip(u, v):
        acc = acc + a * b
    return acc


class MatrixGF:
    """Immutable square matrix over a FiniteField."""

    __slots__ = ("field", "rows", "_key")

    def __init__(self, field: FiniteField, rows: Sequence[Sequence[FieldElement]]):
        self.field = field
        self.rows = tuple(tuple(r) for r in rows)
        d = len(self.rows)
        if any(len(r) != d for r in self.rows):
            raise ValueError("matrix must be square")
        self._key = tuple(tuple(x.encoding for x in r) for r in self.rows)

    @property
    def dimension(self) -> int:
        return len(self.rows)

    @classmethod
    def identity(cls, field: FiniteField, d: int) -> "MatrixGF":
        one, zero = field.one, field.zero
        return cls(field, [[one if i == j else zero for j in range(d)] for i in range(d)])

    @classmethod
    def from_ints(cls, field: FiniteField, rows: Sequence[Sequence[int]]) -> "MatrixGF":
        return cls(field, [[field.from_int(c) for c in r] for r in rows])

    def __mul__(self, other: "MatrixGF") -> "MatrixGF":
        d = self.dimension
        zero = self.field.zero
        out = []
        for i in range(d):
            row = []
            for j in range(d):
                acc = zero
                for k in range(d):
                    acc = acc + self.rows[i][k] * other.rows[k][j]
                row.append(acc)
            out.append(row)
        return MatrixGF(self.field, out)

    def apply(self, v: Sequence[FieldElement]) -> tuple[FieldElement, ...]:
        """M @ v for a column vector v."""
        return tuple(dot(row, v) for row in self.rows)

    def transpose(self) -> "MatrixGF":
        d = self.dimension
        return MatrixGF(self.field, [[self.rows[j][i] for j in range(d)] for i in range(d)])

    def inverse(self) -> "MatrixGF":
        """Gauss-Jordan over the field; raises ValueError if singular."""
        d = self.dimension
        f = self.field
        aug = [list(self.rows[i]) + [f.one if i == j else f.zero for j in range(d)] for i in range(d)]
        for col in range(d):
            piv = next((r for r in range(col, d) if not aug[r][col].is_zero()), None)
            if piv is None:
                raise ValueError("matrix is singular")
            aug[col], aug[piv] = aug[piv], aug[col]
            inv = aug[col][col].inverse()
            aug[col] = [x * inv for x in aug[col]]
            for r in range(d):
                if r != col and not aug[r][col].is_zero():
                    c = aug[r][col]
                    aug[r] = [a - c * b for a, b in zip(aug[r], aug[col])]
        return MatrixGF(f, [row[d:] for row in aug])

    def is_invertible(self) -> bool:
        try:
            self.inverse()
            return True
        except ValueError:
            return False

    def __pow__(self, n: int) -> "MatrixGF":
        if n < 0:
            return self.inverse() ** (-n)
        result = MatrixGF.identity(self.field, self.dimension)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def multiplicative_order(self) -> int:
        """Order in GL; brute multiply (desk scale)."""
        ident = MatrixGF.identity(self.field, self.dimension)
        m = self
        order = 1
        while m != ident:
            m = m * self
            order += 1
            if order > self.field.order ** (self.dimension**2):
                raise RuntimeError("order computation runaway; matrix not invertible?")
        return order

    def __eq__(self, other):
        return isinstance(other, MatrixGF) and other._key == self._key and other.field == self.field

    def __hash__(self):
        return hash(self._key)

    def __repr__(self):
        return f"MatrixGF({self._key})"


# ---------------------------------------------------------------------------
# Singer cycle

def _minimal_polynomial_over_subfield(w: FieldElement, sub: FiniteField, d: int) -> list[FieldElement]:
    """Coefficients (in `sub`, low degree first, monic) of the degree-d
    minimal polynomial of w over the subfield of w's field isomorphic to
    `sub`.

    The subfield copy inside K = w.field is located by rooting sub's
    modulus; the least root fixes the embedding deterministically.
    """
    K = w.field
    q = sub.order
    # conjugates of w over GF(q): w, w^q, ..., w^(q^(d-1))
    conj = []
    t = w
    for _ in range(d):
        conj.append(t)
        t = t**q
    if t != w:
        raise AssertionError("element does not have degree d over the subfield")
    # expand prod (x - c) in K[x]
    poly = [K.one]
    for c in conj:
        nxt = [K.zero] * (len(poly) + 1)
        for i, a in enumerate(poly):
            nxt[i + 1] = nxt[i + 1] + a
            nxt[i] = nxt[i] - c * a
        poly = nxt
    # embed sub -> K by the least root beta of sub's modulus
    beta = None
    for cand in sorted(_subfield_elements(K, q), key=lambda x: x.encoding):
        acc = K.zero
        power = K.one
        for m_c in sub.modulus:
            acc = acc + K.from_int(m_c) * power
            power = power * cand
        if acc.is_zero():
            beta = cand
            break
    if beta is None:
        raise AssertionError("subfield modulus has no root; incompatible degrees")
    image = {}
    for a in sub.elements():
        acc = K.zero
        power = K.one
        for c in a.coeffs:
            acc = acc + K.from_int(c) * power
            power = power * beta
        image[acc] = a
    out = []
    for coeff in poly:
        if coeff not in image:
            raise AssertionError("minimal polynomial coefficient outside subfield")
        out.append(image[coeff])
    return out  # low degree first, length d+1, monic


def singer_matrix(d: int, q: int) -> MatrixGF:
    """Companion matrix of the minimal polynomial over GF(q) of a
    primitive element of GF(q^d); generates a cyclic subgroup of
    GL(d, q) of order q^d - 1 acting transitively on nonzero vectors.
    """
    if d < 2:
        raise ValueError("dimension must be >= 2")
    p, e = prime_power(q)
    F = ff_make(p, e)
    K = ff_make(p, e * d)
    w = primitive_element(K)
    mp = _minimal_polynomial_over_subfield(w, F, d)
    # companion matrix, column convention: last column = -low coefficients
    zero, one = F.zero, F.one
    rows = []
    for i in range(d):
        row = [zero] * d
        if i > 0:
            row[i - 1] = one
        row[d - 1] = -mp[i]
        rows.append(row)
    return MatrixGF(F, rows)


def _subfield_elements(K: FiniteField, q: int) -> list[FieldElement]:
    """Elements of the order-q subfield of K: zero plus the unique
    multiplicative subgroup of order q - 1."""
    n = K.order - 1
    if n % (q - 1) != 0:
        raise ValueError("no subfield of that order")
    w = primitive_element(K)
    s = n // (q - 1)
    out = [K.zero]
    t = K.one
    for _ in range(q - 1):
        out.append(t)
        t = t * (w**s)
    return out


# ---------------------------------------------------------------------------
# GL(d, q) generators and the point/block action

def gl_generators(d: int, q: int) -> list[MatrixGF]:
    """diag(zeta, 1, .., 1), the transvection I + E_12, and the basis
    cycle: together they generate GL(d, q) (certified by the order test
    in the suite, not by citation)."""
    if d < 2:
        raise ValueError("dimension must be >= 2")
    F = field_of_order(q)
    zeta = primitive_element(F)
    one, zero = F.one, F.zero
    diag = [[zeta if i == j == 0 else (one if i == j else zero) for j in range(d)] for i in range(d)]
    trans = [[one if i == j else (one if (i, j) == (0, 1) else zero) for j in range(d)] for i in range(d)]
    cyc = [[one if i == (j + 1) % d else zero for j in range(d)] for i in range(d)]
    return [MatrixGF(F, diag), MatrixGF(F, trans), MatrixGF(F, cyc)]


def point_block_action(
    M: MatrixGF,
    points: Sequence[tuple[FieldElement, ...]],
    block_labels: Sequence[tuple[FieldElement, ...]],
) -> Permutation:
    """Permutation of the incidence-graph vertex list [points | blocks]
    induced by x -> M x on points and y -> (M^T)^{-1} y on block labels.

    Composition is an anti-homomorphism of our left-to-right Permutation
    product: action(M1 * M2) == action(M2) * action(M1).
    """
    if not M.is_invertible():
        raise ValueError("matrix is singular")
    mt_inv = M.transpose().inverse()
    pindex = {vec_encoding(v): i for i, v in enumerate(points)}
    bindex = {vec_encoding(v): i for i, v in enumerate(block_labels)}
    np_ = len(points)
    img = [0] * (np_ + len(block_labels))
    for i, x in enumerate(points):
        img[i] = pindex[vec_encoding(M.apply(x))]
    for j, y in enumerate(block_labels):
        img[np_ + j] = np_ + bindex[vec_encoding(mt_inv.apply(y))]
    return Permutation(img)
