"""Exact rational linear algebra.

Scalars are :class:`fractions.Fraction`. Matrices are numpy ``object``
arrays of Fractions. Row reduction runs fraction-free on primitive integer
rows and only converts back to Fractions at the end.
"""

from __future__ import annotations

import itertools
from fractions import Fraction
from math import gcd, lcm
from typing import Iterable, Sequence

import numpy as np

Rat = Fraction
Mat = np.ndarray


def rat(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, str):
        return Fraction(x.strip())
    return Fraction(x)


def mat(rows) -> Mat:
    """Build an object matrix of Fractions from nested sequences."""
    rows = [[rat(x) for x in row] for row in rows]
    ncols = len(rows[0]) if rows else 0
    out = np.empty((len(rows), ncols), dtype=object)
    for i, row in enumerate(rows):
        if len(row) != ncols:
            raise ValueError("ragged matrix")
        out[i, :] = row
    return out


def zeros(r: int, c: int) -> Mat:
    out = np.empty((r, c), dtype=object)
    out.fill(Fraction(0))
    return out


def identity(n: int) -> Mat:
    out = zeros(n, n)
    for i in range(n):
        out[i, i] = Fraction(1)
    return out


def is_zero_matrix(m: Mat) -> bool:
    return all(x == 0 for x in np.asarray(m).ravel())


# ------------------------------------------------------------------ row reducer


def _primitive(row: list[int]) -> list[int]:
    g = gcd(*row)
    if g > 1:
        return [x // g for x in row]
    return row


def _int_row(row: Sequence) -> list[int]:
    """Scale a rational row to a primitive integer row."""
    den = 1
    for x in row:
        if isinstance(x, Fraction) and x.denominator != 1:
            den = lcm(den, x.denominator)
    if den == 1:
        out = [int(x) for x in row]
    else:
        out = [int(x * den) for x in row]
    return _primitive(out)


class RowReducer:
    """Incrementally maintained reduced row-echelon basis (integer rows).

    Rows are kept fully reduced against each other; each stored row is
    primitive with positive pivot. ``add`` returns True when the row
    enlarged the span.
    """

    __slots__ = ("ncols", "rows", "pivots")

    def __init__(self, ncols: int):
        self.ncols = ncols
        self.rows: list[list[int]] = []
        self.pivots: list[int] = []

    @property
    def rank(self) -> int:
        return len(self.rows)

    def _reduce_int(self, v: list[int]) -> list[int]:
        for p, r in zip(self.pivots, self.rows):
            b = v[p]
            if b:
                a = r[p]
                v = _primitive([a * x - b * y for x, y in zip(v, r)])
        return v

    def reduce(self, row: Sequence) -> list[int]:
        """Reduce ``row`` modulo the current span; returns a primitive integer row."""
        return self._reduce_int(_int_row(row))

    def add(self, row: Sequence) -> bool:
        if len(row) != self.ncols:
            raise ValueError(f"row length {len(row)} != {self.ncols}")
        v = self.reduce(row)
        piv = next((i for i, x in enumerate(v) if x), -1)
        if piv < 0:
            return False
        if v[piv] < 0:
            v = [-x for x in v]
        a = v[piv]
        for k, r in enumerate(self.rows):
            b = r[piv]
            if b:
                nr = _primitive([a * x - b * y for x, y in zip(r, v)])
                if nr[self.pivots[k]] < 0:
                    nr = [-x for x in nr]
                self.rows[k] = nr
        pos = 0
        while pos < len(self.pivots) and self.pivots[pos] < piv:
            pos += 1
        self.rows.insert(pos, v)
        self.pivots.insert(pos, piv)
        return True

    def fraction_rows(self) -> list[tuple[Fraction, ...]]:
        out = []
        for p, r in zip(self.pivots, self.rows):
            a = r[p]
            out.append(tuple(Fraction(x, a) for x in r))
        return out


def rref(m) -> tuple[Mat, list[int], int]:
    """Reduced row-echelon form, pivot columns and rank."""
    m = np.asarray(m, dtype=object)
    nrows, ncols = m.shape
    red = RowReducer(ncols)
    for row in m:
        red.add(list(row))
    out = zeros(nrows, ncols)
    for i, row in enumerate(red.fraction_rows()):
        out[i, :] = row
    return out, list(red.pivots), red.rank


def rank(m) -> int:
    m = np.asarray(m, dtype=object)
    if m.size == 0:
        return 0
    red = RowReducer(m.shape[1])
    for row in m:
        red.add(list(row))
    return red.rank


# -------------------------------------------------------------------- subspace


class Subspace:
    """A subspace of Q^n held by its canonical reduced row-echelon basis."""

    __slots__ = ("ambient_dim", "basis", "pivots", "_hash", "_sparse_rows")

    def __init__(self, ambient_dim: int, vectors: Iterable[Sequence] = (), *, _canonical=None):
        self.ambient_dim = ambient_dim
        if _canonical is not None:
            self.basis, self.pivots = _canonical
        else:
            red = RowReducer(ambient_dim)
            for v in vectors:
                red.add(list(v))
            self.basis = tuple(red.fraction_rows())
            self.pivots = tuple(red.pivots)
        self._hash = None
        self._sparse_rows = None

    @classmethod
    def from_reducer(cls, red: RowReducer) -> "Subspace":
        return cls(red.ncols, _canonical=(tuple(red.fraction_rows()), tuple(red.pivots)))

    @classmethod
    def zero(cls, n: int) -> "Subspace":
        return cls(n, _canonical=((), ()))

    @classmethod
    def full(cls, n: int) -> "Subspace":
        rows = tuple(tuple(Fraction(int(i == j)) for j in range(n)) for i in range(n))
        return cls(n, _canonical=(rows, tuple(range(n))))

    @classmethod
    def coordinate(cls, n: int, coords: Iterable[int]) -> "Subspace":
        """Span of the standard basis vectors indexed by ``coords``."""
        cs = sorted(set(coords))
        rows = tuple(tuple(Fraction(int(j == c)) for j in range(n)) for c in cs)
        return cls(n, _canonical=(rows, tuple(cs)))

    @property
    def dim(self) -> int:
        return len(self.basis)

    def matrix(self) -> Mat:
        if not self.basis:
            return zeros(0, self.ambient_dim)
        return mat(self.basis)

    def reducer(self) -> RowReducer:
        red = RowReducer(self.ambient_dim)
        red.rows = [_int_row(r) for r in self.basis]
        red.pivots = list(self.pivots)
        return red

    def _sparse(self):
        sp = getattr(self, "_sparse_rows", None)
        if sp is None:
            sp = [[(j, x) for j, x in enumerate(b) if x] for b in self.basis]
            self._sparse_rows = sp
        return sp

    def reduce(self, v: Sequence) -> list[Fraction]:
        """Canonical coset representative of v modulo this subspace."""
        v = [rat(x) for x in v]
        for p, row in zip(self.pivots, self._sparse()):
            c = v[p]
            if c:
                for j, y in row:
                    v[j] -= c * y
        return v

    def contains_vector(self, v: Sequence) -> bool:
        return not any(self.reduce(v))

    def coords(self, v: Sequence) -> list[Fraction] | None:
        """Coordinates of v in the canonical basis, or None if v is outside."""
        if not self.contains_vector(v):
            return None
        return [rat(v[p]) for p in self.pivots]

    def _check(self, other: "Subspace"):
        if self.ambient_dim != other.ambient_dim:
            raise ValueError(f"ambient dimension mismatch: {self.ambient_dim} vs {other.ambient_dim}")

    def __add__(self, other: "Subspace") -> "Subspace":
        self._check(other)
        red = self.reducer()
        for v in other.basis:
            red.add(v)
        return Subspace.from_reducer(red)

    def annihilator(self) -> "Subspace":
        """Vectors orthogonal (standard pairing) to this subspace."""
        return nullspace(self.matrix()) if self.basis else Subspace.full(self.ambient_dim)

    def intersection(self, other: "Subspace") -> "Subspace":
        self._check(other)
        if not self.basis or not other.basis:
            return Subspace.zero(self.ambient_dim)
        if self.is_coordinate() and other.is_coordinate():
            return Subspace.coordinate(self.ambient_dim, set(self.pivots) & set(other.pivots))
        ann = self.annihilator() + other.annihilator()
        if not ann.basis:
            return Subspace.full(self.ambient_dim)
        return nullspace(ann.matrix())

    __and__ = intersection

    def is_coordinate(self) -> bool:
        """Spanned by standard basis vectors."""
        return all(sum(1 for x in row if x) == 1 for row in self.basis)

    def contains(self, other: "Subspace") -> bool:
        self._check(other)
        return all(self.contains_vector(v) for v in other.basis)

    def __le__(self, other: "Subspace") -> bool:
        return other.contains(self)

    def __eq__(self, other) -> bool:
        if not isinstance(other, Subspace):
            return NotImplemented
        return self.ambient_dim == other.ambient_dim and self.basis == other.basis

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.ambient_dim, self.basis))
        return self._hash

    def __repr__(self):
        return f"Subspace(dim={self.dim}, ambient={self.ambient_dim})"


def span(ambient_dim: int, vectors: Iterable[Sequence]) -> Subspace:
    return Subspace(ambient_dim, vectors)


def nullspace(m) -> Subspace:
    """Basis of {v : m·v = 0}."""
    m = np.asarray(m, dtype=object)
    ncols = m.shape[1]
    red = RowReducer(ncols)
    for row in m:
        red.add(list(row))
    rows = red.fraction_rows()
    free = [c for c in range(ncols) if c not in set(red.pivots)]
    vecs = []
    for f in free:
        v = [Fraction(0)] * ncols
        v[f] = Fraction(1)
        for p, r in zip(red.pivots, rows):
            v[p] = -r[f]
        vecs.append(v)
    return Subspace(ncols, vecs)


def solve(m, b: Sequence) -> list[Fraction] | None:
    """A particular solution x of m·x = b, or None when inconsistent."""
    m = np.asarray(m, dtype=object)
    nrows, ncols = m.shape
    if len(b) != nrows:
        raise ValueError("right-hand side length does not match rows")
    red = RowReducer(ncols + 1)
    for row, bi in zip(m, b):
        red.add(list(row) + [rat(bi)])
    if ncols in red.pivots:
        return None
    x = [Fraction(0)] * ncols
    for p, r in zip(red.pivots, red.fraction_rows()):
        x[p] = r[-1]
    return x


def matvec(m: Mat, v: Sequence) -> list[Fraction]:
    return list(np.asarray(m, dtype=object).dot(np.asarray(list(v), dtype=object)))


def first_relation(vectors: Iterable[Sequence], max_len: int) -> list[Fraction] | None:
    """Coefficients c_0..c_k (c_k = 1) of the first linear dependency
    c_0 v_0 + ... + c_k v_k = 0 in a stream of vectors, or None if
    ``max_len`` vectors are independent."""
    red = None
    for k, v in enumerate(vectors):
        if k >= max_len:
            return None
        v = list(v)
        n = len(v)
        if red is None:
            red = RowReducer(n + max_len)
        tag = [0] * max_len
        tag[k] = 1
        row = _int_row(v + tag)
        r = red._reduce_int(row)
        if not any(r[:n]):
            tail = r[n:n + k + 1]
            lead = tail[k]
            return [Fraction(c, lead) for c in tail]
        red.add(r)
    return None


# ------------------------------------------------------------------ polynomials


class Poly:
    """Univariate polynomial over Q; ``coeffs`` lowest degree first."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable = ()):
        cs = [rat(c) for c in coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        self.coeffs = tuple(cs)

    @classmethod
    def x(cls) -> "Poly":
        return cls([0, 1])

    @classmethod
    def const(cls, c) -> "Poly":
        return cls([c])

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    @property
    def lc(self) -> Fraction:
        return self.coeffs[-1] if self.coeffs else Fraction(0)

    def monic(self) -> "Poly":
        if not self.coeffs:
            return self
        lc = self.lc
        return Poly(c / lc for c in self.coeffs)

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = Poly.const(other)
        return isinstance(other, Poly) and self.coeffs == other.coeffs

    def __hash__(self):
        return hash(self.coeffs)

    def __add__(self, other: "Poly") -> "Poly":
        a, b = self.coeffs, other.coeffs
        n = max(len(a), len(b))
        return Poly((a[i] if i < len(a) else 0) + (b[i] if i < len(b) else 0) for i in range(n))

    def __neg__(self):
        return Poly(-c for c in self.coeffs)

    def __sub__(self, other: "Poly") -> "Poly":
        return self + (-other)

    def __mul__(self, other) -> "Poly":
        if isinstance(other, (int, Fraction)):
            return Poly(c * other for c in self.coeffs)
        a, b = self.coeffs, other.coeffs
        if not a or not b:
            return Poly()
        out = [Fraction(0)] * (len(a) + len(b) - 1)
        for i, x in enumerate(a):
            if x:
                for j, y in enumerate(b):
                    out[i + j] += x * y
        return Poly(out)

    __rmul__ = __mul__

    def __pow__(self, k: int) -> "Poly":
        out = Poly([1])
        for _ in range(k):
            out = out * self
        return out

    def __divmod__(self, other: "Poly"):
        if other.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        r = list(self.coeffs)
        d = other.coeffs
        q = [Fraction(0)] * max(len(r) - len(d) + 1, 0)
        lc = d[-1]
        for k in range(len(r) - len(d), -1, -1):
            c = r[k + len(d) - 1] / lc
            q[k] = c
            if c:
                for j, y in enumerate(d):
                    r[k + j] -= c * y
        return Poly(q), Poly(r[: len(d) - 1])

    def __floordiv__(self, other):
        return divmod(self, other)[0]

    def __mod__(self, other):
        return divmod(self, other)[1]

    def __call__(self, x):
        acc = Fraction(0)
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def derivative(self) -> "Poly":
        return Poly(i * c for i, c in enumerate(self.coeffs) if i)

    def __repr__(self):
        if not self.coeffs:
            return "0"
        terms = []
        for i, c in reversed(list(enumerate(self.coeffs))):
            if c == 0:
                continue
            mon = "" if i == 0 else ("x" if i == 1 else f"x^{i}")
            if mon and c == 1:
                terms.append(mon)
            elif mon and c == -1:
                terms.append("-" + mon)
            else:
                terms.append(f"{c}{'*' + mon if mon else ''}")
        return " + ".join(terms).replace("+ -", "- ")


def poly_gcd(a: Poly, b: Poly) -> Poly:
    while not b.is_zero():
        a, b = b, a % b
    return a.monic()


def poly_xgcd(a: Poly, b: Poly) -> tuple[Poly, Poly, Poly]:
    """(g, s, t) with s·a + t·b = g = gcd(a, b), g monic."""
    r0, r1 = a, b
    s0, s1 = Poly([1]), Poly()
    t0, t1 = Poly(), Poly([1])
    while not r1.is_zero():
        q, r = divmod(r0, r1)
        r0, r1 = r1, r
        s0, s1 = s1, s0 - q * s1
        t0, t1 = t1, t0 - q * t1
    lc = r0.lc
    return r0.monic(), s0 * (1 / lc), t0 * (1 / lc)


def poly_eval_matrix(p: Poly, a: Mat) -> Mat:
    n = a.shape[0]
    acc = zeros(n, n)
    eye = identity(n)
    for c in reversed(p.coeffs):
        acc = acc.dot(a) + eye * c
    return acc


def min_poly(op) -> Poly:
    """Monic minimal polynomial of a square matrix."""
    op = np.asarray(op, dtype=object)
    n, n2 = op.shape
    if n != n2:
        raise ValueError("min_poly needs a square matrix")

    def powers():
        cur = identity(n)
        while True:
            yield list(cur.ravel())
            cur = cur.dot(op)

    rel = first_relation(powers(), n + 1)
    assert rel is not None  # Cayley-Hamilton
    return Poly(rel)


# ---------------------------------------------------------------- factorization


def square_free_decomposition(f: Poly) -> list[tuple[Poly, int]]:
    """Yun's algorithm on a monic polynomial: f = prod g_k^k."""
    f = f.monic()
    out = []
    fp = f.derivative()
    a = poly_gcd(f, fp)
    b = f // a
    c = fp // a
    d = c - b.derivative()
    k = 1
    while b.degree > 0:
        g = poly_gcd(b, d)
        if g.degree > 0:
            out.append((g, k))
        b = b // g
        c = d // g
        d = c - b.derivative()
        k += 1
    return out


def _integer_primitive(p: Poly) -> list[int]:
    return _int_row(list(p.coeffs))


def _divisors(n: int) -> list[int]:
    n = abs(n)
    small = [d for d in range(1, int(n ** 0.5) + 1) if n % d == 0]
    return sorted(set(small + [n // d for d in small]))


def _rational_roots(ip: list[int]) -> list[Fraction]:
    a0, an = ip[0], ip[-1]
    roots = []
    if a0 == 0:
        roots.append(Fraction(0))
        return roots
    p = Poly(ip)
    for num in _divisors(a0):
        for den in _divisors(an):
            for sgn in (1, -1):
                r = Fraction(sgn * num, den)
                if r not in roots and p(r) == 0:
                    roots.append(r)
    return roots


def _interpolate(xs: list[int], ys: list[int]) -> Poly:
    out = Poly()
    for i, (xi, yi) in enumerate(zip(xs, ys)):
        term = Poly([yi])
        for j, xj in enumerate(xs):
            if j != i:
                term = term * Poly([Fraction(-xj, xi - xj), Fraction(1, xi - xj)])
        out = out + term
    return out


def _kronecker_split(ip: list[int]) -> list[int] | None:
    """A nontrivial integer factor of the primitive square-free polynomial
    ``ip`` (no rational roots), or None when ip is irreducible."""
    n = len(ip) - 1
    p = Poly(ip)
    cand_pts = list(range(-12, 13))
    vals = {x: int(p(x)) for x in cand_pts}
    pts = sorted((x for x in cand_pts if vals[x] != 0), key=lambda x: (len(_divisors(vals[x])), abs(x)))
    for d in range(2, n // 2 + 1):
        xs = pts[: d + 1]
        divs = []
        for i, x in enumerate(xs):
            ds = _divisors(vals[x])
            divs.append(ds if i == 0 else ds + [-y for y in ds])
        for ys in itertools.product(*divs):
            g = _interpolate(xs, list(ys))
            if g.degree != d or any(c.denominator != 1 for c in g.coeffs):
                continue
            q, r = divmod(p, g)
            if r.is_zero():
                return _integer_primitive(g)
    return None


def _factor_square_free(f: Poly) -> list[Poly]:
    ip = _integer_primitive(f)
    factors = []
    work = [ip]
    while work:
        cur = work.pop()
        if len(cur) <= 2:
            factors.append(Poly(cur).monic())
            continue
        roots = _rational_roots(cur)
        if roots:
            p = Poly(cur)
            for r in roots:
                lin = Poly([-r, 1])
                factors.append(lin)
                p = p // lin
            if p.degree >= 1:
                work.append(_integer_primitive(p))
            continue
        if len(cur) <= 4:
            factors.append(Poly(cur).monic())
            continue
        g = _kronecker_split(cur)
        if g is None:
            factors.append(Poly(cur).monic())
        else:
            p = Poly(cur)
            work.append(g)
            work.append(_integer_primitive(p // Poly(g)))
    return factors


def factor_rational(p: Poly) -> tuple[Fraction, list[tuple[Poly, int]]]:
    """Factor p over Q: returns (leading coefficient, [(monic irreducible, multiplicity)]).

    Factors are sorted by (degree, coefficients) for determinism.
    """
    if p.degree < 1:
        raise ValueError("factor_rational needs degree >= 1")
    out: dict[Poly, int] = {}
    for g, k in square_free_decomposition(p):
        for h in _factor_square_free(g):
            out[h] = out.get(h, 0) + k
    items = sorted(out.items(), key=lambda it: (it[0].degree, it[0].coeffs))
    return p.lc, items


def splitting_idempotent_poly(m: Poly) -> Poly | None:
    """Given a minimal polynomial with at least two distinct irreducible
    factors, a polynomial q with q(x) idempotent, nonzero and not the unit
    (q ≡ 1 modulo the first primary component, ≡ 0 modulo the rest)."""
    _, facs = factor_rational(m)
    if len(facs) < 2:
        return None
    g, k = facs[0]
    a = g ** k
    b = m.monic() // a
    _, s, t = poly_xgcd(a, b)
    return (t * b) % m.monic()
