"""The twisted category algebra as an exact structure-constant algebra.

Elements are sparse dicts ``{morphism id: Fraction}`` without stored zeros.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

import numpy as np

from . import kernels
from .category import FiniteCategory
from .cocycle import Cocycle
from .exactla import RowReducer, Subspace, nullspace, mat
from .green import JClassDecomposition, LayerData, corner_set

Element = dict


class AlgebraError(ValueError):
    pass


def clean(x: dict) -> dict:
    return {k: v for k, v in x.items() if v}


def add(x: dict, y: dict, c=1) -> dict:
    out = dict(x)
    for k, v in y.items():
        out[k] = out.get(k, 0) + c * v
    return clean(out)


def scale(x: dict, c) -> dict:
    return clean({k: c * v for k, v in x.items()})


class CategoryAlgebra:
    """k_alpha C over the rationals: t·s = alpha(t, s) t∘s, or 0."""

    def __init__(self, category: FiniteCategory, cocycle: Cocycle):
        self.category = category
        self.cocycle = cocycle
        self.comp = category.comp
        self.dim = category.size
        m = self.dim
        # python-level product table for speed: prod[t][s] = (t∘s, alpha) or None
        comp = self.comp.tolist()
        vals = cocycle.values
        self._prod = [[(comp[t][s], vals[(t, s)]) if comp[t][s] >= 0 else None for s in range(m)]
                      for t in range(m)]
        self._generators = None

    # ------------------------------------------------------------ elements

    def basis(self, s: int) -> dict:
        return {s: Fraction(1)}

    def unit(self) -> dict:
        c = self.category
        return {ix: 1 / self.cocycle(ix, ix) for ix in c.identity}

    def to_vector(self, x: dict) -> list[Fraction]:
        v = [Fraction(0)] * self.dim
        for k, c in x.items():
            v[k] = Fraction(c)
        return v

    def from_vector(self, v: Sequence) -> dict:
        return {k: Fraction(c) for k, c in enumerate(v) if c}

    def multiply(self, x: dict, y: dict) -> dict:
        out: dict[int, Fraction] = {}
        prod = self._prod
        for t, a in x.items():
            row = prod[t]
            for s, b in y.items():
                p = row[s]
                if p is not None:
                    r, al = p
                    out[r] = out.get(r, 0) + a * b * al
        return clean(out)

    def mul_basis_left(self, t: int, y: dict) -> dict:
        out: dict[int, Fraction] = {}
        row = self._prod[t]
        for s, b in y.items():
            p = row[s]
            if p is not None:
                out[p[0]] = out.get(p[0], 0) + b * p[1]
        return clean(out)

    def mul_basis_right(self, x: dict, s: int) -> dict:
        out: dict[int, Fraction] = {}
        prod = self._prod
        for t, a in x.items():
            p = prod[t][s]
            if p is not None:
                out[p[0]] = out.get(p[0], 0) + a * p[1]
        return clean(out)

    def power(self, x: dict, k: int, unit: dict | None = None) -> dict:
        out = unit if unit is not None else self.unit()
        for _ in range(k):
            out = self.multiply(out, x)
        return out

    def idempotent_lift(self, e: int) -> dict:
        """e' = alpha(e, e)^-1 e, an idempotent of the algebra."""
        if not self.category.is_idempotent(e):
            raise AlgebraError(f"{self.category.name(e)} is not an idempotent morphism")
        return {e: 1 / self.cocycle(e, e)}

    def left_matrix(self, x: dict) -> np.ndarray:
        """Matrix of y -> x·y in the morphism basis (columns = inputs)."""
        m = self.dim
        out = [[Fraction(0)] * m for _ in range(m)]
        for s in range(m):
            for r, c in self.mul_basis_right(x, s).items():
                out[r][s] += c
        return mat(out)

    def generators(self) -> list[int]:
        """Identities plus a greedy set of morphisms generating the algebra."""
        if self._generators is None:
            comp = self.comp
            gens = list(self.category.identity)
            closed = set(gens)

            def close(current: set[int]) -> set[int]:
                frontier = list(current)
                while frontier:
                    nxt = []
                    for a in frontier:
                        for g in gens:
                            for r in (comp[g, a], comp[a, g]):
                                r = int(r)
                                if r >= 0 and r not in current:
                                    current.add(r)
                                    nxt.append(r)
                    frontier = nxt
                return current

            closed = close(closed)
            for s in range(self.dim):
                if s not in closed:
                    gens.append(s)
                    closed.add(s)
                    closed = close(closed)
            self._generators = gens
        return list(self._generators)

    # ------------------------------------------------------------ subspaces

    def span(self, elements: Iterable[dict]) -> Subspace:
        return Subspace(self.dim, (self.to_vector(x) for x in elements))

    def ideal_span(self, generators: Iterable[dict], side: str = "both") -> Subspace:
        """Smallest subspace containing the generators and closed under
        multiplication by basis morphisms on the given side(s)."""
        queue = [clean(dict(g)) for g in generators]
        if all(len(g) <= 1 for g in queue):
            # products of morphisms are nonzero multiples of morphisms
            return Subspace.coordinate(self.dim, self._monomial_closure([k for g in queue for k in g], side))
        red = RowReducer(self.dim)
        while queue:
            x = queue.pop()
            if not x or not red.add(self.to_vector(x)):
                continue
            for b in range(self.dim):
                if side in ("both", "left"):
                    y = self.mul_basis_left(b, x)
                    if y:
                        queue.append(y)
                if side in ("both", "right"):
                    y = self.mul_basis_right(x, b)
                    if y:
                        queue.append(y)
        return Subspace.from_reducer(red)

    def _monomial_closure(self, start: list[int], side: str) -> list[int]:
        comp = self.comp
        seen = set(start)
        frontier = list(start)
        while frontier:
            nxt = []
            for x in frontier:
                cand = []
                if side in ("both", "left"):
                    cand.append(comp[:, x])
                if side in ("both", "right"):
                    cand.append(comp[x, :])
                for y in np.concatenate(cand).tolist():
                    if y >= 0 and y not in seen:
                        seen.add(y)
                        nxt.append(y)
            frontier = nxt
        return sorted(seen)

    def left_ideal(self, generators: Iterable[dict]) -> Subspace:
        return self.ideal_span(generators, side="left")

    def coordinate_span(self, morphisms: Iterable[int]) -> Subspace:
        return Subspace.coordinate(self.dim, morphisms)

    # ------------------------------------------------------------ corners

    def corner(self, e: int, jdec: JClassDecomposition) -> "Corner":
        i = int(jdec.layer_of[e])
        basis = corner_set(self.category, e)
        gamma = [s for s in basis if jdec.layer_of[s] == i]
        jpart = [s for s in basis if jdec.layer_of[s] < i]
        if len(gamma) + len(jpart) != len(basis):
            raise AlgebraError(f"corner at {self.category.name(e)} does not split as Γ ⊔ J")
        comp = self.comp
        js = set(jpart)
        gs = set(gamma)
        for a in basis:
            for j in jpart:
                if comp[a, j] not in js or comp[j, a] not in js:
                    raise AlgebraError("J part of the corner is not an ideal")
        for a in gamma:
            for b in gamma:
                if comp[a, b] not in gs:
                    raise AlgebraError("Γ part of the corner is not closed")
        if e not in gs:
            raise AlgebraError("Γ part does not contain the idempotent")
        return Corner(e, self.idempotent_lift(e), tuple(basis), tuple(gamma), tuple(jpart))

    # ------------------------------------------------------------ radical

    def radical_corner_criterion(self, jdec: JClassDecomposition, local: list[LayerData]) -> Subspace:
        """All u with e_i'·a·u·b·e_i' free of Γ_{e_i} terms, for every layer i
        and basis morphisms a, b (char 0, so every k_alpha Γ is semisimple)."""
        comp = self.comp
        m = self.dim
        red = RowReducer(m)
        for data in local:
            e = data.rep
            # e'·a is a nonzero multiple of e∘a; only the morphisms e∘S and S∘e matter
            left = sorted({int(x) for x in comp[e, :] if x >= 0})
            right = sorted({int(x) for x in comp[:, e] if x >= 0})
            mask = np.zeros(m, dtype=bool)
            mask[list(data.gamma)] = True
            hits = kernels.sandwich_hits(comp, left, right, mask)
            rows: dict[tuple[int, int, int], dict[int, Fraction]] = {}
            alpha = self.cocycle.values
            for p, x, q, g in hits.tolist():
                px = comp[p, x]
                coeff = alpha[(p, x)] * alpha[(int(px), q)]
                row = rows.setdefault((p, q, g), {})
                row[x] = row.get(x, 0) + coeff
            seen = set()
            for row in rows.values():
                key = tuple(sorted(row.items()))
                if key in seen:
                    continue
                seen.add(key)
                v = [Fraction(0)] * m
                for x, c in row.items():
                    v[x] = c
                red.add(v)
                if red.rank == m:
                    return Subspace.zero(m)
        if red.rank == 0:
            return Subspace.full(m)
        return nullspace(mat(red.fraction_rows()))

    def trace_gram(self) -> np.ndarray:
        """G[s, t] = trace(L_s L_t), summed from the diagonal of the product."""
        m = self.dim
        comp = self.comp
        alpha = self.cocycle.values
        g = [[Fraction(0)] * m for _ in range(m)]
        for s, t, y in kernels.trace_hits(comp).tolist():
            ty = int(comp[t, y])
            g[s][t] += alpha[(t, y)] * alpha[(s, ty)]
        return mat(g)

    def radical_trace_form(self) -> Subspace:
        """Radical of the trace form of the regular representation."""
        return nullspace(self.trace_gram())

    def is_associative(self) -> bool:
        """Exhaustive check on basis triples."""
        m = self.dim
        for a in range(m):
            for b in range(m):
                ab = self.multiply({a: 1}, {b: 1})
                for c in range(m):
                    if self.multiply(ab, {c: 1}) != self.multiply({a: 1}, self.mul_basis_left(b, {c: 1})):
                        return False
        return True


@dataclass(frozen=True)
class Corner:
    idempotent: int
    unit: dict
    basis: tuple[int, ...]
    gamma_part: tuple[int, ...]
    j_part: tuple[int, ...]


def is_nilpotent_ideal(alg: CategoryAlgebra, sub: Subspace, max_power: int | None = None) -> bool:
    """Some power of the span spans zero."""
    elems = [alg.from_vector(v) for v in sub.basis]
    cur = list(elems)
    limit = max_power or alg.dim + 1
    for _ in range(limit):
        if not cur:
            return True
        prods = [alg.multiply(x, y) for x in cur for y in elems]
        sp = alg.span(p for p in prods if p)
        cur = [alg.from_vector(v) for v in sp.basis]
    return not cur
