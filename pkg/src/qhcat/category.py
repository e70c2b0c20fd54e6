"""Finite categories given by explicit composition tables."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from . import kernels
from .kernels import UNDEF


class CategoryError(ValueError):
    """Raised for malformed category data (unknown ids, bad tables)."""


@dataclass(frozen=True)
class Morphism:
    id: int
    dom: int
    cod: int
    name: str = ""


@dataclass
class ValidationReport:
    ok: bool
    violations: list[dict] = field(default_factory=list)

    def first(self) -> dict | None:
        return self.violations[0] if self.violations else None


class FiniteCategory:
    """A finite category with dense integer ids.

    ``comp[t, s]`` is the id of ``t∘s`` (s first, then t), or -1 when
    ``cod(s) != dom(t)``. Objects and morphisms carry display names.
    """

    def __init__(self, objects: Sequence[str], morphisms: Sequence[Morphism],
                 identity: Sequence[int], comp: np.ndarray):
        self.objects = list(objects)
        self.morphisms = list(morphisms)
        self.identity = list(identity)
        self.comp = np.ascontiguousarray(comp, dtype=np.int32)
        m = len(self.morphisms)
        if self.comp.shape != (m, m):
            raise CategoryError(f"composition table has shape {self.comp.shape}, expected {(m, m)}")
        if len(self.identity) != len(self.objects):
            raise CategoryError("one identity per object required")
        for k, mor in enumerate(self.morphisms):
            if mor.id != k:
                raise CategoryError(f"morphism ids must be dense 0..m-1 (got {mor.id} at {k})")
            if not (0 <= mor.dom < len(self.objects) and 0 <= mor.cod < len(self.objects)):
                raise CategoryError(f"morphism {k} has unknown dom/cod")
        self.dom = np.array([mor.dom for mor in self.morphisms], dtype=np.int64)
        self.cod = np.array([mor.cod for mor in self.morphisms], dtype=np.int64)
        self.name_to_id = {mor.name or str(mor.id): mor.id for mor in self.morphisms}
        self._idempotents = None

    @property
    def size(self) -> int:
        return len(self.morphisms)

    def name(self, s: int) -> str:
        return self.morphisms[s].name or str(s)

    def _check_id(self, s: int):
        if not 0 <= s < self.size:
            raise CategoryError(f"unknown morphism id {s}")

    def compose(self, t: int, s: int) -> int | None:
        """``t∘s`` or None when not composable."""
        self._check_id(t)
        self._check_id(s)
        r = int(self.comp[t, s])
        return None if r == UNDEF else r

    def hom_set(self, x: int, y: int) -> list[int]:
        if not (0 <= x < len(self.objects) and 0 <= y < len(self.objects)):
            raise CategoryError(f"unknown object {x if not 0 <= x < len(self.objects) else y}")
        return [k for k in range(self.size) if self.dom[k] == x and self.cod[k] == y]

    def end(self, x: int) -> list[int]:
        return self.hom_set(x, x)

    def idempotents(self) -> list[int]:
        if self._idempotents is None:
            d = np.diag(self.comp)
            self._idempotents = [int(k) for k in np.nonzero(d == np.arange(self.size))[0]]
        return list(self._idempotents)

    def is_idempotent(self, s: int) -> bool:
        return int(self.comp[s, s]) == s

    def left_set(self, s: int) -> np.ndarray:
        """Indicator of S∘s."""
        col = self.comp[:, s]
        out = np.zeros(self.size, dtype=bool)
        out[col[col >= 0]] = True
        return out

    def right_set(self, s: int) -> np.ndarray:
        """Indicator of s∘S."""
        row = self.comp[s, :]
        out = np.zeros(self.size, dtype=bool)
        out[row[row >= 0]] = True
        return out

    def endomorphism_table(self) -> list[list[int]]:
        """Monoid table of a one-object category (entries are ids)."""
        if len(self.objects) != 1:
            raise CategoryError("endomorphism_table needs a one-object category")
        return self.comp.astype(int).tolist()

    def __eq__(self, other):
        if not isinstance(other, FiniteCategory):
            return NotImplemented
        return (self.objects == other.objects and self.morphisms == other.morphisms
                and self.identity == other.identity and np.array_equal(self.comp, other.comp))

    def __repr__(self):
        return f"FiniteCategory(objects={len(self.objects)}, morphisms={self.size})"


def validate(c: FiniteCategory) -> ValidationReport:
    """Check the category axioms; violations are returned, not raised."""
    out = []
    comp = c.comp
    m = c.size
    composable = c.cod[None, :] == c.dom[:, None]  # [t, s]
    defined = comp != UNDEF
    bad = np.argwhere(composable != defined)
    if len(bad):
        t, s = (int(x) for x in bad[0])
        out.append({"kind": "composition domain",
                    "message": "comp defined exactly when cod(s) = dom(t) fails",
                    "pair": [c.name(t), c.name(s)]})
    else:
        ts = comp[defined]
        tt, ss = np.nonzero(defined)
        if ts.min(initial=0) < 0 or ts.max(initial=0) >= m:
            out.append({"kind": "composition range", "message": "result id out of range"})
        else:
            wrong = (c.dom[ts] != c.dom[ss]) | (c.cod[ts] != c.cod[tt])
            if wrong.any():
                k = int(np.argmax(wrong))
                out.append({"kind": "dom/cod", "message": "dom(t∘s) = dom(s), cod(t∘s) = cod(t) fails",
                            "pair": [c.name(int(tt[k])), c.name(int(ss[k]))]})
    for x, ix in enumerate(c.identity):
        if not (0 <= ix < m) or c.dom[ix] != x or c.cod[ix] != x:
            out.append({"kind": "identity", "message": f"identity of {c.objects[x]} is not an endomorphism of it"})
    if out:
        return ValidationReport(False, out)
    for x, ix in enumerate(c.identity):
        for s in range(m):
            if c.cod[s] == x and comp[ix, s] != s:
                out.append({"kind": "identity", "message": "identity not neutral",
                            "pair": [c.name(ix), c.name(s)]})
                return ValidationReport(False, out)
            if c.dom[s] == x and comp[s, ix] != s:
                out.append({"kind": "identity", "message": "identity not neutral",
                            "pair": [c.name(s), c.name(ix)]})
                return ValidationReport(False, out)
    v = kernels.assoc_violation(comp)
    if v is not None:
        u, t, s = v
        out.append({"kind": "associativity", "message": "associativity: (u∘t)∘s != u∘(t∘s)",
                    "triple": [c.name(u), c.name(t), c.name(s)]})
    return ValidationReport(not out, out)


@dataclass(frozen=True)
class SplitWitness:
    """``inverse[s] = u`` with s∘u∘s = s and u∘s∘u = u."""
    inverse: tuple[int, ...]


def is_split(c: FiniteCategory) -> tuple[SplitWitness | None, int | None]:
    """Return (witness, None) for split categories, else (None, s) where
    s is the first morphism without a pseudo-inverse."""
    first = kernels.pseudo_inverses(c.comp)
    missing = np.nonzero(first < 0)[0]
    if len(missing):
        return None, int(missing[0])
    comp = c.comp
    inv = []
    for s in range(c.size):
        t = int(first[s])
        # u := t∘s∘t satisfies both s∘u∘s = s and u∘s∘u = u
        u = int(comp[comp[t, s], t])
        inv.append(u)
    return SplitWitness(tuple(inv)), None


def check_witness(c: FiniteCategory, w: SplitWitness) -> bool:
    comp = c.comp
    for s, u in enumerate(w.inverse):
        su = comp[s, u]
        us = comp[u, s]
        if su < 0 or us < 0 or comp[su, s] != s or comp[us, u] != u:
            return False
    return True


def from_monoid(table: Sequence[Sequence[int]], names: Sequence[str] | None = None,
                obj: str = "X") -> FiniteCategory:
    """One-object category whose endomorphism monoid has product ``table[t][s] = t∘s``."""
    tab = np.asarray(table, dtype=np.int64)
    n = tab.shape[0]
    if tab.ndim != 2 or tab.shape != (n, n) or n == 0:
        raise CategoryError("monoid table must be a nonempty square")
    if tab.min() < 0 or tab.max() >= n:
        raise CategoryError("monoid table entries out of range")
    ident = [e for e in range(n) if (tab[e, :] == np.arange(n)).all() and (tab[:, e] == np.arange(n)).all()]
    if not ident:
        raise CategoryError("monoid table has no two-sided identity")
    if kernels.assoc_violation(tab.astype(np.int32)) is not None:
        raise CategoryError("monoid table is not associative")
    names = list(names) if names is not None else [str(k) for k in range(n)]
    mors = [Morphism(k, 0, 0, names[k]) for k in range(n)]
    return FiniteCategory([obj], mors, [ident[0]], tab.astype(np.int32))
