"""J-classes, their order, idempotent classes and per-layer local data."""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from . import kernels
from .category import FiniteCategory, is_split


class GreenError(ValueError):
    """Inconsistent J-class data (a class without idempotent, Γ mismatch, ...)."""


@dataclass
class JClassDecomposition:
    classes: list[tuple[int, ...]]  # layer order: index 0 is layer 1
    less: frozenset[tuple[int, int]]  # strict <_J on layer indices
    reps: list[int]
    layer_of: np.ndarray  # morphism id -> layer index
    admissible: bool

    @property
    def n(self) -> int:
        return len(self.classes)

    def le_j(self, a: int, b: int) -> bool:
        return a == b or (a, b) in self.less

    def lower_set(self, i: int) -> list[int]:
        """Morphisms of S_{<=i} (layers 0..i)."""
        return [s for k in range(i + 1) for s in self.classes[k]]

    def lower_j_set(self, i: int) -> list[int]:
        """Morphisms of S_{<=_J i}."""
        return [s for k in range(self.n) if self.le_j(k, i) for s in self.classes[k]]

    def hasse(self) -> list[tuple[int, int]]:
        out = []
        for a, b in sorted(self.less):
            if not any((a, c) in self.less and (c, b) in self.less for c in range(self.n)):
                out.append((a, b))
        return out


def principal_ideal(c: FiniteCategory, s: int) -> frozenset[int]:
    """Mor∘s∘Mor by fixed-point closure of {s} under one-sided compositions."""
    comp = c.comp
    seen = {s}
    frontier = [s]
    while frontier:
        nxt = []
        for x in frontier:
            for y in np.concatenate([comp[:, x], comp[x, :]]):
                y = int(y)
                if y >= 0 and y not in seen:
                    seen.add(y)
                    nxt.append(y)
        frontier = nxt
    return frozenset(seen)


def _raw_classes(c: FiniteCategory):
    ideals = kernels.principal_ideals(c.comp)
    groups: dict[bytes, list[int]] = {}
    for s in range(c.size):
        groups.setdefault(ideals[s].tobytes(), []).append(s)
    classes = [tuple(v) for v in groups.values()]
    return classes, ideals


def j_decompose(c: FiniteCategory, tie_break: str = "min", rep: str = "min",
                order: list[int] | None = None) -> JClassDecomposition:
    """J-classes in an admissible (lowest-first) order.

    ``tie_break`` picks among currently minimal classes by least ("min") or
    greatest ("max") idempotent id; ``order`` instead gives an explicit
    permutation of the classes sorted by least idempotent id. ``rep``
    chooses the least or greatest idempotent of each class.
    """
    classes, ideals = _raw_classes(c)
    idem = set(c.idempotents())
    keyed = []
    for cl in classes:
        ids = [s for s in cl if s in idem]
        if not ids:
            raise GreenError(f"J-class of {c.name(cl[0])} contains no idempotent")
        keyed.append((min(ids), cl))
    keyed.sort()
    classes = [cl for _, cl in keyed]
    keys = [k for k, _ in keyed]
    n = len(classes)
    # class a <=_J class b  iff  a's members lie in the ideal of b
    below = [[a != b and bool(ideals[classes[b][0], classes[a][0]]) for b in range(n)] for a in range(n)]

    if order is None:
        placed: list[int] = []
        remaining = set(range(n))
        while remaining:
            ready = [b for b in remaining if not any(below[a][b] for a in remaining if a != b)]
            pick = min(ready, key=lambda b: keys[b]) if tie_break == "min" else max(ready, key=lambda b: keys[b])
            placed.append(pick)
            remaining.remove(pick)
    else:
        placed = list(order)
        if sorted(placed) != list(range(n)):
            raise GreenError("order must be a permutation of the J-classes")

    pos = {b: i for i, b in enumerate(placed)}
    ordered = [classes[b] for b in placed]
    less = frozenset((pos[a], pos[b]) for a in range(n) for b in range(n) if below[a][b])
    admissible = all(i < j for i, j in less)
    reps = []
    for cl in ordered:
        ids = [s for s in cl if s in idem]
        reps.append(min(ids) if rep == "min" else max(ids))
    layer_of = np.empty(c.size, dtype=np.int64)
    for i, cl in enumerate(ordered):
        layer_of[list(cl)] = i
    return JClassDecomposition(ordered, less, reps, layer_of, admissible)


def linear_extensions(c: FiniteCategory, limit: int = 32) -> list[list[int]]:
    """Up to ``limit`` admissible orders, as permutations accepted by j_decompose(order=...)."""
    base = j_decompose(c)
    n = base.n
    # recover the class numbering used by j_decompose(order=...)
    classes, _ = _raw_classes(c)
    idem = set(c.idempotents())
    classes.sort(key=lambda cl: min(s for s in cl if s in idem))
    index = {cl: k for k, cl in enumerate(classes)}
    below = {(index[base.classes[a]], index[base.classes[b]]) for a, b in base.less}
    out: list[list[int]] = []

    def rec(prefix, remaining):
        if len(out) >= limit:
            return
        if not remaining:
            out.append(list(prefix))
            return
        for b in sorted(remaining):
            if not any((a, b) in below for a in remaining if a != b):
                rec(prefix + [b], remaining - {b})

    rec([], frozenset(range(n)))
    return out


def idempotent_equivalent(c: FiniteCategory, e: int, f: int) -> tuple[int, int] | None:
    """(s, t) with e = s∘t, f = t∘s, s ∈ e∘Hom(Y,X)∘f, t ∈ f∘Hom(X,Y)∘e; or None."""
    if not (c.is_idempotent(e) and c.is_idempotent(f)):
        raise GreenError("idempotent_equivalent needs idempotent inputs")
    comp = c.comp
    x, y = int(c.dom[e]), int(c.dom[f])
    ss = sorted({int(comp[comp[e, h], f]) for h in c.hom_set(y, x)})
    ts = sorted({int(comp[comp[f, h], e]) for h in c.hom_set(x, y)})
    for s in ss:
        for t in ts:
            if comp[s, t] == e and comp[t, s] == f:
                return s, t
    return None


@dataclass
class LayerData:
    rep: int
    gamma: tuple[int, ...]
    jset: tuple[int, ...]
    idempotent_class: tuple[int, ...]
    epsilon: tuple[int, ...]
    blocks: dict[int, tuple[int, ...]] = field(default_factory=dict)  # e in epsilon -> (S∘e) ∩ S_i


def corner_set(c: FiniteCategory, e: int) -> list[int]:
    """Morphisms of e∘S∘e."""
    comp = c.comp
    x = int(c.dom[e])
    return sorted({int(comp[comp[e, s], e]) for s in c.end(x)})


def local_data(c: FiniteCategory, jdec: JClassDecomposition) -> list[LayerData]:
    comp = c.comp
    out = []
    for i, cl in enumerate(jdec.classes):
        e = jdec.reps[i]
        in_layer = set(cl)
        ese = corner_set(c, e)
        units = tuple(g for g in ese if any(comp[g, h] == e and comp[h, g] == e for h in ese))
        gamma = tuple(g for g in ese if g in in_layer)
        if units != gamma:
            raise GreenError(f"layer {i + 1}: units of e∘End∘e disagree with (e∘S∘e) ∩ S_i")
        lower = {s for s in range(c.size) if jdec.layer_of[s] < i}
        jset = tuple(s for s in ese if s in lower)
        if len(gamma) + len(jset) != len(ese):
            raise GreenError(f"layer {i + 1}: e∘S∘e is not Γ_e ⊔ J_e")
        idem_class = tuple(s for s in cl if comp[s, s] == s)
        eps: list[int] = []
        covered: set[int] = set()
        blocks = {}
        for f in idem_class:
            blk = {int(x) for x in comp[:, f] if x >= 0 and int(x) in in_layer}
            if blk.isdisjoint(covered):
                eps.append(f)
                covered |= blk
                blocks[f] = tuple(sorted(blk))
        if covered != in_layer:
            raise GreenError(f"layer {i + 1}: ε-blocks do not cover the J-class")
        out.append(LayerData(e, gamma, jset, idem_class, tuple(eps), blocks))
    return out


def check_ideal_lemmas(c: FiniteCategory, jdec: JClassDecomposition) -> dict:
    """Ideal and left-ideal facts on every layer; failures come back as data."""
    comp = c.comp
    m = c.size
    report: dict = {}

    def is_ideal(members) -> bool:
        mask = np.zeros(m, dtype=bool)
        mask[list(members)] = True
        rows = comp[mask, :]
        cols = comp[:, mask]
        return bool(mask[rows[rows >= 0]].all() and mask[cols[cols >= 0]].all())

    bad_ideal = [i + 1 for i in range(jdec.n)
                 if not (is_ideal(jdec.lower_set(i)) and is_ideal(jdec.lower_j_set(i)))]
    report["ideals"] = {"ok": not bad_ideal, "failing_layers": bad_ideal}

    left = np.zeros((m, m), dtype=bool)
    for s in range(m):
        col = comp[:, s]
        left[s, col[col >= 0]] = True

    witness, _ = is_split(c)
    bad_a = []
    if witness is not None:
        for s, t in enumerate(witness.inverse):
            ts = comp[t, s]
            if not np.array_equal(left[s], left[ts]):
                bad_a.append([c.name(s), c.name(t)])
    report["left_ideal_absorption"] = {"ok": witness is not None and not bad_a, "counterexamples": bad_a[:3]}

    bad_b, bad_c = [], []
    for i, cl in enumerate(jdec.classes):
        cl = list(cl)
        in_layer = np.zeros(m, dtype=bool)
        in_layer[cl] = True
        for a in cl:
            for b in cl:
                sub = not (left[a] & ~left[b]).any()
                if sub and not np.array_equal(left[a], left[b]):
                    bad_b.append([c.name(a), c.name(b)])
                la, lb = left[a] & in_layer, left[b] & in_layer
                if (la & lb).any() and not np.array_equal(la, lb):
                    bad_c.append([c.name(a), c.name(b)])
    report["left_antisymmetry"] = {"ok": not bad_b, "counterexamples": bad_b[:3]}
    report["equal_or_disjoint"] = {"ok": not bad_c, "counterexamples": bad_c[:3]}

    # two pseudo-inverses t, u of s: J(s∘t) = J(s) = J(u∘s)
    bad_l = []
    for s in range(m):
        invs = [t for t in range(m) if comp[s, t] >= 0 and comp[comp[s, t], s] == s]
        for t in invs[:2]:
            for u in invs[-2:]:
                st, us = comp[s, t], comp[u, s]
                if not (jdec.layer_of[st] == jdec.layer_of[s] == jdec.layer_of[us]):
                    bad_l.append([c.name(s), c.name(t), c.name(u)])
    report["pseudo_inverse_idempotents"] = {"ok": not bad_l, "counterexamples": bad_l[:3]}

    idem = c.idempotents()
    bad_eq = []
    for e in idem:
        for f in idem:
            same = jdec.layer_of[e] == jdec.layer_of[f]
            if same != (idempotent_equivalent(c, e, f) is not None):
                bad_eq.append([c.name(e), c.name(f)])
    report["idempotent_equivalence"] = {"ok": not bad_eq, "counterexamples": bad_eq[:3]}
    report["ok"] = all(v["ok"] for v in report.values() if isinstance(v, dict))
    return report
