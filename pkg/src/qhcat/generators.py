"""Bundled example categories and the on-disk category file format."""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path

import numpy as np

from .category import CategoryError, FiniteCategory, Morphism, from_monoid
from .cocycle import Cocycle, trivial_cocycle, validate_cocycle
from .category import validate
from .exactla import rat


class ParseError(ValueError):
    def __init__(self, message: str, line: int = 0, col: int = 0):
        super().__init__(f"line {line}, column {col}: {message}" if line else message)
        self.line = line
        self.col = col


# ------------------------------------------------------------ monoids / groups


def full_transformation_monoid(n: int) -> FiniteCategory:
    """All maps {1..n} -> {1..n}; t∘s is i -> t(s(i))."""
    if not 1 <= n <= 4:
        raise ValueError(f"full_transformation_monoid: n must be in 1..4, got {n}")
    maps = list(itertools.product(range(n), repeat=n))
    index = {f: k for k, f in enumerate(maps)}
    table = [[index[tuple(t[s[i]] for i in range(n))] for s in maps] for t in maps]
    names = ["".join(str(v + 1) for v in f) for f in maps]
    return from_monoid(table, names)


def symmetric_group(n: int) -> FiniteCategory:
    if not 1 <= n <= 5:
        raise ValueError(f"symmetric_group: n must be in 1..5, got {n}")
    perms = list(itertools.permutations(range(n)))
    index = {p: k for k, p in enumerate(perms)}
    table = [[index[tuple(t[s[i]] for i in range(n))] for s in perms] for t in perms]
    return from_monoid(table, ["".join(str(v + 1) for v in p) for p in perms])


def cyclic_group(n: int) -> FiniteCategory:
    if not 1 <= n <= 64:
        raise ValueError(f"cyclic_group: n must be in 1..64, got {n}")
    table = [[(a + b) % n for b in range(n)] for a in range(n)]
    return from_monoid(table, [f"g{k}" for k in range(n)])


def null_monoid() -> FiniteCategory:
    """{1, x, 0} with x∘x = 0: the standard non-regular monoid."""
    one, x, zero = 0, 1, 2
    table = [[one, x, zero], [x, zero, zero], [zero, zero, zero]]
    return from_monoid(table, ["1", "x", "0"])


def semilattice(n: int) -> FiniteCategory:
    """Subsets of {1..n} under intersection (a monoid with incomparable J-classes)."""
    if not 1 <= n <= 4:
        raise ValueError(f"semilattice: n must be in 1..4, got {n}")
    subsets = sorted(range(1 << n), key=lambda b: (-bin(b).count("1"), b))
    index = {b: k for k, b in enumerate(subsets)}
    table = [[index[a & b] for b in subsets] for a in subsets]
    names = ["{" + "".join(str(i + 1) for i in range(n) if b >> i & 1) + "}" for b in subsets]
    return from_monoid(table, names)


def quaternion_twist() -> tuple[FiniteCategory, Cocycle]:
    """Klein four group with the cocycle of the quaternion basis 1, i, j, k.

    The twisted group algebra is the rational quaternion division algebra.
    """
    # q_a q_b = sign * q_{a xor b}, basis order 1, i, j, k = 0, 1, 2, 3
    sign = [[1, 1, 1, 1],
            [1, -1, 1, -1],
            [1, -1, -1, 1],
            [1, 1, -1, -1]]
    table = [[a ^ b for b in range(4)] for a in range(4)]
    c = from_monoid(table, ["1", "i", "j", "k"])
    return c, Cocycle({(t, s): Fraction(sign[t][s]) for t in range(4) for s in range(4)})


def retract_category() -> FiniteCategory:
    """Two objects X, Y with f: X -> Y, g: Y -> X, f∘g = 1_Y, g∘f = e."""
    objs = ["X", "Y"]
    # ids: 0 = 1_X, 1 = e, 2 = f, 3 = g, 4 = 1_Y
    mors = [Morphism(0, 0, 0, "1X"), Morphism(1, 0, 0, "e"), Morphism(2, 0, 1, "f"),
            Morphism(3, 1, 0, "g"), Morphism(4, 1, 1, "1Y")]
    u = -1
    comp = np.full((5, 5), u, dtype=np.int32)
    rules = {
        (0, 0): 0, (0, 1): 1, (1, 0): 1, (1, 1): 1,
        (0, 3): 3, (1, 3): 3,          # 1X∘g, e∘g
        (2, 0): 2, (2, 1): 2,          # f∘1X, f∘e
        (3, 2): 1,                     # g∘f = e
        (2, 3): 4,                     # f∘g = 1Y
        (4, 2): 2, (3, 4): 3, (4, 4): 4,
    }
    for (t, s), r in rules.items():
        comp[t, s] = r
    return FiniteCategory(objs, mors, [0, 4], comp)


# ------------------------------------------------------------ diagram algebras


def _canonical(labels) -> tuple[int, ...]:
    seen: dict[int, int] = {}
    return tuple(seen.setdefault(x, len(seen)) for x in labels)


def set_partitions(k: int):
    """Restricted growth strings of length k."""
    if k == 0:
        yield ()
        return

    def rec(prefix, mx):
        if len(prefix) == k:
            yield tuple(prefix)
            return
        for v in range(mx + 2):
            yield from rec(prefix + [v], max(mx, v))

    yield from rec([0], 0)


def _is_matching(d) -> bool:
    counts: dict[int, int] = {}
    for x in d:
        counts[x] = counts.get(x, 0) + 1
    return all(v == 2 for v in counts.values())


def _is_planar(d, n: int) -> bool:
    # points around a circle: top 0..n-1 left to right, bottom right to left
    order = list(range(n)) + [n + j for j in reversed(range(n))]
    pos = {p: k for k, p in enumerate(order)}
    blocks: dict[int, list[int]] = {}
    for p, b in enumerate(d):
        blocks.setdefault(b, []).append(pos[p])
    arcs = [sorted(v) for v in blocks.values()]
    for (a, b), (c, e) in itertools.combinations(arcs, 2):
        if a < c < b < e or c < a < e < b:
            return False
    return True


def compose_diagrams(t, s, n: int) -> tuple[tuple[int, ...], int]:
    """t∘s: t stacked above s (t's bottom glued to s's top).

    Returns the canonical composite and the number of closed components
    removed from the middle row.
    """
    parent = list(range(3 * n))

    def find(a):
        while parent[a] != a:
            parent[a] = parent[parent[a]]
            a = parent[a]
        return a

    def union(a, b):
        ra, rb = find(a), find(b)
        if ra != rb:
            parent[ra] = rb

    # t: top -> 0..n-1, bottom -> n..2n-1; s: top -> n..2n-1, bottom -> 2n..3n-1
    first: dict[int, int] = {}
    for p, b in enumerate(t):
        if b in first:
            union(first[b], p)
        else:
            first[b] = p
    first = {}
    for p, b in enumerate(s):
        node = n + p
        if b in first:
            union(first[b], node)
        else:
            first[b] = node
    outer = list(range(n)) + list(range(2 * n, 3 * n))
    roots = [find(a) for a in outer]
    outer_roots = set(roots)
    middle_roots = {find(a) for a in range(n, 2 * n)}
    loops = len(middle_roots - outer_roots)
    return _canonical(roots), loops


@dataclass
class DiagramCategory:
    n: int
    kind: str
    delta: Fraction
    diagrams: list[tuple[int, ...]]
    category: FiniteCategory
    cocycle: Cocycle


def _diagram_name(d, n: int) -> str:
    blocks: dict[int, list[str]] = {}
    for p, b in enumerate(d):
        blocks.setdefault(b, []).append(str(p + 1) if p < n else f"{p - n + 1}'")
    return "|".join(".".join(v) for v in blocks.values())


def _diagram_category(kind: str, n: int, delta, diagrams) -> DiagramCategory:
    delta = rat(delta)
    if delta == 0:
        raise ValueError("cocycle values must be nonzero: delta = 0 is not allowed")
    diagrams = sorted(diagrams)
    index = {d: k for k, d in enumerate(diagrams)}
    m = len(diagrams)
    comp = np.empty((m, m), dtype=np.int32)
    values = {}
    for a, t in enumerate(diagrams):
        for b, s in enumerate(diagrams):
            r, loops = compose_diagrams(t, s, n)
            comp[a, b] = index[r]
            values[(a, b)] = delta ** loops
    ident = index[_canonical([p for p in range(n)] * 2)]
    mors = [Morphism(k, 0, 0, _diagram_name(d, n)) for k, d in enumerate(diagrams)]
    cat = FiniteCategory(["X"], mors, [ident], comp)
    return DiagramCategory(n, kind, delta, diagrams, cat, Cocycle(values))


def brauer(n: int, delta=1) -> DiagramCategory:
    if not 1 <= n <= 4:
        raise ValueError(f"brauer: n must be in 1..4, got {n}")
    ds = [d for d in set_partitions(2 * n) if _is_matching(d)]
    return _diagram_category("brauer", n, delta, ds)


def temperley_lieb(n: int, delta=1) -> DiagramCategory:
    if not 1 <= n <= 6:
        raise ValueError(f"temperley_lieb: n must be in 1..6, got {n}")
    ds = [d for d in set_partitions(2 * n) if _is_matching(d) and _is_planar(d, n)]
    return _diagram_category("tl", n, delta, ds)


def partition_category(n: int, delta=1) -> DiagramCategory:
    if not 1 <= n <= 3:
        raise ValueError(f"partition_category: n must be in 1..3, got {n}")
    return _diagram_category("partition", n, delta, list(set_partitions(2 * n)))


def propagating_number(d, n: int) -> int:
    top = {d[p] for p in range(n)}
    bottom = {d[p] for p in range(n, 2 * n)}
    return len(top & bottom)


# --------------------------------------------------------------- builtin specs


def builtin(spec: str) -> tuple[FiniteCategory, Cocycle]:
    """Resolve ``builtin:<family>[:<n>][:<p>/<q>]`` to a category and cocycle."""
    parts = spec.split(":")
    if parts[0] != "builtin" or len(parts) < 2:
        raise ParseError(f"not a builtin spec: {spec!r}")
    fam, args = parts[1].lower(), parts[2:]

    def arg_int(k, default=None):
        if len(args) > k:
            try:
                return int(args[k])
            except ValueError:
                raise ParseError(f"expected an integer in {spec!r}, got {args[k]!r}") from None
        if default is None:
            raise ParseError(f"{spec!r}: missing size argument")
        return default

    def arg_delta(k):
        if len(args) > k:
            try:
                return Fraction(args[k])
            except (ValueError, ZeroDivisionError):
                raise ParseError(f"bad fraction {args[k]!r} in {spec!r}") from None
        return Fraction(1)

    if fam == "t":
        c = full_transformation_monoid(arg_int(0))
    elif fam in ("tl", "brauer", "partition"):
        maker = {"tl": temperley_lieb, "brauer": brauer, "partition": partition_category}[fam]
        d = maker(arg_int(0), arg_delta(1))
        return d.category, d.cocycle
    elif fam == "cyclic":
        c = cyclic_group(arg_int(0))
    elif fam == "sym":
        c = symmetric_group(arg_int(0))
    elif fam == "n3":
        c = null_monoid()
    elif fam == "semilattice":
        c = semilattice(arg_int(0, 2))
    elif fam == "retract":
        c = retract_category()
    elif fam == "quat":
        return quaternion_twist()
    else:
        raise ParseError(f"unknown builtin family {fam!r}")
    return c, trivial_cocycle(c)


# Examples the acceptance suite sweeps over (all split, nonzero cocycles).
BUNDLED: tuple[str, ...] = (
    "builtin:t:1", "builtin:t:2", "builtin:t:3",
    "builtin:tl:2:1/1", "builtin:tl:2:2/1", "builtin:tl:2:3/1",
    "builtin:tl:3:1/1", "builtin:tl:3:2/1", "builtin:tl:3:3/1",
    "builtin:brauer:2:1/1", "builtin:brauer:2:2/1",
    "builtin:brauer:3:1/1", "builtin:brauer:3:2/1",
    "builtin:partition:1:1/1", "builtin:partition:2:1/1",
    "builtin:cyclic:2", "builtin:cyclic:3", "builtin:sym:3",
    "builtin:semilattice:2", "builtin:retract", "builtin:quat",
)


# ------------------------------------------------------------------ file format

_SECTIONS = ("OBJECTS", "MORPHISMS", "IDENTITIES", "COMP", "COCYCLE")


def dumps(c: FiniteCategory, a: Cocycle | None = None) -> str:
    lines = ["OBJECTS"]
    lines += c.objects
    lines.append("MORPHISMS")
    lines += [f"{c.name(s)} {c.objects[c.dom[s]]} {c.objects[c.cod[s]]}" for s in range(c.size)]
    lines.append("IDENTITIES")
    lines += [f"{c.objects[x]} {c.name(ix)}" for x, ix in enumerate(c.identity)]
    lines.append("COMP")
    tt, ss = np.nonzero(c.comp >= 0)
    for t, s in zip(tt, ss):
        lines.append(f"{c.name(t)} {c.name(s)} {c.name(int(c.comp[t, s]))}")
    if a is not None and not a.is_trivial():
        lines.append("COCYCLE")
        for t, s in zip(tt, ss):
            v = a.values[(int(t), int(s))]
            lines.append(f"{c.name(t)} {c.name(s)} {v.numerator}/{v.denominator}")
    return "\n".join(lines) + "\n"


def save(c: FiniteCategory, a: Cocycle | None, path) -> None:
    rep = validate(c)
    if not rep.ok:
        raise CategoryError(f"refusing to save an invalid category: {rep.first()}")
    if a is not None:
        rep = validate_cocycle(c, a)
        if not rep.ok:
            raise CategoryError(f"refusing to save an invalid cocycle: {rep.first()}")
    Path(path).write_text(dumps(c, a), encoding="utf-8")


def loads(text: str) -> tuple[FiniteCategory, Cocycle]:
    """Parse the category file format. Structural problems raise ParseError;
    axiom checks are left to the validators."""
    section = None
    objects: list[str] = []
    mor_rows: list[tuple[str, str, str, int]] = []
    ident_rows: list[tuple[str, str, int]] = []
    comp_rows: list[tuple[str, str, str, int]] = []
    coc_rows: list[tuple[str, str, str, int, int]] = []
    seen_sections = []
    for ln, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if line in _SECTIONS:
            if line in seen_sections:
                raise ParseError(f"duplicate section {line}", ln, 1)
            section = line
            seen_sections.append(line)
            continue
        toks = line.split()
        col = raw.index(toks[0]) + 1
        if section is None:
            raise ParseError("content before the first section header", ln, col)
        want = {"OBJECTS": 1, "MORPHISMS": 3, "IDENTITIES": 2, "COMP": 3, "COCYCLE": 3}[section]
        if len(toks) != want:
            raise ParseError(f"{section} lines need {want} fields, got {len(toks)}", ln, col)
        if section == "OBJECTS":
            objects.append(toks[0])
        elif section == "MORPHISMS":
            mor_rows.append((*toks, ln))
        elif section == "IDENTITIES":
            ident_rows.append((*toks, ln))
        elif section == "COMP":
            comp_rows.append((*toks, ln))
        else:
            try:
                v = Fraction(toks[2])
            except (ValueError, ZeroDivisionError):
                raise ParseError(f"bad fraction {toks[2]!r}", ln, raw.index(toks[2]) + 1) from None
            coc_rows.append((toks[0], toks[1], v, ln, raw.index(toks[0]) + 1))

    for req in ("OBJECTS", "MORPHISMS", "IDENTITIES", "COMP"):
        if req not in seen_sections:
            raise ParseError(f"missing section {req}")
    obj_index = {o: k for k, o in enumerate(objects)}
    if len(obj_index) != len(objects):
        raise ParseError("duplicate object name")
    mors = []
    mor_index: dict[str, int] = {}
    for name, dom, cod, ln in mor_rows:
        if name in mor_index:
            raise ParseError(f"duplicate morphism {name!r}", ln, 1)
        for o in (dom, cod):
            if o not in obj_index:
                raise ParseError(f"unknown object {o!r}", ln, 1)
        mor_index[name] = len(mors)
        mors.append(Morphism(len(mors), obj_index[dom], obj_index[cod], name))

    def mid(name, ln):
        if name not in mor_index:
            raise ParseError(f"unknown morphism {name!r}", ln, 1)
        return mor_index[name]

    identity = [-1] * len(objects)
    for o, name, ln in ident_rows:
        if o not in obj_index:
            raise ParseError(f"unknown object {o!r}", ln, 1)
        identity[obj_index[o]] = mid(name, ln)
    if -1 in identity:
        raise ParseError(f"object {objects[identity.index(-1)]!r} has no identity")
    m = len(mors)
    comp = np.full((m, m), -1, dtype=np.int32)
    for t, s, r, ln in comp_rows:
        ti, si = mid(t, ln), mid(s, ln)
        if comp[ti, si] != -1:
            raise ParseError(f"duplicate composition {t} {s}", ln, 1)
        comp[ti, si] = mid(r, ln)
    cat = FiniteCategory(objects, mors, identity, comp)
    if "COCYCLE" in seen_sections:
        values = {}
        for t, s, v, ln, col in coc_rows:
            key = (mid(t, ln), mid(s, ln))
            if key in values:
                raise ParseError(f"duplicate cocycle entry {t} {s}", ln, col)
            values[key] = v
        coc = Cocycle(values)
    else:
        coc = trivial_cocycle(cat)
    return cat, coc


def load(path) -> tuple[FiniteCategory, Cocycle]:
    return loads(Path(path).read_text(encoding="utf-8"))


def resolve(source: str) -> tuple[FiniteCategory, Cocycle]:
    """A builtin spec or a path to a category file."""
    if source.startswith("builtin:"):
        return builtin(source)
    return load(source)
