"""Heredity chain J_i = kS_{<=i} and its per-layer checks.

Quotients by J_{i-1} are never formed as algebras. Since every J_i is a
coordinate subspace, membership in J_{i-1} is a support test.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any

from .algebra import CategoryAlgebra
from .category import FiniteCategory, is_split, validate
from .cocycle import Cocycle, validate_cocycle
from .exactla import Subspace
from .green import GreenError, JClassDecomposition, LayerData, check_ideal_lemmas, j_decompose, local_data


@dataclass
class HeredityChain:
    layers: list[tuple[int, ...]]  # layers[i] = S_{<=i} for i = 0..n (layers[0] empty)
    spans: list[Subspace]

    @property
    def n(self) -> int:
        return len(self.layers) - 1

    def dims(self) -> list[int]:
        return [s.dim for s in self.spans]


class ChainError(ValueError):
    pass


def build_chain(alg: CategoryAlgebra, jdec: JClassDecomposition) -> HeredityChain:
    witness, bad = is_split(alg.category)
    if witness is None:
        raise ChainError(f"category is not split: {alg.category.name(bad)} has no pseudo-inverse")
    layers: list[tuple[int, ...]] = [()]
    spans = [Subspace.zero(alg.dim)]
    for i in range(jdec.n):
        members = tuple(sorted(jdec.lower_set(i)))
        sp = alg.coordinate_span(members)
        if sp.dim - spans[-1].dim != len(jdec.classes[i]) or not spans[-1] <= sp:
            raise ChainError(f"chain not strict at layer {i + 1}")
        if alg.ideal_span([{s: 1} for s in members]) != sp:
            raise ChainError(f"J_{i + 1} is not a two-sided ideal")
        layers.append(members)
        spans.append(sp)
    if spans[-1].dim != alg.dim:
        raise ChainError("chain does not reach the whole algebra")
    return HeredityChain(layers, spans)


def check_generation(alg: CategoryAlgebra, chain: HeredityChain, jdec: JClassDecomposition, i: int) -> bool:
    """J_i = J_{i-1} + A e_i' A (1-based i)."""
    e = jdec.reps[i - 1]
    gen = alg.ideal_span([alg.idempotent_lift(e)])
    return chain.spans[i - 1] + gen == chain.spans[i]


def radical_square_witness(alg: CategoryAlgebra, chain: HeredityChain, i: int,
                           radical: Subspace) -> tuple[int, dict, int] | None:
    """First (s, u, t) with s, t in S_{<=i}, u a radical basis vector and
    s·u·t outside J_{i-1}; None when there is none."""
    low = set(chain.layers[i - 1])
    members = chain.layers[i]
    # fast pass through a basis of J_i·J(A); triples are only searched on failure
    left = alg.span(alg.mul_basis_left(s, alg.from_vector(v)) for v in radical.basis for s in members)
    if all(not any(k not in low for k in alg.mul_basis_right(alg.from_vector(w), t))
           for w in left.basis for t in members):
        return None
    for v in radical.basis:
        u = alg.from_vector(v)
        for s in members:
            su = alg.mul_basis_left(s, u)
            if not su:
                continue
            for t in members:
                sut = alg.mul_basis_right(su, t)
                if any(k not in low for k in sut):
                    return s, u, t
    return None


def check_radical_square(alg: CategoryAlgebra, chain: HeredityChain, i: int, radical: Subspace) -> bool:
    return radical_square_witness(alg, chain, i, radical) is None


def check_projectivity(alg: CategoryAlgebra, chain: HeredityChain, i: int,
                       local: list[LayerData]) -> tuple[bool, dict]:
    """Images of A e' (e in ε_i) in J_i/J_{i-1}: they must span the quotient
    and their dimensions must add up to its dimension."""
    data = local[i - 1]
    top = [s for s in chain.layers[i] if s not in set(chain.layers[i - 1])]
    target = len(top)
    below = chain.spans[i - 1]
    total = below
    dims = []
    for e in data.epsilon:
        left = alg.left_ideal([alg.idempotent_lift(e)])
        image = (left & chain.spans[i]) + below
        dims.append(image.dim - below.dim)
        total = total + image
    sum_dim = total.dim - below.dim
    ok = sum_dim == target and sum(dims) == target
    return ok, {"summand_dims": dims, "quotient_dim": target, "sum_dim": sum_dim}


# ------------------------------------------------------------------ certify


@dataclass
class StageResult:
    name: str
    ok: bool
    data: dict = field(default_factory=dict)

    def to_dict(self) -> dict:
        return {"name": self.name, "pass": self.ok, **self.data}


@dataclass
class LayerCertificate:
    layer: int
    size: int
    generation: bool
    radical_square: bool
    projectivity: bool
    ledger: dict
    witness: Any = None

    @property
    def ok(self) -> bool:
        return self.generation and self.radical_square and self.projectivity

    def to_dict(self) -> dict:
        out = {"layer": self.layer, "size": self.size, "generation": self.generation,
               "radical_square": self.radical_square, "projectivity": self.projectivity,
               "projectivity_ledger": self.ledger}
        if self.witness is not None:
            out["witness"] = self.witness
        return out


@dataclass
class HeredityCertificate:
    stages: list[StageResult]
    layers: list[LayerCertificate]
    chain_dims: list[int]
    radical_dim: int | None
    radical_agree: bool | None
    jdec: JClassDecomposition | None = None
    local: list[LayerData] | None = None
    algebra: CategoryAlgebra | None = None
    radical: Subspace | None = None
    chain: HeredityChain | None = None
    family: Any = None

    @property
    def passed(self) -> bool:
        return bool(self.stages) and all(s.ok for s in self.stages) and all(l.ok for l in self.layers)

    @property
    def failure(self) -> StageResult | None:
        for s in self.stages:
            if not s.ok:
                return s
        return None

    def to_dict(self) -> dict:
        return {
            "pass": self.passed,
            "failed_stage": self.failure.name if self.failure else None,
            "stages": [s.to_dict() for s in self.stages],
            "layers": [l.to_dict() for l in self.layers],
            "chain_dims": self.chain_dims,
            "radical_dim": self.radical_dim,
            "radical_methods_agree": self.radical_agree,
        }


STAGES = ("validate", "split", "green", "algebra", "radical", "heredity", "modules")


def certify(category: FiniteCategory, cocycle: Cocycle, *, tie_break: str = "min", rep: str = "min",
            order: list[int] | None = None, modules: bool = True, stop_after: str | None = None,
            seed: int | None = None) -> HeredityCertificate:
    """Run the full pipeline; the first failing stage carries witness data."""
    c = category
    cert = HeredityCertificate([], [], [], None, None)

    def done(name: str) -> bool:
        return stop_after == name

    rep_v = validate(c)
    if rep_v.ok:
        rep_v = validate_cocycle(c, cocycle)
    cert.stages.append(StageResult("validate", rep_v.ok, {} if rep_v.ok else {"witness": rep_v.first()}))
    if not rep_v.ok or done("validate"):
        return cert

    witness, bad = is_split(c)
    if witness is None:
        cert.stages.append(StageResult("split", False, {"witness": {"morphism": c.name(bad),
                                                                     "reason": "no pseudo-inverse"}}))
        return cert
    cert.stages.append(StageResult("split", True))
    if done("split"):
        return cert

    try:
        jdec = j_decompose(c, tie_break=tie_break, rep=rep, order=order)
        local = local_data(c, jdec)
    except GreenError as exc:
        cert.stages.append(StageResult("green", False, {"witness": {"message": str(exc)}}))
        return cert
    lemmas = check_ideal_lemmas(c, jdec)
    ok = jdec.admissible and lemmas["ok"]
    data = {"classes": [len(cl) for cl in jdec.classes], "admissible": jdec.admissible,
            "ideal_facts": {k: v["ok"] for k, v in lemmas.items() if isinstance(v, dict)}}
    if not ok:
        data["witness"] = {k: v for k, v in lemmas.items() if isinstance(v, dict) and not v["ok"]}
    cert.stages.append(StageResult("green", ok, data))
    cert.jdec, cert.local = jdec, local
    if not ok or done("green"):
        return cert

    alg = CategoryAlgebra(c, cocycle)
    cert.algebra = alg
    try:
        for i, e in enumerate(jdec.reps):
            alg.corner(e, jdec)
    except ValueError as exc:
        cert.stages.append(StageResult("algebra", False, {"witness": {"message": str(exc)}}))
        return cert
    cert.stages.append(StageResult("algebra", True, {"dim": alg.dim}))
    if done("algebra"):
        return cert

    rad = alg.radical_corner_criterion(jdec, local)
    oracle = alg.radical_trace_form()
    agree = rad == oracle
    cert.radical, cert.radical_dim, cert.radical_agree = rad, rad.dim, agree
    data = {"dim": rad.dim, "oracle_dim": oracle.dim, "agree": agree}
    if not agree:
        diff = next((v for v in oracle.basis if not rad.contains_vector(v)), None)
        if diff is None:
            diff = next(v for v in rad.basis if not oracle.contains_vector(v))
        data["witness"] = {"vector": _element_repr(alg, alg.from_vector(diff))}
    cert.stages.append(StageResult("radical", agree, data))
    if not agree or done("radical"):
        return cert

    try:
        chain = build_chain(alg, jdec)
    except ChainError as exc:
        cert.stages.append(StageResult("heredity", False, {"witness": {"message": str(exc)}}))
        return cert
    cert.chain = chain
    cert.chain_dims = chain.dims()
    first_bad = None
    for i in range(1, chain.n + 1):
        gen = check_generation(alg, chain, jdec, i)
        w = radical_square_witness(alg, chain, i, rad)
        proj, ledger = check_projectivity(alg, chain, i, local)
        wit = None
        if w is not None:
            s, u, t = w
            wit = {"s": c.name(s), "u": _element_repr(alg, u), "t": c.name(t)}
        lc = LayerCertificate(i, len(jdec.classes[i - 1]), gen, w is None, proj, ledger, wit)
        cert.layers.append(lc)
        if not lc.ok and first_bad is None:
            first_bad = lc
    data = {"chain_dims": cert.chain_dims}
    if first_bad is not None:
        data["witness"] = first_bad.to_dict()
    cert.stages.append(StageResult("heredity", first_bad is None, data))
    if first_bad is not None or done("heredity") or not modules:
        return cert

    from . import modrep

    try:
        family = modrep.standard_modules(alg, jdec, local, radical=rad, seed=seed)
        ledger = modrep.check_lemma44(alg, jdec, local, family, chain)
    except modrep.InstanceTooLarge:
        raise
    except modrep.ModuleError as exc:
        cert.stages.append(StageResult("modules", False, {"witness": {"message": str(exc)}}))
        return cert
    cert.family = family
    data = {"layer_dimensions": ledger["layers"]}
    if not ledger["ok"]:
        data["witness"] = next(l for l in ledger["layers"] if not l["ok"])
    cert.stages.append(StageResult("modules", ledger["ok"], data))
    return cert


def _element_repr(alg: CategoryAlgebra, x: dict) -> dict:
    return {alg.category.name(k): str(v) for k, v in sorted(x.items())}
