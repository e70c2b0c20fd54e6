import os
import subprocess
import sys
from fractions import Fraction as F

import pytest

from qhcat.algebra import CategoryAlgebra
from qhcat.cocycle import trivial_cocycle
from qhcat.exactla import Subspace, mat
from qhcat.generators import cyclic_group
from qhcat.modrep import (DirectSum, MatrixModule, cover_audit, endo_split, find_isomorphism, head, hom_space,
                          idempotent_independence_check, is_invariant, is_isomorphic, left_ideal_module,
                          module_radical, q_module, quotient_module, regular_module, verify_standard_axioms)

from conftest import LISTED


def _t2(pipeline):
    p = pipeline("builtin:t:2")
    n = p.category.name_to_id
    return p, n["11"], n["22"], n["12"], n["21"]


def test_regular_and_ideal_modules(pipeline):
    c = cyclic_group(2)
    alg = CategoryAlgebra(c, trivial_cocycle(c))
    R = regular_module(alg)
    assert R.dim == 2 and R.check_axioms()
    p, c1, c2, _, _ = _t2(pipeline)
    L = left_ideal_module(p.alg, Subspace.coordinate(4, [c1, c2]))
    assert L.dim == 2 and L.check_axioms()


def test_radical_and_head(pipeline):
    p, c1, c2, _, _ = _t2(pipeline)
    rad = p.cert.radical
    R = regular_module(p.alg)
    assert module_radical(p.alg, R, rad).dim == 1
    dconst = p.family.delta[(1, 1)]
    assert module_radical(p.alg, dconst, rad).dim == 1
    assert head(p.alg, dconst, rad).dim == 1
    s3 = pipeline("builtin:sym:3")
    R3 = regular_module(s3.alg)
    assert module_radical(s3.alg, R3, s3.cert.radical).dim == 0
    assert head(s3.alg, R3, s3.cert.radical).dim == 6


def test_hom_spaces(pipeline):
    p, *_ = _t2(pipeline)
    fam = p.family
    sign, triv = fam.simple[(2, 1)], fam.simple[(2, 2)]
    assert hom_space(p.alg, sign, triv).dim == 0
    for lab in fam.labels:
        M = fam.delta[lab]
        H = hom_space(p.alg, M, M)
        ident = [F(int(a == b)) for a in range(M.dim) for b in range(M.dim)]
        assert H.space.contains_vector(ident)


def _hom_all_basis(alg, M, N):
    """Intertwiner condition against every basis morphism, not just generators."""
    from qhcat.exactla import nullspace
    dm, dn = M.dim, N.dim
    rows = []
    for g in range(alg.dim):
        am, an = M.act_basis(g), N.act_basis(g)
        for a in range(dn):
            for c in range(dm):
                row = [F(0)] * (dm * dn)
                for b in range(dm):
                    row[a * dm + b] += am[b, c]
                for b in range(dn):
                    row[b * dm + c] -= an[a, b]
                rows.append(row)
    return nullspace(mat(rows))


@pytest.mark.parametrize("spec", ["builtin:t:2", "builtin:tl:3:1/1", "builtin:retract", "builtin:quat"])
def test_hom_generators_match_all_basis(pipeline, spec):
    p = pipeline(spec)
    mods = [p.family.delta[l] for l in p.family.labels] + [p.family.simple[l] for l in p.family.labels]
    for M in mods:
        for N in mods:
            assert hom_space(p.alg, M, N).space == _hom_all_basis(p.alg, M, N)


def test_endo_split_group_algebras():
    for n, pieces in ((2, 2), (3, 2)):
        c = cyclic_group(n)
        alg = CategoryAlgebra(c, trivial_cocycle(c))
        parts = endo_split(alg, regular_module(alg))
        assert len(parts) == pieces
        assert sorted(p.dim for p in parts) == ([1, 1] if n == 2 else [1, 2])
        for part in parts:
            assert is_invariant(regular_module(alg), part.top)


def test_endo_split_indecomposable(pipeline):
    p, *_ = _t2(pipeline)
    Q = q_module(p.alg, p.jdec, p.local, 1)
    assert len(endo_split(p.alg, Q)) == 1


Q_DIMS = {"builtin:t:2": {1: 2, 2: 2}, "builtin:brauer:3:1/1": {1: 3, 2: 6}, "builtin:t:3": {1: 3, 2: 6, 3: 6}}


@pytest.mark.parametrize("spec", sorted(Q_DIMS))
def test_q_dims(pipeline, spec):
    p = pipeline(spec)
    assert p.family.q_dims == Q_DIMS[spec]


def test_q_independent_of_idempotent(pipeline):
    for spec in ("builtin:t:2", "builtin:brauer:3:1/1", "builtin:t:3"):
        p = pipeline(spec)
        for i in range(1, p.jdec.n + 1):
            assert idempotent_independence_check(p.alg, p.jdec, p.local, i)


STANDARD = {
    "builtin:t:2": ([2, 1, 1], [1, 1, 1], [[1, 1, 0], [0, 1, 0], [0, 0, 1]]),
    "builtin:tl:3:1/1": ([2, 1], [1, 1], [[1, 1], [0, 1]]),
    "builtin:tl:3:2/1": ([2, 1], [2, 1], [[1, 0], [0, 1]]),
    "builtin:brauer:3:1/1": ([3, 1, 1, 2], [1, 1, 1, 2], None),
    "builtin:t:3": ([3, 3, 3, 1, 1, 2], [1, 2, 3, 1, 1, 2], None),
}


@pytest.mark.parametrize("spec", sorted(STANDARD))
def test_standard_family(pipeline, spec):
    p = pipeline(spec)
    fam = p.family
    dd, sd, dm = STANDARD[spec]
    assert [fam.delta[l].dim for l in fam.labels] == dd
    assert [fam.simple[l].dim for l in fam.labels] == sd
    if dm is not None:
        assert fam.decomposition_matrix == dm
    for a, row in zip(fam.labels, fam.decomposition_matrix):
        for b, v in zip(fam.labels, row):
            assert v == (1 if a == b else v)
            if a != b and v:
                assert fam.less(b, a)


def test_t2_labels_and_order(pipeline):
    p, *_ = _t2(pipeline)
    fam = p.family
    assert fam.labels == [(1, 1), (2, 1), (2, 2)]
    assert fam.l == {1: 1, 2: 2}
    assert all(v == 1 for v in fam.n.values())
    # sign is below const: S_const <_J S_units
    assert fam.less((2, 1), (1, 1)) and not fam.less((1, 1), (2, 1))
    sign = fam.simple[(2, 1)]
    swap = p.category.name_to_id["21"]
    assert sign.act_basis(swap)[0, 0] == -1


@pytest.mark.parametrize("spec", LISTED + ("builtin:retract", "builtin:quat", "builtin:cyclic:3"))
def test_multiplicity_matches_hom_from_projective(pipeline, spec):
    p = pipeline(spec)
    fam = p.family
    mods = [fam.delta[l] for l in fam.labels] + [regular_module(p.alg)]
    for M in mods[:6]:
        for lab in fam.labels:
            h = hom_space(p.alg, p.covers[lab].module, M).dim
            assert h == fam.multiplicity(M, lab) * fam.end_dims[lab]


def test_regular_module_multiplicities(pipeline):
    for spec in ("builtin:t:2", "builtin:tl:3:1/1", "builtin:brauer:3:1/1"):
        p = pipeline(spec)
        fam = p.family
        mult = fam.multiplicities(regular_module(p.alg))
        # [A : D] = rank of f on A = dim f·A, over dim End(D)
        for l in fam.labels:
            right = p.alg.ideal_span([fam.idempotents[l]], side="right").dim
            assert mult[l] * fam.end_dims[l] == right
        assert sum(mult[l] * fam.simple[l].dim for l in fam.labels) == p.alg.dim


@pytest.mark.parametrize("spec", ["builtin:t:2", "builtin:t:3", "builtin:tl:3:1/1", "builtin:tl:3:2/1",
                                  "builtin:brauer:3:1/1", "builtin:partition:2:1/1", "builtin:retract"])
def test_standard_axioms(pipeline, spec):
    p = pipeline(spec)
    res = verify_standard_axioms(p.alg, p.jdec, p.family, p.covers)
    assert res["ok"], res


def test_t2_cover_filtration(pipeline):
    p, *_ = _t2(pipeline)
    cov = p.covers
    assert cov[(1, 1)].dim == 2 and [s.layer for s in cov[(1, 1)].steps] == [1]
    triv, sign = cov[(2, 2)], cov[(2, 1)]
    assert triv.dim == 1 and [s.layer for s in triv.steps] == [2]
    # c_1·(1 - swap) = 0, so the sign cover is Δ_sign itself
    assert sign.dim == 1 and [(s.layer, s.multiplicities) for s in sign.steps] == [(2, {(2, 1): 1})]
    assert cover_audit(p.family, cov) == {"sum_dim_D_dim_P": 4, "sum_weighted": 4}


def test_layer_dimension_ledger(pipeline):
    p = pipeline("builtin:brauer:3:1/1")
    ledger = p.cert.stages[-1].data["layer_dimensions"]
    assert [(l["quotient_dim"], l["eps"], l["rhs"]) for l in ledger] == [(9, 3, 9), (6, 1, 6)]


def test_isomorphism_detection(pipeline):
    p, *_ = _t2(pipeline)
    fam = p.family
    a, b = fam.delta[(2, 1)], fam.delta[(2, 2)]
    assert not is_isomorphic(p.alg, a, b)
    iso = find_isomorphism(p.alg, DirectSum([a, b]), DirectSum([b, a]))
    assert iso is not None
    Q1 = q_module(p.alg, p.jdec, p.local, 2)
    assert is_isomorphic(p.alg, Q1, DirectSum([a, b]))


def test_matrix_module_axioms():
    c = cyclic_group(2)
    alg = CategoryAlgebra(c, trivial_cocycle(c))
    g = next(s for s in range(2) if s != c.identity[0])
    good = MatrixModule(alg, 1, {c.identity[0]: mat([[1]]), g: mat([[-1]])})
    bad = MatrixModule(alg, 1, {c.identity[0]: mat([[1]]), g: mat([[2]])})
    assert good.check_axioms() and not bad.check_axioms()
    Q = quotient_module(regular_module(alg), Subspace(2, [[F(1), F(1)]]))
    assert Q.dim == 1 and Q.check_axioms()


def test_numpy_backend_flag():
    code = ("from qhcat import kernels; from qhcat.generators import builtin; from qhcat.heredity import certify;"
            "c, a = builtin('builtin:t:2'); print(kernels.BACKEND, certify(c, a).passed)")
    env = dict(os.environ, QHCAT_DISABLE_NUMBA="1")
    out = subprocess.run([sys.executable, "-c", code], env=env, capture_output=True, text=True, check=True)
    assert out.stdout.split() == ["numpy", "True"]
