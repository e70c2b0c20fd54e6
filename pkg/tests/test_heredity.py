from dataclasses import replace
from fractions import Fraction as F

import pytest

from qhcat.algebra import CategoryAlgebra
from qhcat.cocycle import Cocycle, trivial_cocycle
from qhcat.exactla import Subspace
from qhcat.generators import BUNDLED, builtin, cyclic_group, null_monoid
from qhcat.green import j_decompose, local_data
from qhcat.heredity import (ChainError, build_chain, certify, check_generation, check_projectivity,
                            check_radical_square, radical_square_witness)


def _setup(spec):
    c, a = builtin(spec)
    alg = CategoryAlgebra(c, a)
    jd = j_decompose(c)
    loc = local_data(c, jd)
    rad = alg.radical_corner_criterion(jd, loc)
    return alg, jd, loc, rad, build_chain(alg, jd)


CHAIN_DIMS = {
    "builtin:t:2": [0, 2, 4],
    "builtin:t:3": [0, 3, 21, 27],
    "builtin:brauer:3:1/1": [0, 9, 15],
    "builtin:tl:3:1/1": [0, 4, 5],
    "builtin:partition:2:1/1": [0, 4, 13, 15],
    "builtin:cyclic:3": [0, 3],
}


@pytest.mark.parametrize("spec", sorted(CHAIN_DIMS))
def test_chain_dims(spec):
    assert _setup(spec)[4].dims() == CHAIN_DIMS[spec]


def test_t2_layer_checks():
    alg, jd, loc, rad, chain = _setup("builtin:t:2")
    n = alg.category.name_to_id
    assert chain.spans[1] == Subspace.coordinate(4, [n["11"], n["22"]])
    for i in (1, 2):
        assert check_generation(alg, chain, jd, i)
        assert check_radical_square(alg, chain, i, rad)
    ok, ledger = check_projectivity(alg, chain, 1, loc)
    assert ok and ledger == {"summand_dims": [2], "quotient_dim": 2, "sum_dim": 2}
    ok, ledger = check_projectivity(alg, chain, 2, loc)
    assert ok and ledger["summand_dims"] == [2]


def test_brauer_projectivity_ledger():
    alg, jd, loc, rad, chain = _setup("builtin:brauer:3:1/1")
    ok, ledger = check_projectivity(alg, chain, 1, loc)
    assert ok and ledger["summand_dims"] == [3, 3, 3]


def test_bogus_radical_gives_witness():
    alg, jd, loc, rad, chain = _setup("builtin:t:2")
    w = radical_square_witness(alg, chain, 1, Subspace.full(4))
    assert w is not None
    s, u, t = w
    sut = alg.mul_basis_right(alg.mul_basis_left(s, u), t)
    assert any(k in chain.layers[1] for k in sut)


def test_broken_epsilon_fails_projectivity():
    alg, jd, loc, rad, chain = _setup("builtin:brauer:3:1/1")
    bad = list(loc)
    bad[0] = replace(loc[0], epsilon=loc[0].epsilon[:2])
    ok, ledger = check_projectivity(alg, chain, 1, bad)
    assert not ok and ledger["sum_dim"] == 6
    bad[0] = replace(loc[0], epsilon=loc[0].epsilon + loc[0].epsilon[:1])
    assert not check_projectivity(alg, chain, 1, bad)[0]


def test_generation_fails_with_wrong_representative():
    alg, jd, loc, rad, chain = _setup("builtin:t:2")
    wrong = replace(jd, reps=(jd.reps[1], jd.reps[1]))
    # the identity generates all of A, not J_1
    assert not check_generation(alg, chain, wrong, 1)


def test_non_split_chain_refused():
    c = null_monoid()
    alg = CategoryAlgebra(c, trivial_cocycle(c))
    with pytest.raises((ChainError, ValueError)):
        build_chain(alg, j_decompose(c))


@pytest.mark.parametrize("spec", BUNDLED)
def test_certify_bundled(spec):
    c, a = builtin(spec)
    cert = certify(c, a, modules=False)
    assert cert.passed, cert.to_dict()
    assert cert.radical_agree
    assert [s.name for s in cert.stages] == ["validate", "split", "green", "algebra", "radical", "heredity"]


def test_certify_nonsemisimple_tl3():
    c, a = builtin("builtin:tl:3:1/1")
    cert = certify(c, a)
    assert cert.passed and cert.radical_dim == 3
    assert all(l.generation and l.radical_square and l.projectivity for l in cert.layers)
    assert cert.stages[-1].name == "modules"


def test_certify_failures():
    cert = certify(null_monoid(), trivial_cocycle(null_monoid()))
    assert not cert.passed and cert.failure.name == "split"
    assert cert.failure.data["witness"]["morphism"] == "x"
    c = cyclic_group(2)
    vals = dict(trivial_cocycle(c).values)
    vals[(1, 1)] = F(0)
    cert = certify(c, Cocycle(vals))
    assert cert.failure.name == "validate"
    d = cert.to_dict()
    assert d["pass"] is False and d["failed_stage"] == "validate"


def test_stop_after():
    c, a = builtin("builtin:t:2")
    cert = certify(c, a, stop_after="radical")
    assert [s.name for s in cert.stages][-1] == "radical"
    assert cert.passed and cert.radical_dim == 1 and cert.chain is None


def test_other_orders_and_reps():
    c, a = builtin("builtin:semilattice:2")
    for tb in ("min", "max"):
        assert certify(c, a, tie_break=tb).passed
    c, a = builtin("builtin:t:3")
    assert certify(c, a, rep="max", modules=False).passed
