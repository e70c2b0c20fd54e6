from fractions import Fraction as F

import pytest
from hypothesis import given, strategies as st

from qhcat.algebra import AlgebraError, CategoryAlgebra, add, is_nilpotent_ideal
from qhcat.cocycle import trivial_cocycle
from qhcat.exactla import Subspace
from qhcat.generators import BUNDLED, builtin, cyclic_group, full_transformation_monoid, temperley_lieb
from qhcat.green import j_decompose, local_data

from oracles import same_rowspace, subspace_rows, trace_form_radical


def _alg(spec):
    c, a = builtin(spec)
    return CategoryAlgebra(c, a)


def _t2():
    alg = _alg("builtin:t:2")
    n = alg.category.name_to_id
    return alg, n["11"], n["22"], n["12"], n["21"]


def test_t2_products():
    alg, c1, c2, one, swap = _t2()
    assert alg.multiply({swap: 1}, {swap: 1}) == {one: 1}
    assert alg.multiply({swap: 1}, {c1: 1}) == {c2: 1}
    assert alg.multiply({c1: 1}, {swap: 1}) == {c1: 1}
    assert alg.unit() == {one: 1}


def test_tl2_loop_factor():
    d = temperley_lieb(2, 3)
    alg = CategoryAlgebra(d.category, d.cocycle)
    u = next(s for s in range(alg.dim) if s not in d.category.identity)
    assert alg.multiply({u: 1}, {u: 1}) == {u: 3}
    lift = alg.idempotent_lift(u)
    assert lift == {u: F(1, 3)}
    assert alg.multiply(lift, lift) == lift


def test_lift_rejects_non_idempotent():
    alg, _, _, _, swap = _t2()
    with pytest.raises(AlgebraError):
        alg.idempotent_lift(swap)
    assert alg.idempotent_lift(alg.category.identity[0]) == alg.unit()


element = st.dictionaries(st.integers(0, 3), st.fractions(max_denominator=5).filter(bool), max_size=4)


@given(element, element, element)
def test_t2_associative_and_unital(x, y, z):
    alg = _t2()[0]
    assert alg.multiply(alg.multiply(x, y), z) == alg.multiply(x, alg.multiply(y, z))
    assert alg.multiply(alg.unit(), x) == x == alg.multiply(x, alg.unit())
    assert alg.multiply(add(x, y), z) == add(alg.multiply(x, z), alg.multiply(y, z))


@pytest.mark.parametrize("spec", ["builtin:tl:3:2/1", "builtin:brauer:2:3/1", "builtin:quat", "builtin:retract"])
def test_basis_associativity(spec):
    assert _alg(spec).is_associative()


def test_vectors_round_trip():
    alg = _t2()[0]
    x = {0: F(1, 2), 3: F(-2)}
    assert alg.from_vector(alg.to_vector(x)) == x


def test_corners_t2():
    alg, c1, c2, one, swap = _t2()
    jd = j_decompose(alg.category)
    top = alg.corner(one, jd)
    assert set(top.basis) == set(range(4))
    assert set(top.gamma_part) == {one, swap} and set(top.j_part) == {c1, c2}
    low = alg.corner(c1, jd)
    assert low.basis == (c1,) and low.gamma_part == (c1,) and low.j_part == ()


def test_corner_of_group_is_everything():
    c = cyclic_group(3)
    alg = CategoryAlgebra(c, trivial_cocycle(c))
    cor = alg.corner(c.identity[0], j_decompose(c))
    assert len(cor.basis) == 3 and cor.j_part == ()


def test_ideal_spans():
    alg, c1, c2, one, swap = _t2()
    assert alg.ideal_span([alg.unit()]) == Subspace.full(4)
    assert alg.ideal_span([{c1: 1}]) == Subspace.coordinate(4, [c1, c2])
    assert alg.ideal_span([{}]).dim == 0
    assert alg.ideal_span([{c1: 1, c2: -1}]).dim == 1
    assert alg.left_ideal([{c1: 1}]) == Subspace.coordinate(4, [c1, c2])
    assert alg.ideal_span([{c1: 1}], side="right") == Subspace.coordinate(4, [c1])


def test_t2_radical():
    alg, c1, c2, _, _ = _t2()
    jd = j_decompose(alg.category)
    rad = alg.radical_corner_criterion(jd, local_data(alg.category, jd))
    assert rad == alg.span([{c1: 1, c2: -1}])
    assert alg.radical_trace_form() == rad
    assert is_nilpotent_ideal(alg, rad)
    assert not is_nilpotent_ideal(alg, alg.span([{c1: 1}]))


@pytest.mark.parametrize("spec", ["builtin:cyclic:3", "builtin:sym:3", "builtin:tl:3:2/1", "builtin:quat"])
def test_semisimple_examples_have_zero_radical(spec):
    alg = _alg(spec)
    jd = j_decompose(alg.category)
    assert alg.radical_corner_criterion(jd, local_data(alg.category, jd)).dim == 0
    assert alg.radical_trace_form().dim == 0


RAD_DIMS = {"builtin:t:2": 1, "builtin:t:3": 7, "builtin:tl:3:1/1": 3, "builtin:brauer:3:1/1": 8, "builtin:partition:2:1/1": 3}


@pytest.mark.parametrize("spec", BUNDLED)
def test_radical_routes_agree_with_sympy(spec):
    alg = _alg(spec)
    c = alg.category
    jd = j_decompose(c)
    rad = alg.radical_corner_criterion(jd, local_data(c, jd))
    ref = trace_form_radical(c.comp, alg.cocycle.values)
    assert same_rowspace(subspace_rows(rad), ref)
    assert rad.dim == RAD_DIMS.get(spec, 0)
    assert is_nilpotent_ideal(alg, rad)
    # the radical is a two-sided ideal
    assert alg.ideal_span(alg.from_vector(v) for v in rad.basis) == rad


def test_generators_generate():
    alg = full_transformation_monoid(3)
    a = CategoryAlgebra(alg, trivial_cocycle(alg))
    gens = a.generators()
    assert len(gens) < a.dim
    assert a.ideal_span([{g: 1} for g in gens]).dim == a.dim
    assert set(a.category.identity) <= set(gens)
