import pytest

from qhcat.generators import BUNDLED, builtin, full_transformation_monoid, null_monoid
from qhcat.green import (GreenError, check_ideal_lemmas, corner_set, idempotent_equivalent, j_decompose,
                         linear_extensions, local_data, principal_ideal)

# frozen from a hand count: class sizes, |Γ|, |ε| per layer
GREEN = {
    "builtin:t:2": ([2, 2], [1, 2], [1, 1]),
    "builtin:t:3": ([3, 18, 6], [1, 2, 6], [1, 3, 1]),
    "builtin:tl:3:1/1": ([4, 1], [1, 1], [2, 1]),
    "builtin:brauer:3:1/1": ([9, 6], [1, 6], [3, 1]),
    "builtin:partition:2:1/1": ([4, 9, 2], [1, 1, 2], [2, 3, 1]),
    "builtin:retract": ([4, 1], [1, 1], [2, 1]),
    "builtin:semilattice:2": ([1, 1, 1, 1], [1, 1, 1, 1], [1, 1, 1, 1]),
}


@pytest.mark.parametrize("spec", sorted(GREEN))
def test_layer_data(spec):
    c, _ = builtin(spec)
    jd = j_decompose(c)
    loc = local_data(c, jd)
    sizes, gammas, eps = GREEN[spec]
    assert [len(cl) for cl in jd.classes] == sizes
    assert [len(d.gamma) for d in loc] == gammas
    assert [len(d.epsilon) for d in loc] == eps
    assert jd.admissible


def test_transformation_classes_by_rank():
    c = full_transformation_monoid(3)
    jd = j_decompose(c)
    for i, cl in enumerate(jd.classes):
        assert {len(set(c.name(s))) for s in cl} == {i + 1}


@pytest.mark.parametrize("spec", BUNDLED)
def test_classes_match_principal_ideals(spec):
    c, _ = builtin(spec)
    jd = j_decompose(c)
    ideals = {s: principal_ideal(c, s) for s in range(c.size)}
    for cl in jd.classes:
        assert len({ideals[s] for s in cl}) == 1
    for a in range(jd.n):
        for b in range(jd.n):
            below = a != b and jd.classes[a][0] in ideals[jd.classes[b][0]]
            assert below == ((a, b) in jd.less)


@pytest.mark.parametrize("spec", BUNDLED)
def test_ideal_lemmas(spec):
    c, _ = builtin(spec)
    rep = check_ideal_lemmas(c, j_decompose(c))
    assert rep["ok"], rep


def test_ideal_lemmas_fail_without_splitness():
    c = null_monoid()
    with pytest.raises(GreenError):
        j_decompose(c)  # the class of x has no idempotent


def test_gamma_and_corner():
    c = full_transformation_monoid(2)
    jd = j_decompose(c)
    loc = local_data(c, jd)
    top = loc[1]
    assert {c.name(s) for s in top.gamma} == {"12", "21"}
    assert {c.name(s) for s in top.jset} == {"11", "22"}
    assert [c.name(s) for s in corner_set(c, c.name_to_id["11"])] == ["11"]


def test_idempotent_equivalence():
    c = full_transformation_monoid(2)
    c1, c2, one = (c.name_to_id[n] for n in ("11", "22", "12"))
    s, t = idempotent_equivalent(c, c1, c2)
    assert c.compose(s, t) == c1 and c.compose(t, s) == c2
    assert idempotent_equivalent(c, c1, one) is None


def test_alternative_orders_and_reps():
    c, _ = builtin("builtin:semilattice:2")
    exts = linear_extensions(c)
    assert len(exts) == 2
    a = j_decompose(c, order=exts[0])
    b = j_decompose(c, order=exts[1])
    assert a.admissible and b.admissible
    assert a.classes != b.classes
    assert j_decompose(c, tie_break="max").classes == b.classes
    with pytest.raises(GreenError):
        j_decompose(c, order=[0, 0, 1, 2])
    bad = j_decompose(c, order=list(reversed(exts[0])))
    assert not bad.admissible
    t3 = full_transformation_monoid(3)
    lo, hi = j_decompose(t3, rep="min"), j_decompose(t3, rep="max")
    assert lo.reps != hi.reps and lo.classes == hi.classes


def test_hasse_and_lower_sets():
    c = full_transformation_monoid(3)
    jd = j_decompose(c)
    assert jd.hasse() == [(0, 1), (1, 2)]
    assert len(jd.lower_set(1)) == 21
    assert jd.lower_j_set(1) == jd.lower_set(1) or sorted(jd.lower_j_set(1)) == sorted(jd.lower_set(1))
