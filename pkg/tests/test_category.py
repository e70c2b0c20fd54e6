import numpy as np
import pytest

from qhcat.category import (CategoryError, FiniteCategory, Morphism, SplitWitness, check_witness,
                            from_monoid, is_split, validate)
from qhcat.generators import BUNDLED, builtin, full_transformation_monoid, null_monoid, retract_category


def test_compose_and_hom_sets():
    c = retract_category()
    f, g = c.name_to_id["f"], c.name_to_id["g"]
    assert c.name(c.compose(f, g)) == "1Y"
    assert c.name(c.compose(g, f)) == "e"
    assert c.compose(f, f) is None
    assert sorted(c.name(s) for s in c.hom_set(0, 1)) == ["f"]
    assert sorted(c.name(s) for s in c.end(0)) == ["1X", "e"]
    with pytest.raises(CategoryError):
        c.compose(99, 0)


@pytest.mark.parametrize("spec", BUNDLED + ("builtin:n3",))
def test_bundled_categories_validate(spec):
    c, _ = builtin(spec)
    assert validate(c).ok


def test_associativity_violation_reports_triple():
    # a 3-element table with an identity that is not associative
    tab = [[0, 1, 2], [1, 2, 2], [2, 0, 1]]
    c = FiniteCategory(["X"], [Morphism(k, 0, 0, f"m{k}") for k in range(3)], [0], np.array(tab))
    rep = validate(c)
    assert not rep.ok
    v = rep.first()
    assert v["kind"] == "associativity"
    u, t, s = (c.name_to_id[n] for n in v["triple"])
    comp = c.comp
    assert comp[comp[u, t], s] != comp[u, comp[t, s]]


def test_identity_not_neutral():
    tab = [[1, 1], [1, 1]]
    c = FiniteCategory(["X"], [Morphism(0, 0, 0, "a"), Morphism(1, 0, 0, "b")], [0], np.array(tab))
    rep = validate(c)
    assert not rep.ok and rep.first()["kind"] == "identity"


def test_composition_domain_violation():
    mors = [Morphism(0, 0, 0, "1X"), Morphism(1, 1, 1, "1Y"), Morphism(2, 0, 1, "f")]
    comp = np.full((3, 3), -1)
    comp[0, 0], comp[1, 1], comp[2, 0], comp[1, 2] = 0, 1, 2, 2
    ok = FiniteCategory(["X", "Y"], mors, [0, 1], comp)
    assert validate(ok).ok
    comp2 = comp.copy()
    comp2[2, 2] = 2  # f∘f is not composable
    bad = FiniteCategory(["X", "Y"], mors, [0, 1], comp2)
    assert validate(bad).first()["kind"] == "composition domain"


def test_malformed_construction():
    with pytest.raises(CategoryError):
        FiniteCategory(["X"], [Morphism(1, 0, 0)], [0], np.zeros((1, 1)))
    with pytest.raises(CategoryError):
        from_monoid([[0, 1], [1, 1], [0, 0]])
    with pytest.raises(CategoryError):
        from_monoid([[1, 1], [1, 1]])


def test_split_examples():
    w, bad = is_split(full_transformation_monoid(3))
    assert bad is None and check_witness(full_transformation_monoid(3), w)
    c = null_monoid()
    w, bad = is_split(c)
    assert w is None and c.name(bad) == "x"


def test_split_witness_is_two_sided():
    c, _ = builtin("builtin:brauer:3:1/1")
    w, _ = is_split(c)
    comp = c.comp
    for s, u in enumerate(w.inverse):
        assert comp[comp[s, u], s] == s and comp[comp[u, s], u] == u
    assert not check_witness(c, SplitWitness(tuple([c.identity[0]] * c.size)))


def test_idempotents_and_left_sets():
    c = full_transformation_monoid(2)
    names = {c.name(s) for s in c.idempotents()}
    assert names == {"11", "12", "22"}
    c1 = c.name_to_id["11"]
    assert {c.name(s) for s in np.nonzero(c.left_set(c1))[0]} == {"11", "22"}
    assert {c.name(s) for s in np.nonzero(c.right_set(c1))[0]} == {"11"}


def test_equality():
    assert full_transformation_monoid(2) == full_transformation_monoid(2)
    assert full_transformation_monoid(2) != full_transformation_monoid(1)
