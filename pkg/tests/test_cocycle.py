from fractions import Fraction as F
from itertools import product

import pytest
from hypothesis import given, strategies as st

from qhcat.cocycle import Cocycle, _identity_violation, trivial_cocycle, validate_cocycle
from qhcat.generators import BUNDLED, builtin, full_transformation_monoid, quaternion_twist


@pytest.mark.parametrize("spec", BUNDLED)
def test_bundled_cocycles_valid(spec):
    c, a = builtin(spec)
    assert validate_cocycle(c, a).ok


def _brute(c, a):
    comp = c.comp
    m = c.size
    for u, t, s in product(range(m), repeat=3):
        ut, ts = comp[u, t], comp[t, s]
        if ut >= 0 and ts >= 0:
            if a((int(ut)), s) * a(u, t) != a(u, int(ts)) * a(t, s):
                return False
    return True


@pytest.mark.parametrize("spec", ["builtin:tl:3:2/1", "builtin:brauer:2:3/1", "builtin:quat"])
def test_cocycle_identity_brute_force(spec):
    c, a = builtin(spec)
    assert _brute(c, a)


def test_missing_extra_zero():
    c = full_transformation_monoid(2)
    a = trivial_cocycle(c)
    vals = dict(a.values)
    vals.pop((0, 0))
    assert validate_cocycle(c, Cocycle(vals)).first()["kind"] == "missing value"
    c2, a2 = builtin("builtin:retract")
    vals = dict(a2.values)
    vals[(2, 2)] = F(1)  # f∘f not composable
    assert validate_cocycle(c2, Cocycle(vals)).first()["kind"] == "extra value"
    vals = dict(a.values)
    vals[(1, 1)] = F(0)
    assert validate_cocycle(c, Cocycle(vals)).first()["kind"] == "zero value"


def test_broken_identity_detected():
    c, a = quaternion_twist()
    vals = dict(a.values)
    vals[(1, 2)] = -vals[(1, 2)] * 3
    rep = validate_cocycle(c, Cocycle(vals))
    assert not rep.ok and rep.first()["kind"] == "cocycle identity"


@given(st.lists(st.sampled_from([F(1), F(-1), F(2), F(1, 3)]), min_size=4, max_size=4))
def test_coboundaries_are_cocycles(vals):
    # alpha(t, s) = f(t) f(s) / f(t∘s) always satisfies the identity
    c = full_transformation_monoid(2)
    f = dict(enumerate(vals))
    comp = c.comp
    a = Cocycle({(t, s): f[t] * f[s] / f[int(comp[t, s])] for t in range(4) for s in range(4)})
    assert validate_cocycle(c, a).ok


def test_large_values_use_python_path():
    c = full_transformation_monoid(2)
    big = F(10 ** 12 + 1, 7)
    comp = c.comp
    f = {0: big, 1: F(1), 2: F(3), 3: big}
    a = Cocycle({(t, s): f[t] * f[s] / f[int(comp[t, s])] for t in range(4) for s in range(4)})
    assert _identity_violation(comp, a) is None
    vals = dict(a.values)
    vals[(0, 3)] *= 2
    assert _identity_violation(comp, Cocycle(vals)) is not None


def test_dense_and_trivial():
    c = full_transformation_monoid(2)
    a = trivial_cocycle(c)
    assert a.is_trivial()
    d = a.dense(4)
    assert d[0, 0] == 1
    _, q = quaternion_twist()
    assert not q.is_trivial()
