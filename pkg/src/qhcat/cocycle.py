"""2-cocycles of a finite category with nonzero rational values."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from . import kernels
from .category import FiniteCategory, ValidationReport

# cross-multiplied products of four entries must fit in int64
_KERNEL_BOUND = 1 << 15


@dataclass
class Cocycle:
    """Values keyed by composable pairs ``(t, s)``; no implicit entries."""

    values: dict[tuple[int, int], Fraction]

    def __call__(self, t: int, s: int) -> Fraction:
        return self.values[(t, s)]

    def dense(self, m: int) -> np.ndarray:
        """m×m object array, None off the composable pairs."""
        out = np.empty((m, m), dtype=object)
        for (t, s), v in self.values.items():
            out[t, s] = v
        return out

    def is_trivial(self) -> bool:
        return all(v == 1 for v in self.values.values())

    def __eq__(self, other):
        return isinstance(other, Cocycle) and self.values == other.values


def trivial_cocycle(c: FiniteCategory) -> Cocycle:
    tt, ss = np.nonzero(c.comp >= 0)
    return Cocycle({(int(t), int(s)): Fraction(1) for t, s in zip(tt, ss)})


def validate_cocycle(c: FiniteCategory, a: Cocycle) -> ValidationReport:
    """Domain equals the composable pairs, values nonzero, cocycle identity
    alpha(u∘t, s)·alpha(u, t) = alpha(u, t∘s)·alpha(t, s) on every triple."""
    comp = c.comp
    pairs = {(int(t), int(s)) for t, s in zip(*np.nonzero(comp >= 0))}
    keys = set(a.values)
    missing = sorted(pairs - keys)
    if missing:
        t, s = missing[0]
        return ValidationReport(False, [{"kind": "missing value", "message": "cocycle missing on composable pair",
                                         "pair": [c.name(t), c.name(s)]}])
    extra = sorted(keys - pairs)
    if extra:
        t, s = extra[0]
        return ValidationReport(False, [{"kind": "extra value", "message": "cocycle value on non-composable pair",
                                         "pair": [c.name(t), c.name(s)]}])
    for (t, s) in sorted(pairs):
        if a.values[(t, s)] == 0:
            return ValidationReport(False, [{"kind": "zero value", "message": "zero value",
                                             "pair": [c.name(t), c.name(s)]}])
    bad = _identity_violation(comp, a)
    if bad is not None:
        u, t, s = bad
        return ValidationReport(False, [{"kind": "cocycle identity",
                                         "message": "alpha(u∘t,s)alpha(u,t) != alpha(u,t∘s)alpha(t,s)",
                                         "triple": [c.name(u), c.name(t), c.name(s)]}])
    return ValidationReport(True, [])


def _identity_violation(comp: np.ndarray, a: Cocycle):
    m = comp.shape[0]
    small = all(abs(v.numerator) < _KERNEL_BOUND and v.denominator < _KERNEL_BOUND for v in a.values.values())
    if small:
        num = np.ones((m, m), dtype=np.int64)
        den = np.ones((m, m), dtype=np.int64)
        for (t, s), v in a.values.items():
            num[t, s] = v.numerator
            den[t, s] = v.denominator
        return kernels.cocycle_violation(comp, num, den)
    for s in range(m):
        for t in range(m):
            ts = comp[t, s]
            if ts < 0:
                continue
            for u in range(m):
                ut = comp[u, t]
                if ut < 0:
                    continue
                if a.values[(ut, s)] * a.values[(u, t)] != a.values[(u, ts)] * a.values[(t, s)]:
                    return u, t, s
    return None
