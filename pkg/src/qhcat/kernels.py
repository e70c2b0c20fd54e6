"""Combinatorial hot loops over composition tables.

Every kernel exists twice: a numba ``@njit`` version and a vectorised numpy
version with identical results. The numba path is used when numba imports
and ``QHCAT_DISABLE_NUMBA`` is unset (or ``0``); otherwise the numpy path.

Composition tables are ``int32`` arrays ``comp[t, s]`` holding the id of
``t∘s`` or ``-1`` when the pair is not composable.
"""

from __future__ import annotations

import os

import numpy as np

UNDEF = -1

_disabled = os.environ.get("QHCAT_DISABLE_NUMBA", "0").strip().lower() not in ("", "0", "false", "no")

try:
    if _disabled:
        raise ImportError("disabled by QHCAT_DISABLE_NUMBA")
    from numba import njit

    NUMBA_AVAILABLE = True
except ImportError:
    NUMBA_AVAILABLE = False

    def njit(*args, **kwargs):
        if len(args) == 1 and callable(args[0]) and not kwargs:
            return args[0]
        return lambda f: f


BACKEND = "numba" if NUMBA_AVAILABLE else "numpy"


# ---------------------------------------------------------------- associativity


@njit(cache=True)
def _assoc_violation_nb(comp):
    m = comp.shape[0]
    for s in range(m):
        for t in range(m):
            ts = comp[t, s]
            if ts < 0:
                continue
            for u in range(m):
                ut = comp[u, t]
                if ut < 0:
                    continue
                if comp[u, ts] != comp[ut, s]:
                    return u, t, s
    return -1, -1, -1


def _assoc_violation_np(comp):
    m = comp.shape[0]
    us = np.arange(m)
    for s in range(m):
        ts = comp[:, s]
        ts_ok = ts >= 0
        # rows: t, cols: u
        ut = comp.T  # ut[t, u] = comp[u, t]
        valid = ts_ok[:, None] & (ut >= 0)
        left = comp[us[None, :], np.where(ts_ok, ts, 0)[:, None]]
        right = comp[np.where(ut >= 0, ut, 0), s]
        bad = valid & (left != right)
        if bad.any():
            t, u = np.argwhere(bad)[0]
            return int(u), int(t), s
    return -1, -1, -1


# --------------------------------------------------------------- pseudo-inverse


@njit(cache=True)
def _pseudo_inverses_nb(comp):
    m = comp.shape[0]
    out = np.full(m, -1, dtype=np.int64)
    for s in range(m):
        for t in range(m):
            st = comp[s, t]
            if st < 0:
                continue
            if comp[st, s] == s:
                out[s] = t
                break
    return out


def _pseudo_inverses_np(comp):
    m = comp.shape[0]
    st = comp  # st[s, t]
    ok = st >= 0
    sts = comp[np.where(ok, st, 0), np.arange(m)[:, None]]
    hit = ok & (sts == np.arange(m)[:, None])
    out = np.where(hit.any(axis=1), hit.argmax(axis=1), -1)
    return out.astype(np.int64)


# ------------------------------------------------------------ principal ideals


@njit(cache=True)
def _principal_ideals_nb(comp):
    m = comp.shape[0]
    out = np.zeros((m, m), dtype=np.bool_)
    left = np.empty(m, dtype=np.int64)
    for s in range(m):
        n = 0
        for a in range(m):
            x = comp[a, s]
            if x >= 0:
                left[n] = x
                n += 1
        for k in range(n):
            x = left[k]
            for b in range(m):
                y = comp[x, b]
                if y >= 0:
                    out[s, y] = True
    return out


def _principal_ideals_np(comp):
    m = comp.shape[0]
    out = np.zeros((m, m), dtype=bool)
    for s in range(m):
        left = comp[:, s]
        left = left[left >= 0]
        vals = comp[left].ravel()
        out[s, vals[vals >= 0]] = True
    return out


# ------------------------------------------------------------- cocycle identity


@njit(cache=True)
def _cocycle_violation_nb(comp, num, den):
    m = comp.shape[0]
    for s in range(m):
        for t in range(m):
            ts = comp[t, s]
            if ts < 0:
                continue
            for u in range(m):
                ut = comp[u, t]
                if ut < 0:
                    continue
                lhs = num[ut, s] * num[u, t] * den[u, ts] * den[t, s]
                rhs = num[u, ts] * num[t, s] * den[ut, s] * den[u, t]
                if lhs != rhs:
                    return u, t, s
    return -1, -1, -1


def _cocycle_violation_np(comp, num, den):
    m = comp.shape[0]
    for s in range(m):
        ts = comp[:, s]
        ts_ok = ts >= 0
        tsi = np.where(ts_ok, ts, 0)
        ut = comp.T  # [t, u]
        ut_ok = ut >= 0
        uti = np.where(ut_ok, ut, 0)
        valid = ts_ok[:, None] & ut_ok
        u_idx = np.arange(m)[None, :]
        t_idx = np.arange(m)[:, None]
        lhs = num[uti, s] * num[u_idx, t_idx] * den[u_idx, tsi[:, None]] * den[t_idx, s]
        rhs = num[u_idx, tsi[:, None]] * num[t_idx, s] * den[uti, s] * den[u_idx, t_idx]
        bad = valid & (lhs != rhs)
        if bad.any():
            t, u = np.argwhere(bad)[0]
            return int(u), int(t), s
    return -1, -1, -1


# ------------------------------------------------- radical corner-criterion hits


@njit(cache=True)
def _sandwich_hits_nb(comp, left, right, target_mask):
    # (p, x, q) with p∘x∘q defined and landing in target_mask
    count = 0
    m = comp.shape[0]
    for i in range(left.shape[0]):
        p = left[i]
        for x in range(m):
            y = comp[p, x]
            if y < 0:
                continue
            for j in range(right.shape[0]):
                z = comp[y, right[j]]
                if z >= 0 and target_mask[z]:
                    count += 1
    out = np.empty((count, 4), dtype=np.int64)
    k = 0
    for i in range(left.shape[0]):
        p = left[i]
        for x in range(m):
            y = comp[p, x]
            if y < 0:
                continue
            for j in range(right.shape[0]):
                q = right[j]
                z = comp[y, q]
                if z >= 0 and target_mask[z]:
                    out[k, 0] = p
                    out[k, 1] = x
                    out[k, 2] = q
                    out[k, 3] = z
                    k += 1
    return out


def _sandwich_hits_np(comp, left, right, target_mask):
    chunks = []
    m = comp.shape[0]
    xs = np.arange(m)
    for p in left:
        y = comp[p, :]
        ok = y >= 0
        if not ok.any():
            continue
        yv, xv = y[ok], xs[ok]
        z = comp[yv[:, None], right[None, :]]
        hit = (z >= 0) & target_mask[np.where(z >= 0, z, 0)]
        xi, qi = np.nonzero(hit)
        if len(xi):
            block = np.empty((len(xi), 4), dtype=np.int64)
            block[:, 0] = p
            block[:, 1] = xv[xi]
            block[:, 2] = right[qi]
            block[:, 3] = z[xi, qi]
            chunks.append(block)
    if not chunks:
        return np.empty((0, 4), dtype=np.int64)
    return np.concatenate(chunks)


# ----------------------------------------------------------- trace-form hits


@njit(cache=True)
def _trace_hits_nb(comp):
    # (s, t, y) with s∘t∘y = y: the diagonal entries of L_s·L_t
    m = comp.shape[0]
    count = 0
    for s in range(m):
        for t in range(m):
            for y in range(m):
                ty = comp[t, y]
                if ty >= 0 and comp[s, ty] == y:
                    count += 1
    out = np.empty((count, 3), dtype=np.int64)
    k = 0
    for s in range(m):
        for t in range(m):
            for y in range(m):
                ty = comp[t, y]
                if ty >= 0 and comp[s, ty] == y:
                    out[k, 0] = s
                    out[k, 1] = t
                    out[k, 2] = y
                    k += 1
    return out


def _trace_hits_np(comp):
    m = comp.shape[0]
    chunks = []
    ys = np.arange(m)
    for s in range(m):
        ty = comp  # ty[t, y]
        ok = ty >= 0
        sty = comp[s, np.where(ok, ty, 0)]
        hit = ok & (sty == ys[None, :])
        ti, yi = np.nonzero(hit)
        if len(ti):
            block = np.empty((len(ti), 3), dtype=np.int64)
            block[:, 0] = s
            block[:, 1] = ti
            block[:, 2] = yi
            chunks.append(block)
    if not chunks:
        return np.empty((0, 3), dtype=np.int64)
    return np.concatenate(chunks)


# ------------------------------------------------------------------ dispatch

_IMPLS = {
    "assoc_violation": (_assoc_violation_nb, _assoc_violation_np),
    "pseudo_inverses": (_pseudo_inverses_nb, _pseudo_inverses_np),
    "principal_ideals": (_principal_ideals_nb, _principal_ideals_np),
    "cocycle_violation": (_cocycle_violation_nb, _cocycle_violation_np),
    "sandwich_hits": (_sandwich_hits_nb, _sandwich_hits_np),
    "trace_hits": (_trace_hits_nb, _trace_hits_np),
}


def impl(name: str, backend: str | None = None):
    """Return the kernel ``name`` for ``backend`` (default: active backend)."""
    backend = backend or BACKEND
    nb, np_ = _IMPLS[name]
    if backend == "numba":
        if not NUMBA_AVAILABLE:
            raise RuntimeError("numba backend requested but unavailable")
        return nb
    return np_


def assoc_violation(comp: np.ndarray) -> tuple[int, int, int] | None:
    """First triple ``(u, t, s)`` with ``(u∘t)∘s != u∘(t∘s)``, or None."""
    u, t, s = impl("assoc_violation")(comp)
    return None if u < 0 else (int(u), int(t), int(s))


def pseudo_inverses(comp: np.ndarray) -> np.ndarray:
    """For each s, the least t with s∘t∘s = s (or -1)."""
    return impl("pseudo_inverses")(comp)


def principal_ideals(comp: np.ndarray) -> np.ndarray:
    """Boolean matrix whose row s is the indicator of Mor∘s∘Mor."""
    return impl("principal_ideals")(comp)


def cocycle_violation(comp, num, den):
    u, t, s = impl("cocycle_violation")(comp, num, den)
    return None if u < 0 else (int(u), int(t), int(s))


def sandwich_hits(comp, left, right, target_mask) -> np.ndarray:
    """Rows ``(p, x, q, p∘x∘q)`` over p in left, q in right, landing in the mask."""
    return impl("sandwich_hits")(comp, np.asarray(left, dtype=np.int64),
                                 np.asarray(right, dtype=np.int64),
                                 np.asarray(target_mask, dtype=np.bool_))


def trace_hits(comp) -> np.ndarray:
    return impl("trace_hits")(comp)
