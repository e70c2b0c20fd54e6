"""Compare the numba and numpy kernel backends on larger composition tables.

Usage: python benchmarks/bench_kernels.py [--repeat N] [--examples builtin:t:4 ...]
"""

import argparse
import time

import numpy as np

from qhcat import kernels
from qhcat.generators import builtin


def _cases(comp, alpha):
    m = comp.shape[0]
    num = np.ones((m, m), dtype=np.int64)
    den = np.ones((m, m), dtype=np.int64)
    for (t, s), v in alpha.values.items():
        num[t, s], den[t, s] = v.numerator, v.denominator
    idem = [s for s in range(m) if comp[s, s] == s]
    e = idem[len(idem) // 2]
    left = np.array(sorted({int(x) for x in comp[e, :] if x >= 0}), dtype=np.int64)
    right = np.array(sorted({int(x) for x in comp[:, e] if x >= 0}), dtype=np.int64)
    mask = np.zeros(m, dtype=bool)
    mask[e] = True
    return {
        "assoc_violation": (comp,),
        "pseudo_inverses": (comp,),
        "principal_ideals": (comp,),
        "cocycle_violation": (comp, num, den),
        "sandwich_hits": (comp, left, right, mask),
        "trace_hits": (comp,),
    }


def _best(fn, args, repeat):
    times = []
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn(*args)
        times.append(time.perf_counter() - t0)
    return min(times)


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--repeat", type=int, default=3)
    ap.add_argument("--examples", nargs="*", default=["builtin:t:4", "builtin:partition:3:1/1"])
    args = ap.parse_args()
    if not kernels.NUMBA_AVAILABLE:
        print("numba not available; only the numpy backend can run")
    for spec in args.examples:
        c, a = builtin(spec)
        comp = np.ascontiguousarray(c.comp)
        print(f"{spec}: {c.size} morphisms")
        print(f"  {'kernel':<18}{'numpy [s]':>12}{'numba [s]':>12}{'speedup':>10}")
        for name, call_args in _cases(comp, a).items():
            t_np = _best(kernels.impl(name, "numpy"), call_args, args.repeat)
            if kernels.NUMBA_AVAILABLE:
                nb = kernels.impl(name, "numba")
                nb(*call_args)  # compile outside the timing
                t_nb = _best(nb, call_args, args.repeat)
                print(f"  {name:<18}{t_np:>12.4f}{t_nb:>12.4f}{t_np / max(t_nb, 1e-9):>9.1f}x")
            else:
                print(f"  {name:<18}{t_np:>12.4f}{'-':>12}{'-':>10}")


if __name__ == "__main__":
    main()
