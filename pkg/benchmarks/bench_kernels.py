"""Time the compiled kernels against the pure-Python fallback.

Usage::

    python3 benchmarks/bench_kernels.py --n 8 10 12 --repeat 3

Both backends are run on the same random graphs and their outputs compared
before any timing is reported.
"""

from __future__ import annotations

import argparse
import time

import numpy as np

from regularstates import _pykernels
from regularstates.graph import make_graph

try:
    from regularstates import _ckernels
except ImportError:
    _ckernels = None


def random_rows(n: int, seed: int) -> np.ndarray:
    rng = np.random.default_rng(seed)
    edges = [(i, j) for i in range(n) for j in range(i + 1, n) if rng.random() < 0.5]
    return np.array(make_graph(n, edges).rows, dtype=np.uint64)


def best_of(fn, repeat: int) -> float:
    times = []
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn()
        times.append(time.perf_counter() - t0)
    return min(times)


def main(argv=None) -> int:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--n", type=int, nargs="+", default=[8, 10, 12])
    ap.add_argument("--repeat", type=int, default=3)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args(argv)

    if _ckernels is None:
        print("compiled extension not built; only the Python timings are shown")
    print(f"{'kernel':<14}{'n':>4}{'python s':>12}{'cython s':>12}{'speedup':>10}")
    for n in args.n:
        rows = random_rows(n, args.seed + n)
        cr = _pykernels.all_cut_ranks(rows, n)
        cases = [
            ("cut_ranks", lambda m: m.all_cut_ranks(rows, n)),
            ("width_dp", lambda m: m.rank_width_dp(cr, n)),
        ]
        for name, call in cases:
            t_py = best_of(lambda: call(_pykernels), args.repeat)
            if _ckernels is None:
                print(f"{name:<14}{n:>4}{t_py:>12.4f}{'-':>12}{'-':>10}")
                continue
            ref, got = call(_pykernels), call(_ckernels)
            ref = ref if isinstance(ref, tuple) else (ref,)
            got = got if isinstance(got, tuple) else (got,)
            if not np.array_equal(ref[0], got[0]):
                raise SystemExit(f"backend mismatch in {name} at n={n}")
            t_c = best_of(lambda: call(_ckernels), args.repeat)
            print(f"{name:<14}{n:>4}{t_py:>12.4f}{t_c:>12.4f}{t_py / max(t_c, 1e-9):>9.1f}x")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
