"""Pure-Python versions of the hot loops (used when the extension is absent)."""

from __future__ import annotations

import numpy as np


def _rank(vecs: list[int]) -> int:
    pivots: dict[int, int] = {}
    for r in vecs:
        while r:
            top = r.bit_length() - 1
            p = pivots.get(top)
            if p is None:
                pivots[top] = r
                break
            r ^= p
    return len(pivots)


def all_cut_ranks(rows: np.ndarray, n: int) -> np.ndarray:
    """Cut rank of every vertex subset, indexed by bit mask."""
    size = 1 << n
    full = size - 1
    rows = [int(r) for r in rows]
    out = np.zeros(size, dtype=np.int8)
    for s in range(1, size >> 1 if n else 1):
        comp = full ^ s
        sub = []
        m = s
        while m:
            low = m & -m
            sub.append(rows[low.bit_length() - 1] & comp)
            m ^= low
        out[s] = out[comp] = _rank(sub)
    return out


def rank_width_dp(cut_ranks: np.ndarray, n: int) -> tuple[np.ndarray, np.ndarray]:
    """Memoised minimum width over rooted binary trees for every subset.

    Returns ``(f, split)`` where ``split[S]`` is a part ``S1`` of an optimal
    split of ``S`` (zero for singletons).  ``f[full]`` is the rank width.
    """
    size = 1 << n
    cr = cut_ranks.tolist()
    f = [0] * size
    split = [0] * size
    for s in range(1, size):
        low = s & -s
        lb = cr[s] if s != size - 1 else 0
        if s == low:
            f[s] = lb
            continue
        rest = s ^ low
        best = n + 1
        best_sub = 0
        sub = (rest - 1) & rest
        while True:
            s1 = low | sub
            a = f[s1]
            b = f[s ^ s1]
            v = a if a > b else b
            if v < best:
                best = v
                best_sub = s1
                if best <= lb:
                    break
            if sub == 0:
                break
            sub = (sub - 1) & rest
        f[s] = lb if lb > best else best
        split[s] = best_sub
    return np.asarray(f, dtype=np.int8), np.asarray(split, dtype=np.int64)
