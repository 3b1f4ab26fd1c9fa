"""Independent reference implementations used as test oracles.

Nothing here imports the package's linear algebra or simulators; each routine
is the slowest obvious way to get the answer.
"""

from __future__ import annotations

import itertools

import numpy as np


def adjacency(n: int, edges) -> np.ndarray:
    a = np.zeros((n, n), dtype=np.uint8)
    for u, v in edges:
        a[u, v] = a[v, u] = 1
    return a


def rank_mod2(mat) -> int:
    """Dense Gaussian elimination over GF(2) on a uint8 matrix."""
    m = np.array(mat, dtype=np.uint8) & 1
    if m.size == 0:
        return 0
    rows, cols = m.shape
    r = 0
    for c in range(cols):
        hits = np.nonzero(m[r:, c])[0]
        if hits.size == 0:
            continue
        p = r + hits[0]
        m[[r, p]] = m[[p, r]]
        below = np.nonzero(m[:, c])[0]
        for i in below:
            if i != r:
                m[i] ^= m[r]
        r += 1
        if r == rows:
            break
    return r


def cut_rank_dense(a: np.ndarray, side: list[int]) -> int:
    n = a.shape[0]
    other = [v for v in range(n) if v not in side]
    if not side or not other:
        return 0
    return rank_mod2(a[np.ix_(side, other)])


def lc_dense(a: np.ndarray, v: int) -> np.ndarray:
    """Local complementation as A + a_v a_v^T (mod 2) with the diagonal cleared."""
    col = a[:, v].astype(np.uint8)
    out = (a ^ np.outer(col, col)).astype(np.uint8)
    np.fill_diagonal(out, 0)
    return out


def unrooted_binary_trees(n: int):
    """Every unrooted binary tree with leaves 0..n-1, as edge lists.

    Grown by inserting leaf k into each edge of every tree on k leaves;
    internal nodes are numbered from n.
    """
    if n == 1:
        yield []
        return
    if n == 2:
        yield [(0, 1)]
        return

    def grow(edges, k, nxt):
        if k == n:
            yield edges
            return
        for i, (a, b) in enumerate(edges):
            mid = nxt
            new = edges[:i] + edges[i + 1 :] + [(a, mid), (mid, b), (mid, k)]
            yield from grow(new, k + 1, nxt + 1)

    yield from grow([(n, 0), (n, 1), (n, 2)], 3, n + 1)


def _leaves_beyond(edges, a, b, n):
    adj: dict[int, list[int]] = {}
    for x, y in edges:
        adj.setdefault(x, []).append(y)
        adj.setdefault(y, []).append(x)
    seen, stack, out = {a, b}, [b], []
    while stack:
        x = stack.pop()
        if x < n:
            out.append(x)
        for y in adj[x]:
            if y not in seen:
                seen.add(y)
                stack.append(y)
    return out


def brute_rank_width(n: int, edges) -> int:
    """Minimum over all decomposition trees of the maximum edge cut rank."""
    a = adjacency(n, edges)
    if n <= 1:
        return 0
    best = None
    for tree in unrooted_binary_trees(n):
        w = max(cut_rank_dense(a, _leaves_beyond(tree, x, y, n)) for x, y in tree)
        best = w if best is None else min(best, w)
    return best


def brute_amplitude(n: int, edges, f) -> complex:
    """<f|G> by summing over all 2^n computational basis strings."""
    total = 0j
    for z in itertools.product((0, 1), repeat=n):
        sign = (-1) ** sum(z[u] * z[v] for u, v in edges)
        term = complex(sign)
        for q in range(n):
            term *= f[q][z[q]]
        total += term
    return total / 2 ** (n / 2)


def u_matrix(theta: float, phi: float) -> np.ndarray:
    c, s = np.cos(theta / 2), np.sin(theta / 2)
    return np.array([[c, -s], [np.exp(1j * phi) * s, np.exp(1j * phi) * c]])


def brute_probability(n: int, edges, thetas, phis, x: str) -> float:
    f = [u_matrix(t, p)[int(b)] for t, p, b in zip(thetas, phis, x)]
    return abs(brute_amplitude(n, edges, f)) ** 2


def bipartite_realizable_pairs(p: int, q: int) -> set[tuple[tuple[int, ...], tuple[int, ...]]]:
    """All (row sums, column sums) of p x q 0/1 matrices."""
    out = set()
    for bitsv in itertools.product((0, 1), repeat=p * q):
        m = np.array(bitsv, dtype=int).reshape(p, q)
        out.add((tuple(m.sum(axis=1)), tuple(m.sum(axis=0))))
    return out


def tv_distance(p: np.ndarray, q: np.ndarray) -> float:
    return 0.5 * float(np.abs(np.asarray(p) - np.asarray(q)).sum())
