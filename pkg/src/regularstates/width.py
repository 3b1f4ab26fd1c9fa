"""Cut rank, rank decompositions and rank width.

A rank decomposition is an unrooted tree whose leaves are the vertices; every
tree edge splits the vertex set in two and its width is the cut rank of that
split.  Internal nodes have degree 3 in everything built here; validation
accepts internal degree 2 or 3.
"""

from __future__ import annotations

import os
from dataclasses import dataclass, field

import numpy as np

from . import kernels
from .gf2 import gf2_rank
from .graph import Graph, GraphError, bits, complement

DEFAULT_EXACT_LIMIT = 16


class WidthError(GraphError):
    """Invalid decomposition or an instance beyond the exact limit."""


def exact_limit() -> int:
    return int(os.environ.get("REGULARSTATES_EXACT_LIMIT", DEFAULT_EXACT_LIMIT))


def _cut_rank(rows: tuple[int, ...], subset: int, full: int) -> int:
    comp = full ^ subset
    return gf2_rank([rows[v] & comp for v in bits(subset)])


def cut_rank(g: Graph, subset: int) -> int:
    """GF(2) rank of the adjacency block between ``subset`` and its complement."""
    full = g.full_mask
    if subset <= 0 or subset >= full or subset & ~full:
        raise WidthError("cut rank needs a proper nonempty vertex subset")
    # rank(M) = rank(M^T): eliminate over the smaller side
    if (full ^ subset).bit_count() < subset.bit_count():
        subset = full ^ subset
    return _cut_rank(g.rows, subset, full)


@dataclass
class RankDecomposition:
    """Tree edges over integer nodes plus the leaf -> vertex id map."""

    n: int
    edges: list[tuple[int, int]]
    leaf_map: dict[int, int]
    widths: list[int] = field(default_factory=list)

    @property
    def width(self) -> int:
        return max(self.widths, default=0)

    def adjacency(self) -> dict[int, list[int]]:
        adj: dict[int, list[int]] = {v: [] for v in self.leaf_map}
        for a, b in self.edges:
            adj.setdefault(a, []).append(b)
            adj.setdefault(b, []).append(a)
        return adj

    def validate(self, g: Graph | None = None) -> None:
        if g is not None and g.n != self.n:
            raise WidthError(f"decomposition has {self.n} leaves, graph has {g.n} vertices")
        if sorted(self.leaf_map.values()) != list(range(self.n)):
            raise WidthError("leaf map is not a bijection onto the vertices")
        adj = self.adjacency()
        nodes = list(adj)
        if len(self.edges) != len(nodes) - 1:
            raise WidthError("decomposition is not a tree (edge count)")
        seen = {nodes[0]}
        stack = [nodes[0]]
        while stack:
            x = stack.pop()
            for y in adj[x]:
                if y not in seen:
                    seen.add(y)
                    stack.append(y)
        if len(seen) != len(nodes):
            raise WidthError("decomposition tree is disconnected")
        for x, nb in adj.items():
            if x in self.leaf_map:
                if len(nb) > 1:
                    raise WidthError(f"leaf node {x} has degree {len(nb)}")
            elif not 2 <= len(nb) <= 3:
                raise WidthError(f"internal node {x} has degree {len(nb)}")

    def edge_masks(self) -> list[int]:
        """For each edge (a, b): the vertex mask of leaves on b's side."""
        adj = self.adjacency()
        memo: dict[tuple[int, int], int] = {}

        def side(parent: int, node: int) -> int:
            key = (parent, node)
            if key in memo:
                return memo[key]
            stack = [(parent, node)]
            order = []
            while stack:
                p, x = stack.pop()
                order.append((p, x))
                stack.extend((x, y) for y in adj[x] if y != p and (x, y) not in memo)
            for p, x in reversed(order):
                m = 1 << self.leaf_map[x] if x in self.leaf_map else 0
                for y in adj[x]:
                    if y != p:
                        m |= memo[(x, y)]
                memo[(p, x)] = m
            return memo[key]

        return [side(a, b) for a, b in self.edges]

    def compute_widths(self, g: Graph) -> list[int]:
        full = g.full_mask
        return [_cut_rank(g.rows, m, full) if 0 < m < full else 0 for m in self.edge_masks()]

    def to_json_obj(self, g: Graph | None = None) -> dict:
        name = (lambda v: g.labels[v]) if g is not None else str
        return {
            "tree": [list(e) for e in self.edges],
            "leaf_map": {str(leaf): name(v) for leaf, v in sorted(self.leaf_map.items())},
            "widths": list(self.widths),
        }

    @classmethod
    def from_json_obj(cls, obj: dict, g: Graph) -> RankDecomposition:
        try:
            edges = [(int(a), int(b)) for a, b in obj["tree"]]
            leaf_map = {int(k): g.index(str(v)) for k, v in obj["leaf_map"].items()}
        except (KeyError, TypeError, ValueError) as exc:
            raise WidthError(f"malformed decomposition JSON: {exc}") from None
        d = cls(g.n, edges, leaf_map)
        d.validate(g)
        d.widths = d.compute_widths(g)
        return d


@dataclass
class WidthReport:
    value: int
    decomposition: RankDecomposition
    exact: bool


def decomposition_from_splits(n: int, split_of) -> RankDecomposition:
    """Unrooted tree from a recursive binary splitting of the full vertex set.

    ``split_of(mask)`` returns one part of a split of ``mask`` (|mask| >= 2).
    Leaf node ids equal vertex ids; internal nodes are numbered from ``n``.
    """
    leaf_map = {v: v for v in range(n)}
    edges: list[tuple[int, int]] = []
    counter = [n]

    def build(mask: int) -> int:
        if mask & (mask - 1) == 0:
            return mask.bit_length() - 1
        s1 = split_of(mask)
        left, right = build(s1), build(mask ^ s1)
        node = counter[0]
        counter[0] += 1
        edges.append((node, left))
        edges.append((node, right))
        return node

    full = (1 << n) - 1
    if n >= 2:
        s1 = split_of(full)
        # the root split becomes a single tree edge
        edges.append((build(s1), build(full ^ s1)))
    return RankDecomposition(n, edges, leaf_map)


def _finish(g: Graph, d: RankDecomposition, exact: bool) -> WidthReport:
    d.validate(g)
    d.widths = d.compute_widths(g)
    return WidthReport(d.width, d, exact)


def exact_rank_width(g: Graph, limit: int | None = None) -> WidthReport:
    """Optimal rank decomposition by dynamic programming over vertex subsets."""
    limit = exact_limit() if limit is None else limit
    if g.n > limit:
        raise WidthError(f"n={g.n} exceeds the exact limit {limit}; use heuristic_rank_decomposition")
    if g.n == 0:
        return WidthReport(0, RankDecomposition(0, [], {}), True)
    cr = kernels.all_cut_ranks(np.array(g.rows, dtype=np.uint64), g.n)
    f, split = kernels.rank_width_dp(cr, g.n)
    d = decomposition_from_splits(g.n, lambda mask: int(split[mask]))
    report = _finish(g, d, True)
    if report.value != int(f[-1]):
        raise AssertionError("DP value and witness width disagree")
    return report


# -- heuristics -----------------------------------------------------------------

class _Ranker:
    """Memoised cut ranks for one graph."""

    def __init__(self, g: Graph):
        self.g = g
        self.full = g.full_mask
        self.cache: dict[int, int] = {}

    def __call__(self, mask: int) -> int:
        if mask == 0 or mask == self.full:
            return 0
        key = min(mask, self.full ^ mask)
        hit = self.cache.get(key)
        if hit is None:
            small = mask if mask.bit_count() <= (self.full ^ mask).bit_count() else self.full ^ mask
            hit = self.cache[key] = _cut_rank(self.g.rows, small, self.full)
        return hit


def _grow(g: Graph, rank: _Ranker, mask: int, seed: int, stop: int) -> list[int]:
    """Greedy order inside ``mask`` from ``seed``: each step adds the vertex that keeps the cut rank lowest."""
    part = 1 << seed
    prefixes = [part]
    remaining = mask ^ part
    while remaining and part.bit_count() < stop:
        best = None
        for u in bits(remaining):
            cand = part | (1 << u)
            key = (rank(cand), -(g.rows[u] & part).bit_count(), u)
            if best is None or key < best[0]:
                best = (key, cand, u)
        part = best[1]
        remaining ^= 1 << best[2]
        prefixes.append(part)
    return prefixes


def _seeds(g: Graph, mask: int, count: int, rng: np.random.Generator | None) -> list[int]:
    verts = bits(mask)
    if rng is not None:
        return [int(v) for v in rng.permutation(verts)[:count]]
    by_degree = sorted(verts, key=lambda v: ((g.rows[v] & mask).bit_count(), v))
    picks = [by_degree[0], by_degree[-1], verts[0], verts[len(verts) // 2]]
    out = []
    for v in picks:
        if v not in out:
            out.append(v)
    return out[:count]


def _bisect(g: Graph, rank: _Ranker, mask: int, n_seeds: int, rng) -> int:
    size = mask.bit_count()
    if size == 2:
        return mask & -mask
    lo, hi = max(1, -(-size // 3)), max(1, (2 * size) // 3)
    best = None
    for seed in _seeds(g, mask, n_seeds, rng):
        for part in _grow(g, rank, mask, seed, hi):
            k = part.bit_count()
            if lo <= k <= hi:
                r1, r2 = rank(part), rank(mask ^ part)
                key = (max(r1, r2), r1 + r2, abs(size - 2 * k), part)
                if best is None or key < best[0]:
                    best = (key, part)
    return best[1]


def bisection_decomposition(g: Graph, n_seeds: int = 4, rng=None) -> RankDecomposition:
    rank = _Ranker(g)
    return decomposition_from_splits(g.n, lambda mask: _bisect(g, rank, mask, n_seeds, rng))


def linear_decomposition(n: int, order: list[int]) -> RankDecomposition:
    """Caterpillar decomposition whose spine visits vertices in ``order``."""
    if sorted(order) != list(range(n)):
        raise WidthError("order must be a permutation of the vertices")
    if n < 2:
        return RankDecomposition(n, [], {v: v for v in range(n)})
    if n == 2:
        return RankDecomposition(n, [(order[0], order[1])], {v: v for v in range(n)})
    edges = []
    spine = list(range(n, 2 * n - 2))
    edges.append((spine[0], order[0]))
    for i, node in enumerate(spine):
        edges.append((node, order[i + 1]))
        if i + 1 < len(spine):
            edges.append((node, spine[i + 1]))
    edges.append((spine[-1], order[-1]))
    return RankDecomposition(n, edges, {v: v for v in range(n)})


def greedy_linear_order(g: Graph, start: int = 0) -> list[int]:
    rank = _Ranker(g)
    prefixes = _grow(g, rank, g.full_mask, start, g.n)
    return [(b ^ a).bit_length() - 1 for a, b in zip([0] + prefixes[:-1], prefixes)]


def _score(widths: list[int]) -> tuple[int, int, int]:
    top = max(widths, default=0)
    return top, widths.count(top), sum(widths)


def _swap_descent(g: Graph, d: RankDecomposition, max_passes: int = 3) -> RankDecomposition:
    """Swap the vertices at two leaves while that lowers (width, #edges at width, total)."""
    d.widths = d.compute_widths(g)
    best = _score(d.widths)
    leaves = sorted(d.leaf_map)
    for _ in range(max_passes):
        improved = False
        for i, a in enumerate(leaves):
            for b in leaves[i + 1 :]:
                lm = d.leaf_map
                lm[a], lm[b] = lm[b], lm[a]
                widths = d.compute_widths(g)
                score = _score(widths)
                if score < best:
                    best, d.widths, improved = score, widths, True
                else:
                    lm[a], lm[b] = lm[b], lm[a]
        if not improved:
            break
    return d


def heuristic_rank_decomposition(g: Graph, effort: int = 1, seed: int = 0) -> WidthReport:
    """Upper-bound witness: recursive bisection and greedy caterpillars, then leaf-swap descent.

    effort 0: bisection and caterpillar only; 1: plus swap descent (n <= 40);
    2: plus seeded random restarts.
    """
    if g.n <= 2:
        d = decomposition_from_splits(g.n, lambda mask: mask & -mask)
        return _finish(g, d, False)
    candidates = []
    # cut ranks of g and its complement differ by at most one, so a tree that
    # suits the sparser of the two is a good guess for both
    for h in (g, complement(g)):
        candidates.append(bisection_decomposition(h))
        for start in _seeds(h, h.full_mask, 2, None):
            candidates.append(linear_decomposition(h.n, greedy_linear_order(h, start)))
        if effort >= 2:
            rng = np.random.default_rng(seed)
            for _ in range(4):
                candidates.append(bisection_decomposition(h, n_seeds=2, rng=rng))
    for d in candidates:
        d.widths = d.compute_widths(g)
    candidates.sort(key=lambda d: _score(d.widths))
    best = candidates[0]
    if effort >= 1 and g.n <= 40:
        best = _swap_descent(g, best)
    return _finish(g, best, False)


def entanglement_width(g: Graph, exact_limit_n: int | None = None, effort: int = 1, seed: int = 0) -> WidthReport:
    """Entanglement width of |G> in bits: its rank width (exact when the DP applies)."""
    limit = exact_limit() if exact_limit_n is None else exact_limit_n
    if g.n <= limit:
        return exact_rank_width(g, limit)
    return heuristic_rank_decomposition(g, effort, seed)
