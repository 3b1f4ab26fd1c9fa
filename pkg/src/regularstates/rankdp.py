"""Amplitudes, marginals and sampling by dynamic programming over a rank decomposition.

For a vertex set S on one side of a tree edge, the phase ``(-1)^{z_S^T A z_out}``
that couples S to the rest only depends on the row vector ``z_S^T A[S, out]``,
which lives in the row space of the cut matrix.  Its coordinates in a basis of
pivot rows (the *signature*, ``r = cut rank`` bits) are all the outside needs,
so each tree edge carries a table of ``2^r`` accumulators.  Merging two sides A
and B multiplies their tables, applies ``(-1)^{s_A^T K s_B}`` with
``K = A[pivots_A, pivots_B]``, and re-expresses the combined row vector in the
parent's pivot basis.

The same DP run on two copies at once (bra and ket signatures side by side)
gives marginal probabilities, which drive exact chain-rule sampling.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .gf2 import RowBasis
from .graph import Graph, GraphError, bits
from .statevector import LocalRotations, functional_from_rotations, format_outcome
from .width import RankDecomposition, WidthError


class SamplingError(GraphError):
    """A conditional probability underflowed during chain-rule sampling."""


@dataclass
class DPStats:
    merges: int = 0
    live: int = 0
    peak_live: int = 0
    max_table: int = 0
    tables: list[int] = field(default_factory=list)

    def alloc(self, size: int) -> None:
        self.live += size
        self.tables.append(size)
        self.max_table = max(self.max_table, size)
        self.peak_live = max(self.peak_live, self.live)

    def free(self, size: int) -> None:
        self.live -= size


@dataclass
class _Side:
    mask: int
    pivots: list[int]
    basis: RowBasis
    table: np.ndarray
    counted: bool  # produced by a merge, tracked in the stats

    @property
    def r(self) -> int:
        return len(self.pivots)


def _side_basis(g: Graph, mask: int) -> RowBasis:
    comp = g.full_mask ^ mask
    basis = RowBasis()
    for u in bits(mask):
        basis.add(g.rows[u] & comp, tag=u)
    return basis


def _leaf(g: Graph, v: int, weight: np.ndarray, copies: int) -> _Side:
    basis = _side_basis(g, 1 << v)
    if basis.rank:
        table = weight.reshape(-1) if copies == 1 else weight.T.reshape(-1)
    else:
        table = np.array([weight.sum()], dtype=complex)
    return _Side(1 << v, list(basis.members), basis, np.asarray(table, dtype=complex), False)


def _linear_images(images: list[int], r: int) -> np.ndarray:
    """Values of the GF(2) linear map with the given basis images on all 2^r inputs."""
    out = np.zeros(1 << r, dtype=np.int64)
    for i, img in enumerate(images):
        half = 1 << i
        out[half : 2 * half] = out[:half] ^ img
    return out


def _per_copy(r: int, copies: int) -> list[np.ndarray]:
    idx = np.arange(1 << (copies * r), dtype=np.int64)
    low = (1 << r) - 1
    return [(idx >> (k * r)) & low for k in range(copies)]


def _merge(g: Graph, a: _Side, b: _Side, copies: int, stats: DPStats) -> _Side:
    mask = a.mask | b.mask
    comp = g.full_mask ^ mask
    basis = _side_basis(g, mask)
    r = basis.rank
    # crossing block between the two pivot sets, as columns over a's pivots
    kcols = [sum(1 << i for i, pa in enumerate(a.pivots) if g.has_edge(pa, pb)) for pb in b.pivots]
    kb = _linear_images(kcols, b.r)
    ya = _linear_images([basis.coords(g.rows[u] & comp) for u in a.pivots], a.r)
    yb = _linear_images([basis.coords(g.rows[u] & comp) for u in b.pivots], b.r)

    sa_list, sb_list = _per_copy(a.r, copies), _per_copy(b.r, copies)
    parity = np.zeros((sa_list[0].size, sb_list[0].size), dtype=np.int64)
    target = np.zeros_like(parity)
    for k, (sa, sb) in enumerate(zip(sa_list, sb_list)):
        parity += np.bitwise_count(sa[:, None] & kb[sb][None, :])
        target ^= (ya[sa] << (k * r))[:, None] ^ (yb[sb] << (k * r))[None, :]
    prod = np.multiply.outer(a.table, b.table)
    prod = np.where(parity & 1, -prod, prod).ravel()
    size = 1 << (copies * r)
    flat = target.ravel()
    table = np.bincount(flat, weights=prod.real, minlength=size) + 1j * np.bincount(
        flat, weights=prod.imag, minlength=size
    )
    stats.merges += 1
    stats.alloc(size)
    for child in (a, b):
        if child.counted:
            stats.free(child.table.size)
    return _Side(mask, list(basis.members), basis, table, True)


def contract(g: Graph, d: RankDecomposition, weights: list[np.ndarray], copies: int = 1,
             stats: DPStats | None = None) -> complex:
    """Sum over z (and z' when copies=2) of the product weights times graph-state signs.

    ``weights[v]`` has shape (2,) for one copy or (2, 2) indexed [z, z'] for two.
    The result carries the 2^{-n/2} normalisation of each copy.
    """
    d.validate(g)
    stats = DPStats() if stats is None else stats
    n = g.n
    if n == 0:
        return 1.0 + 0j
    if n == 1:
        return complex(np.asarray(weights[0]).sum()) * 2.0 ** (-copies / 2)
    adj = d.adjacency()
    leaf_of = {v: leaf for leaf, v in d.leaf_map.items()}
    root_leaf = leaf_of[0]
    (top,) = adj[root_leaf]

    done: dict[int, _Side] = {}
    stack = [(top, root_leaf, False)]
    while stack:
        node, parent, expanded = stack.pop()
        if node in d.leaf_map:
            v = d.leaf_map[node]
            done[node] = _leaf(g, v, np.asarray(weights[v], dtype=complex), copies)
            continue
        children = [c for c in adj[node] if c != parent]
        if not expanded:
            stack.append((node, parent, True))
            stack.extend((c, node, False) for c in children)
            continue
        acc = done.pop(children[0])
        for c in children[1:]:
            acc = _merge(g, acc, done.pop(c), copies, stats)
        done[node] = acc
    side = done.pop(top)
    root = _merge(g, side, _leaf(g, 0, np.asarray(weights[0], dtype=complex), copies), copies, stats)
    if root.table.size != 1:
        raise WidthError("root merge did not close all signatures")
    return complex(root.table[0]) * 2.0 ** (-copies * n / 2)


def amplitude_via_decomposition(g: Graph, d: RankDecomposition, f, stats: DPStats | None = None) -> complex:
    f = np.asarray(f, dtype=complex)
    if f.shape != (g.n, 2):
        raise GraphError(f"functional must have shape ({g.n}, 2), got {f.shape}")
    return contract(g, d, list(f), 1, stats)


def probability_via_decomposition(g: Graph, d: RankDecomposition, rotations: LocalRotations, x) -> float:
    if rotations.n != g.n:
        raise GraphError(f"rotations cover {rotations.n} qubits, graph has {g.n}")
    return abs(amplitude_via_decomposition(g, d, functional_from_rotations(rotations, x))) ** 2


def marginal_weights(rotations: LocalRotations, prefix: str) -> list[np.ndarray]:
    """Per-qubit [z, z'] weights of U^dag P U for the measured prefix, identity elsewhere."""
    mats = rotations.matrices()
    out = []
    for q, u in enumerate(mats):
        if q < len(prefix):
            row = u[int(prefix[q])]
            out.append(np.outer(row.conj(), row))
        else:
            out.append(np.eye(2, dtype=complex))
    return out


def marginal_probability(g: Graph, d: RankDecomposition, rotations: LocalRotations, prefix: str,
                         stats: DPStats | None = None) -> float:
    """Probability that qubits 0..len(prefix)-1 read ``prefix`` (qubit 0 first)."""
    if rotations.n != g.n:
        raise GraphError(f"rotations cover {rotations.n} qubits, graph has {g.n}")
    if len(prefix) > g.n or set(prefix) - {"0", "1"}:
        raise GraphError(f"prefix {prefix!r} is not a bit string of length <= {g.n}")
    if not prefix:
        return 1.0
    return contract(g, d, marginal_weights(rotations, prefix), 2, stats).real


def marginal_dense(g: Graph, rotations: LocalRotations, prefix: str) -> float:
    """Same quantity by summing the dense outcome distribution."""
    from .statevector import distribution

    p = distribution(g, rotations)
    idx = np.arange(p.size)
    keep = np.ones(p.size, dtype=bool)
    for q, ch in enumerate(prefix):
        keep &= ((idx >> q) & 1) == int(ch)
    return float(p[keep].sum())


def sample_via_chain(g: Graph, d: RankDecomposition, rotations: LocalRotations, count: int, seed: int,
                     floor: float = 1e-300) -> list[str]:
    """Exact samples drawn qubit by qubit (ascending ids) from conditional marginals."""
    rng = np.random.default_rng(seed)
    memo: dict[str, float] = {"": 1.0}

    def marg(prefix: str) -> float:
        hit = memo.get(prefix)
        if hit is None:
            hit = memo[prefix] = max(marginal_probability(g, d, rotations, prefix), 0.0)
        return hit

    out = []
    for _ in range(count):
        prefix = ""
        for _q in range(g.n):
            denom = marg(prefix)
            if denom < floor:
                raise SamplingError(f"marginal of prefix {prefix!r} underflowed ({denom:.3g})")
            p0 = min(marg(prefix + "0") / denom, 1.0)
            prefix += "0" if rng.random() < p0 else "1"
        out.append(prefix)
    return out


def outcome_strings(n: int) -> list[str]:
    return [format_outcome(i, n) for i in range(1 << n)]
