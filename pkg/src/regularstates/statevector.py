"""Dense statevector reference simulator for graph states.

Amplitude index convention: qubit ``i`` is bit ``i`` of the basis-state index
(qubit 0 least significant).  Outcome strings list qubit 0 first, so the
string ``"10"`` on two qubits is index 1.
"""

from __future__ import annotations

import json
import os
from dataclasses import dataclass
from math import pi

import numpy as np

from .graph import Bipartition, Graph, GraphError, bits
from .transform import delete_vertex, local_complement

DEFAULT_ORACLE_LIMIT = 24


class OracleLimitError(GraphError):
    """The instance is too large for dense simulation."""


def oracle_limit() -> int:
    return int(os.environ.get("REGULARSTATES_ORACLE_LIMIT", DEFAULT_ORACLE_LIMIT))


def _check_limit(n: int, limit: int | None) -> None:
    limit = oracle_limit() if limit is None else limit
    if n > limit:
        raise OracleLimitError(
            f"n={n} exceeds the dense oracle limit {limit}; use the rankdp engine instead"
        )


# -- local rotations and functionals ------------------------------------------

def rotation_matrix(theta: float, phi: float) -> np.ndarray:
    """Single-qubit unitary U(theta, phi) with rows <0|U and <1|U."""
    c, s = np.cos(theta / 2), np.sin(theta / 2)
    e = np.exp(1j * phi)
    return np.array([[c, -s], [e * s, e * c]], dtype=complex)


@dataclass(frozen=True)
class LocalRotations:
    thetas: tuple[float, ...]
    phis: tuple[float, ...]

    def __post_init__(self):
        if len(self.thetas) != len(self.phis):
            raise GraphError("theta and phi lists must have equal length")
        if not np.all(np.isfinite(self.thetas + self.phis)):
            raise GraphError("rotation angles must be finite")

    @property
    def n(self) -> int:
        return len(self.thetas)

    @classmethod
    def identity(cls, n: int) -> LocalRotations:
        return cls((0.0,) * n, (0.0,) * n)

    @classmethod
    def random(cls, n: int, rng: np.random.Generator) -> LocalRotations:
        return cls(tuple(rng.uniform(0, 2 * pi, n)), tuple(rng.uniform(0, 2 * pi, n)))

    def matrices(self) -> list[np.ndarray]:
        return [rotation_matrix(t, p) for t, p in zip(self.thetas, self.phis)]

    def to_json(self) -> str:
        return json.dumps([{"theta": t, "phi": p} for t, p in zip(self.thetas, self.phis)])

    @classmethod
    def from_json(cls, text: str) -> LocalRotations:
        try:
            items = json.loads(text)
            return cls(tuple(float(d["theta"]) for d in items), tuple(float(d["phi"]) for d in items))
        except (json.JSONDecodeError, KeyError, TypeError, ValueError) as exc:
            raise GraphError(f"malformed rotations JSON: {exc}") from None


def parse_outcome(x: str | int | np.ndarray, n: int) -> np.ndarray:
    """Outcome as an array of n bits; accepts a qubit-0-first string or an index."""
    if isinstance(x, str):
        if len(x) != n or set(x) - {"0", "1"}:
            raise GraphError(f"outcome {x!r} is not a {n}-bit string")
        return np.array([int(ch) for ch in x], dtype=np.int8)
    if isinstance(x, (int, np.integer)):
        return np.array([(int(x) >> i) & 1 for i in range(n)], dtype=np.int8)
    arr = np.asarray(x, dtype=np.int8)
    if arr.shape != (n,):
        raise GraphError(f"outcome must have {n} bits")
    return arr


def format_outcome(index: int, n: int) -> str:
    return "".join(str((index >> i) & 1) for i in range(n))


def functional_from_rotations(rotations: LocalRotations, x) -> np.ndarray:
    """Rows <x_i| U_i stacked as an (n, 2) array of bra coefficients."""
    xs = parse_outcome(x, rotations.n)
    return np.array([m[b] for m, b in zip(rotations.matrices(), xs)], dtype=complex)


def conjugated_bra(theta: float, phi: float) -> np.ndarray:
    """The bra cos(theta/2) e^{-i phi} <0| + sin(theta/2) <1|."""
    return np.array([np.cos(theta / 2) * np.exp(-1j * phi), np.sin(theta / 2)], dtype=complex)


# -- state preparation ---------------------------------------------------------

def edge_parity_counts(g: Graph) -> np.ndarray:
    """Number of edges with both endpoints set, for every basis index."""
    idx = np.arange(1 << g.n, dtype=np.int64)
    count = np.zeros(1 << g.n, dtype=np.int32)
    for u, v in g.edges():
        count += ((idx >> u) & (idx >> v) & 1).astype(np.int32)
    return count


def build_graph_state(g: Graph, edge_phase: float = pi, limit: int | None = None) -> np.ndarray:
    """Amplitudes of prod_{edges} diag(1,1,1,e^{-i edge_phase}) |+>^n (CZ at pi)."""
    _check_limit(g.n, limit)
    count = edge_parity_counts(g)
    norm = 2.0 ** (-g.n / 2)
    if edge_phase == pi:
        return norm * np.where(count % 2, -1.0, 1.0).astype(complex)
    return norm * np.exp(-1j * edge_phase * count)


def _tensor(state: np.ndarray, n: int) -> np.ndarray:
    return state.reshape((2,) * n) if n else state.reshape(())


def _axis(q: int, n: int) -> int:
    return n - 1 - q


def apply_local(state: np.ndarray, mats, n: int) -> np.ndarray:
    """Apply one 2x2 matrix per qubit (``None`` skips a qubit)."""
    t = _tensor(state, n)
    for q, m in enumerate(mats):
        if m is None:
            continue
        ax = _axis(q, n)
        t = np.moveaxis(np.tensordot(m, t, axes=([1], [ax])), 0, ax)
    return t.reshape(-1)


def contract_functional(state: np.ndarray, f: np.ndarray, n: int) -> complex:
    """Inner product of the product bra ``f`` (rows (a_i, b_i)) with ``state``."""
    t = _tensor(state, n)
    for q in range(n - 1, -1, -1):
        # the leading axis is always the highest remaining qubit
        t = np.tensordot(f[q], t, axes=([0], [0]))
    return complex(t)


def amplitude(g: Graph, f=None, *, rotations: LocalRotations | None = None, x=None,
              edge_phase: float = pi, limit: int | None = None) -> complex:
    """<f|G>, with ``f`` an (n, 2) bra array or the rows <x|U of ``rotations``."""
    if f is None:
        if rotations is None or x is None:
            raise GraphError("amplitude needs a functional or rotations with an outcome")
        if rotations.n != g.n:
            raise GraphError(f"rotations cover {rotations.n} qubits, graph has {g.n}")
        f = functional_from_rotations(rotations, x)
    f = np.asarray(f, dtype=complex)
    if f.shape != (g.n, 2):
        raise GraphError(f"functional must have shape ({g.n}, 2), got {f.shape}")
    return contract_functional(build_graph_state(g, edge_phase, limit), f, g.n)


def probability(g: Graph, rotations: LocalRotations, x, edge_phase: float = pi, limit: int | None = None) -> float:
    return abs(amplitude(g, rotations=rotations, x=x, edge_phase=edge_phase, limit=limit)) ** 2


def rotated_state(g: Graph, rotations: LocalRotations, edge_phase: float = pi, limit: int | None = None) -> np.ndarray:
    if rotations.n != g.n:
        raise GraphError(f"rotations cover {rotations.n} qubits, graph has {g.n}")
    return apply_local(build_graph_state(g, edge_phase, limit), rotations.matrices(), g.n)


def distribution(g: Graph, rotations: LocalRotations, edge_phase: float = pi, limit: int | None = None) -> np.ndarray:
    """Outcome probabilities indexed by basis index."""
    p = np.abs(rotated_state(g, rotations, edge_phase, limit)) ** 2
    return p / p.sum()


def sample(g: Graph, rotations: LocalRotations, count: int, seed: int, limit: int | None = None) -> list[str]:
    p = distribution(g, rotations, limit=limit)
    rng = np.random.default_rng(seed)
    draws = rng.choice(len(p), size=count, p=p)
    return [format_outcome(int(i), g.n) for i in draws]


# -- entanglement ------------------------------------------------------------

def schmidt_coefficients(state: np.ndarray, n: int, side_a: int) -> np.ndarray:
    qa = bits(side_a)
    qb = [q for q in range(n) if not (side_a >> q) & 1]
    t = _tensor(state, n)
    t = np.transpose(t, [_axis(q, n) for q in qa] + [_axis(q, n) for q in qb])
    return np.linalg.svd(t.reshape(1 << len(qa), 1 << len(qb)), compute_uv=False)


def entanglement_entropy(g_or_state, p: Bipartition | int, n: int | None = None, limit: int | None = None) -> float:
    """Von Neumann entropy (bits) of side A; accepts a Graph or a raw state with ``n``."""
    if isinstance(g_or_state, Graph):
        n = g_or_state.n
        state = build_graph_state(g_or_state, limit=limit)
    else:
        state = np.asarray(g_or_state)
        if n is None:
            n = int(np.log2(state.size))
    part = p if isinstance(p, Bipartition) else Bipartition(n, p)
    part.require_proper()
    lam = schmidt_coefficients(state, n, part.side_a) ** 2
    lam = lam[lam > 1e-15]
    return float(-(lam * np.log2(lam)).sum())


# -- operational identities ------------------------------------------------------

_X = np.array([[0, 1], [1, 0]], dtype=complex)
_Z = np.array([[1, 0], [0, -1]], dtype=complex)
_I = np.eye(2, dtype=complex)


def lc_unitary_factors(g: Graph, v: int) -> list[np.ndarray | None]:
    """exp(-i pi/4 X_v) prod_{u in N(v)} exp(i pi/4 Z_u) as per-qubit factors."""
    mats: list[np.ndarray | None] = [None] * g.n
    mats[v] = np.cos(pi / 4) * _I - 1j * np.sin(pi / 4) * _X
    for u in g.neighbors(v):
        mats[u] = np.cos(pi / 4) * _I + 1j * np.sin(pi / 4) * _Z
    return mats


def check_lc_unitary(g: Graph, v: int | str, limit: int | None = None) -> float:
    """|<tau_v(G)| U_v |G>|, which is 1 when the Clifford identity holds."""
    v = g.index(v)
    psi = apply_local(build_graph_state(g, limit=limit), lc_unitary_factors(g, v), g.n)
    target = build_graph_state(local_complement(g, v), limit=limit)
    return float(abs(np.vdot(target, psi)))


def _insert_qubit(state_rest: np.ndarray, n: int, v: int, bit_state: np.ndarray) -> np.ndarray:
    """Tensor a one-qubit state into position ``v`` of an (n-1)-qubit state."""
    t = np.multiply.outer(bit_state, _tensor(state_rest, n - 1))
    return np.moveaxis(t, 0, _axis(v, n)).reshape(-1)


def check_deletion_projector(g: Graph, v: int | str, limit: int | None = None) -> float:
    """Largest norm mismatch of the two Z-measurement branch identities at ``v``."""
    v = g.index(v)
    n = g.n
    psi = build_graph_state(g, limit=limit)
    idx = np.arange(1 << n)
    on = (idx >> v) & 1
    h = build_graph_state(delete_vertex(g, v), limit=limit)
    plus = np.where(on == 0, psi, 0)
    minus = np.where(on == 1, psi, 0)
    zero = np.array([1, 0], dtype=complex)
    one = np.array([0, 1], dtype=complex)
    expect_plus = _insert_qubit(h, n, v, zero) / np.sqrt(2)
    rest = [u - (u > v) for u in g.neighbors(v)]
    zs = [None] * (n - 1)
    for u in rest:
        zs[u] = _Z
    h_z = apply_local(h, zs, n - 1) if n > 1 else h
    expect_minus = _insert_qubit(h_z, n, v, one) / np.sqrt(2)
    return float(max(np.linalg.norm(plus - expect_plus), np.linalg.norm(minus - expect_minus)))
