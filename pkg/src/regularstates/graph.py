"""Simple undirected graphs with bit-packed adjacency rows.

Row ``i`` of the adjacency is a Python int whose bit ``j`` is set iff ``i`` and
``j`` are adjacent, so GF(2) manipulations of cut matrices are plain integer
xor/and operations.  Every vertex carries a string label which survives
deletion of other vertices; ids are always the contiguous range ``0..n-1``.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np


class GraphError(ValueError):
    """Raised for malformed graphs, bad vertex references and parse errors."""


@dataclass(frozen=True)
class Graph:
    n: int
    rows: tuple[int, ...]
    labels: tuple[str, ...]

    def __post_init__(self):
        if len(self.rows) != self.n or len(self.labels) != self.n:
            raise GraphError("rows and labels must both have length n")
        if len(set(self.labels)) != self.n:
            raise GraphError("vertex labels must be unique")

    # -- basic queries -------------------------------------------------
    def has_edge(self, u: int, v: int) -> bool:
        return bool((self.rows[u] >> v) & 1)

    def neighbors(self, v: int) -> list[int]:
        return bits(self.rows[v])

    def degree(self, v: int) -> int:
        return self.rows[v].bit_count()

    def degrees(self) -> list[int]:
        return [r.bit_count() for r in self.rows]

    @property
    def m(self) -> int:
        return sum(self.degrees()) // 2

    def edges(self) -> list[tuple[int, int]]:
        """Edges ``(u, v)`` with ``u < v`` in lexicographic order."""
        return [(u, v) for u in range(self.n) for v in bits(self.rows[u] >> (u + 1) << (u + 1))]

    @property
    def full_mask(self) -> int:
        return (1 << self.n) - 1

    def index(self, vertex: int | str) -> int:
        """Resolve a vertex given either as an id or as a label."""
        if isinstance(vertex, str):
            try:
                return self.labels.index(vertex)
            except ValueError:
                raise GraphError(f"no vertex labelled {vertex!r}") from None
        if isinstance(vertex, (int, np.integer)) and 0 <= vertex < self.n:
            return int(vertex)
        raise GraphError(f"vertex {vertex!r} not in graph with n={self.n}")

    def label_edges(self) -> set[frozenset[str]]:
        """Edge set expressed through labels; used for label-wise equality."""
        return {frozenset((self.labels[u], self.labels[v])) for u, v in self.edges()}

    def same_labelled(self, other: Graph) -> bool:
        """True iff both graphs have the same label set and the same labelled edges."""
        return set(self.labels) == set(other.labels) and self.label_edges() == other.label_edges()

    def adjacency_matrix(self) -> np.ndarray:
        a = np.zeros((self.n, self.n), dtype=np.uint8)
        for u, v in self.edges():
            a[u, v] = a[v, u] = 1
        return a

    def relabel(self, labels: Sequence[str]) -> Graph:
        return Graph(self.n, self.rows, tuple(labels))

    def validate(self) -> None:
        """Debug check of symmetry and an empty diagonal."""
        for i, r in enumerate(self.rows):
            if r >> self.n:
                raise GraphError(f"row {i} has bits beyond n")
            if (r >> i) & 1:
                raise GraphError(f"self-loop at {i}")
            for j in bits(r):
                if not (self.rows[j] >> i) & 1:
                    raise GraphError(f"asymmetric adjacency at ({i}, {j})")

    def __repr__(self) -> str:
        return f"Graph(n={self.n}, m={self.m})"


def bits(mask: int) -> list[int]:
    """Indices of set bits, ascending."""
    out = []
    while mask:
        low = mask & -mask
        out.append(low.bit_length() - 1)
        mask ^= low
    return out


def to_mask(vertices: Iterable[int]) -> int:
    mask = 0
    for v in vertices:
        mask |= 1 << v
    return mask


def make_graph(n: int, edges: Iterable[Sequence[int]], labels: Sequence[str] | None = None) -> Graph:
    """Build a graph from an edge list; repeated pairs collapse to one edge."""
    if n < 0:
        raise GraphError("vertex count must be non-negative")
    rows = [0] * n
    for pair in edges:
        u, v = (int(x) for x in pair)
        if not (0 <= u < n and 0 <= v < n):
            raise GraphError(f"edge ({u}, {v}) has an endpoint outside 0..{n - 1}")
        if u == v:
            raise GraphError(f"self-loop ({u}, {v}) not allowed")
        rows[u] |= 1 << v
        rows[v] |= 1 << u
    if labels is None:
        labels = [str(i) for i in range(n)]
    return Graph(n, tuple(rows), tuple(str(s) for s in labels))


def complete_graph(n: int) -> Graph:
    full = (1 << n) - 1
    return Graph(n, tuple(full ^ (1 << i) for i in range(n)), tuple(str(i) for i in range(n)))


def empty_graph(n: int) -> Graph:
    return make_graph(n, [])


def cycle_graph(n: int) -> Graph:
    if n < 3:
        raise GraphError("a cycle needs at least 3 vertices")
    return make_graph(n, [(i, (i + 1) % n) for i in range(n)])


def path_graph(n: int) -> Graph:
    return make_graph(n, [(i, i + 1) for i in range(n - 1)])


def star_graph(n: int) -> Graph:
    """Vertex 0 joined to vertices 1..n-1."""
    return make_graph(n, [(0, i) for i in range(1, n)])


def complement(g: Graph) -> Graph:
    full = g.full_mask
    return Graph(g.n, tuple(full ^ r ^ (1 << i) for i, r in enumerate(g.rows)), g.labels)


def is_k_regular(g: Graph, k: int) -> bool:
    return all(r.bit_count() == k for r in g.rows)


def induced_subgraph(g: Graph, keep: Sequence[int]) -> Graph:
    """Subgraph on ``keep`` (ids in the given order become 0..len-1)."""
    pos = {v: i for i, v in enumerate(keep)}
    rows = []
    for v in keep:
        r = 0
        for u in bits(g.rows[v]):
            if u in pos:
                r |= 1 << pos[u]
        rows.append(r)
    return Graph(len(keep), tuple(rows), tuple(g.labels[v] for v in keep))


def disjoint_union(g: Graph, h: Graph) -> Graph:
    rows = list(g.rows) + [r << g.n for r in h.rows]
    return Graph(g.n + h.n, tuple(rows), g.labels + h.labels)


def add_edges(g: Graph, edges: Iterable[Sequence[int]]) -> Graph:
    return make_graph(g.n, g.edges() + [tuple(e) for e in edges], g.labels)


@dataclass(frozen=True)
class Bipartition:
    """A split ``(A, B)`` of the vertex set, stored as the bit mask of ``A``."""

    n: int
    side_a: int

    @property
    def side_b(self) -> int:
        return ((1 << self.n) - 1) ^ self.side_a

    @classmethod
    def from_vertices(cls, n: int, side_a: Iterable[int]) -> Bipartition:
        return cls(n, to_mask(side_a))

    def require_proper(self) -> None:
        if self.side_a >> self.n:
            raise GraphError("bipartition mask exceeds vertex count")
        if self.side_a == 0 or self.side_b == 0:
            raise GraphError("both sides of a bipartition must be nonempty")


def _as_partition(g: Graph, p: Bipartition | int | Iterable[int]) -> Bipartition:
    if isinstance(p, Bipartition):
        part = p
    elif isinstance(p, int):
        part = Bipartition(g.n, p)
    else:
        part = Bipartition.from_vertices(g.n, p)
    part.require_proper()
    return part


def cut_matrix(g: Graph, p: Bipartition | int | Iterable[int]) -> np.ndarray:
    """Adjacency submatrix with rows in side A and columns in side B (both ascending)."""
    part = _as_partition(g, p)
    rows_a = bits(part.side_a)
    cols_b = bits(part.side_b)
    out = np.zeros((len(rows_a), len(cols_b)), dtype=np.uint8)
    for i, u in enumerate(rows_a):
        r = g.rows[u]
        for j, v in enumerate(cols_b):
            out[i, j] = (r >> v) & 1
    return out


# -- serialization ---------------------------------------------------------

def to_edgelist(g: Graph) -> str:
    lines = [f"{g.n} {g.m}"]
    lines += [f"{u} {v}" for u, v in g.edges()]
    if g.labels != tuple(str(i) for i in range(g.n)):
        lines += [f"# label {i} {lab}" for i, lab in enumerate(g.labels)]
    return "\n".join(lines) + "\n"


def from_edgelist(text: str) -> Graph:
    """Parse the ``n m`` header format.  ``#`` lines are comments except ``# label``."""
    header = None
    edges: list[tuple[int, int]] = []
    labels: dict[int, str] = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line:
            continue
        if line.startswith("#"):
            parts = line[1:].split(None, 2)
            if len(parts) == 3 and parts[0] == "label":
                try:
                    labels[int(parts[1])] = parts[2]
                except ValueError:
                    raise GraphError(f"line {lineno}: bad label line {raw!r}") from None
            continue
        fields = line.split()
        try:
            pair = tuple(int(x) for x in fields)
        except ValueError:
            raise GraphError(f"line {lineno}: expected integers, got {raw!r}") from None
        if len(pair) != 2 or min(pair) < 0:
            raise GraphError(f"line {lineno}: expected two non-negative integers, got {raw!r}")
        if header is None:
            header = pair
        else:
            edges.append(pair)
    if header is None:
        raise GraphError("line 1: missing 'n m' header")
    n, m = header
    if len(edges) != m:
        raise GraphError(f"header announces {m} edges but {len(edges)} were given")
    if labels and set(labels) != set(range(n)):
        raise GraphError("label lines must cover every vertex exactly once")
    try:
        return make_graph(n, edges, [labels[i] for i in range(n)] if labels else None)
    except GraphError as exc:
        raise GraphError(f"edge list: {exc}") from None


def to_json_obj(g: Graph) -> dict:
    return {"n": g.n, "edges": [list(e) for e in g.edges()], "labels": list(g.labels)}


def from_json_obj(obj: dict) -> Graph:
    try:
        n = int(obj["n"])
        edges = [tuple(e) for e in obj["edges"]]
    except (KeyError, TypeError, ValueError) as exc:
        raise GraphError(f"malformed graph JSON: {exc}") from None
    for i, e in enumerate(edges):
        if len(e) != 2:
            raise GraphError(f"edge {i} must have two endpoints")
    return make_graph(n, edges, obj.get("labels"))


def to_json(g: Graph) -> str:
    return json.dumps(to_json_obj(g))


def from_json(text: str) -> Graph:
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as exc:
        raise GraphError(f"line {exc.lineno}: invalid JSON ({exc.msg})") from None
    return from_json_obj(obj)


def to_dot(g: Graph, name: str = "G") -> str:
    out = [f"graph {name} {{"]
    out += [f'  {i} [label="{lab}"];' for i, lab in enumerate(g.labels)]
    out += [f"  {u} -- {v};" for u, v in g.edges()]
    out.append("}")
    return "\n".join(out) + "\n"


def loads(text: str) -> Graph:
    """Parse either JSON or edge-list text, sniffing the first character."""
    if text.lstrip().startswith("{"):
        return from_json(text)
    return from_edgelist(text)


def dumps(g: Graph, fmt: str = "json") -> str:
    if fmt == "json":
        return to_json(g) + "\n"
    if fmt in ("edgelist", "txt"):
        return to_edgelist(g)
    if fmt == "dot":
        return to_dot(g)
    raise GraphError(f"unknown graph format {fmt!r}")
