"""Builders for the regular graph families: easy witnesses, tori and double tori.

Lattice vertices are labelled ``"{prefix}{row},{col}"`` with absolute
coordinates, so a lattice obtained by deletions can be compared label-for-label
against a freshly built one.  Hexagonal lattices use the brick-wall embedding:
horizontal bonds along every row and a vertical bond from ``(r, c)`` down to
``(r + 1, c)`` whenever ``r + c`` is even.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import isqrt
from typing import Sequence

from .graph import Graph, GraphError, complement, complete_graph, cycle_graph, disjoint_union, make_graph


class ConstructionError(GraphError):
    """Raised when a family is requested outside the parameters it covers."""


EASY_DEGREES = ("1", "2", "n-3", "n-2", "n-1")


def perfect_matching(n: int) -> Graph:
    if n % 2:
        raise ConstructionError(f"a perfect matching needs an even vertex count, got n={n}")
    return make_graph(n, [(2 * i, 2 * i + 1) for i in range(n // 2)])


def build_regular_easy(n: int, k: int) -> Graph:
    """Canonical k-regular witness for k in {1, 2, n-3, n-2, n-1}."""
    if n < 1 or not 0 <= k < n:
        raise ConstructionError(f"need 0 <= k < n, got n={n}, k={k}")
    if (n * k) % 2:
        raise ConstructionError(f"n*k must be even for a k-regular graph, got n={n}, k={k}")
    if k == n - 1:
        return complete_graph(n)
    if k == 1:
        return perfect_matching(n)
    if k == 2:
        return cycle_graph(n)
    if k == n - 2:
        return complement(perfect_matching(n))
    if k == n - 3:
        return complement(cycle_graph(n))
    raise ConstructionError(f"k={k} is not an easy degree for n={n} (expected one of {', '.join(EASY_DEGREES)})")


def easy_family_name(n: int, k: int) -> str:
    """Name of the witness ``build_regular_easy`` returns (same precedence)."""
    for name, degree in (("complete", n - 1), ("matching", 1), ("cycle", 2), ("co-matching", n - 2), ("co-cycle", n - 3)):
        if k == degree:
            return name
    raise ConstructionError(f"k={k} is not an easy degree for n={n}")


@dataclass(frozen=True)
class LatticeShape:
    rows: int
    cols: int
    lattice: str = "square"  # "square" | "hexagonal"
    boundary: str = "torus"  # "torus" | "open"

    def check(self) -> None:
        if self.lattice not in ("square", "hexagonal"):
            raise ConstructionError(f"unknown lattice {self.lattice!r}")
        if self.boundary not in ("torus", "open"):
            raise ConstructionError(f"unknown boundary {self.boundary!r}")
        if self.rows < 1 or self.cols < 1:
            raise ConstructionError("lattice dimensions must be positive")
        if self.boundary == "torus":
            if self.rows < 3 or self.cols < 3:
                raise ConstructionError("torus dimensions must be at least 3x3")
            if self.lattice == "hexagonal" and self.cols % 2:
                raise ConstructionError("hexagonal torus needs an even number of columns")

    @property
    def n(self) -> int:
        return self.rows * self.cols


def coord_label(r: int, c: int, prefix: str = "") -> str:
    return f"{prefix}{r},{c}"


def parse_coord_label(label: str) -> tuple[str, int, int] | None:
    """Split ``"{prefix}{r},{c}"`` into its parts, or None for other labels."""
    head, sep, tail = label.rpartition(",")
    if not sep:
        return None
    i = len(head)
    while i > 0 and head[i - 1].isdigit():
        i -= 1
    if i == len(head) or not tail.isdigit():
        return None
    return head[:i], int(head[i:]), int(tail)


def lattice_edges(layout: LatticeShape, origin: tuple[int, int] = (0, 0)) -> list[tuple[tuple[int, int], tuple[int, int]]]:
    """Edges of the lattice as coordinate pairs (absolute coordinates)."""
    layout.check()
    r0, c0 = origin
    R, C = layout.rows, layout.cols
    torus = layout.boundary == "torus"
    out = []
    for r in range(R):
        for c in range(C):
            ar, ac = r0 + r, c0 + c
            if c + 1 < C:
                out.append(((ar, ac), (ar, ac + 1)))
            elif torus:
                out.append(((ar, ac), (ar, c0)))
            if layout.lattice == "square":
                if r + 1 < R:
                    out.append(((ar, ac), (ar + 1, ac)))
                elif torus:
                    out.append(((ar, ac), (r0, ac)))
            elif (ar + ac) % 2 == 0:
                if r + 1 < R:
                    out.append(((ar, ac), (ar + 1, ac)))
                elif torus:
                    # odd row count: the wrap shifts one column to keep the bond parity
                    shift = 0 if R % 2 == 0 else 1
                    out.append(((ar, ac), (r0, c0 + (c + shift) % C)))
    return out


def build_lattice(layout: LatticeShape, prefix: str = "", origin: tuple[int, int] = (0, 0)) -> Graph:
    """Square or brick-wall hexagonal lattice, open or periodic."""
    layout.check()
    if layout.boundary == "torus" and origin != (0, 0):
        raise ConstructionError("tori are always built at the origin")
    r0, c0 = origin
    coords = [(r0 + r, c0 + c) for r in range(layout.rows) for c in range(layout.cols)]
    index = {rc: i for i, rc in enumerate(coords)}
    edges = [(index[a], index[b]) for a, b in lattice_edges(layout, origin)]
    return make_graph(len(coords), edges, [coord_label(r, c, prefix) for r, c in coords])


def square_torus(rows: int, cols: int | None = None, prefix: str = "") -> Graph:
    return build_lattice(LatticeShape(rows, rows if cols is None else cols, "square", "torus"), prefix)


def grid(rows: int, cols: int | None = None, prefix: str = "", origin: tuple[int, int] = (0, 0)) -> Graph:
    return build_lattice(LatticeShape(rows, rows if cols is None else cols, "square", "open"), prefix, origin)


# -- Gale-Ryser ------------------------------------------------------------

@dataclass(frozen=True)
class DegreeSequence:
    a: tuple[int, ...]
    b: tuple[int, ...]

    @classmethod
    def of(cls, a: Sequence[int], b: Sequence[int]) -> DegreeSequence:
        return cls(tuple(int(x) for x in a), tuple(int(x) for x in b))


def gale_ryser_violation(seq: DegreeSequence) -> str | None:
    """Describe the first violated Gale-Ryser condition, or None if realizable."""
    a = sorted(seq.a, reverse=True)
    b = list(seq.b)
    if any(x < 0 for x in a + b):
        return "degrees must be non-negative"
    if sum(a) != sum(b):
        return f"sum condition fails: sum(a)={sum(a)} != sum(b)={sum(b)}"
    partial = 0
    for p in range(1, len(a) + 1):
        partial += a[p - 1]
        bound = sum(min(x, p) for x in b)
        if partial > bound:
            return f"dominance condition fails at p={p}: {partial} > {bound}"
    return None


def gale_ryser_check(seq: DegreeSequence) -> bool:
    return gale_ryser_violation(seq) is None


def ryser_realize(seq: DegreeSequence) -> Graph:
    """Bipartite realization; left vertex i is id i, right vertex j is id len(a)+j.

    Left vertices are served in non-increasing degree order, each joined to
    the right vertices of largest residual degree (ties to the lower index).
    """
    reason = gale_ryser_violation(seq)
    if reason is not None:
        raise ConstructionError(f"degree sequence not realizable: {reason}")
    na, nb = len(seq.a), len(seq.b)
    residual = list(seq.b)
    order = sorted(range(na), key=lambda i: (-seq.a[i], i))
    edges = []
    for i in order:
        targets = sorted(range(nb), key=lambda j: (-residual[j], j))[: seq.a[i]]
        for j in targets:
            if residual[j] == 0:  # cannot happen for feasible sequences
                raise ConstructionError("greedy realization ran out of residual degree")
            residual[j] -= 1
            edges.append((i, na + j))
    labels = [f"L{i}" for i in range(na)] + [f"R{j}" for j in range(nb)]
    return make_graph(na + nb, edges, labels)


# -- hard families ---------------------------------------------------------

def build_double_torus(m: int, k: int) -> Graph:
    """Two m x m square tori (labels ``A:r,c`` / ``B:r,c``) joined into a k-regular graph."""
    if m < 3:
        raise ConstructionError(f"torus side must be at least 3, got m={m}")
    if not 4 < k <= m * m:
        raise ConstructionError(f"double torus needs 4 < k <= m^2 = {m * m}, got k={k}")
    side = m * m
    cross = ryser_realize(DegreeSequence((k - 4,) * side, (k - 4,) * side))
    g = disjoint_union(square_torus(m, prefix="A:"), square_torus(m, prefix="B:"))
    edges = g.edges() + cross.edges()
    return make_graph(g.n, edges, g.labels)


def _near_square_factors(n: int, ok) -> tuple[int, int] | None:
    best = None
    for r in range(1, isqrt(n) + 1):
        if n % r:
            continue
        for rows, cols in ((r, n // r), (n // r, r)):
            if ok(rows, cols):
                key = (abs(rows - cols), rows > cols)
                if best is None or key < best[0]:
                    best = (key, (rows, cols))
    return None if best is None else best[1]


def square_torus_shape(n: int) -> tuple[int, int] | None:
    return _near_square_factors(n, lambda r, c: r >= 3 and c >= 3)


def hexagonal_torus_shape(n: int) -> tuple[int, int] | None:
    return _near_square_factors(n, lambda r, c: r >= 3 and c >= 4 and c % 2 == 0)


@dataclass(frozen=True)
class HardFamily:
    """Which explicit construction covers a given (n, k)."""

    name: str
    lattice: str
    complemented: bool
    rows: int
    cols: int
    k_inner: int  # degree of the uncomplemented construction


def hard_family_case(n: int, k: int) -> HardFamily:
    """Select the construction for (n, k); raise with the reason when none applies."""
    if not 3 <= k <= n - 4:
        raise ConstructionError(f"hard families need 3 <= k <= n-4, got n={n}, k={k}")
    m = isqrt(n // 2)
    double = n % 2 == 0 and 2 * m * m == n and m >= 3
    reasons = []
    if k == 3:
        shape = hexagonal_torus_shape(n)
        if shape:
            return HardFamily("hexagonal-torus", "hexagonal", False, *shape, 3)
        reasons.append(f"k=3: no hexagonal torus on {n} vertices (rows>=3, even cols>=4)")
    if k == 4:
        shape = square_torus_shape(n)
        if shape:
            return HardFamily("square-torus", "square", False, *shape, 4)
        reasons.append(f"k=4: no square torus on {n} vertices")
    if 4 < k <= n // 2:
        if double:
            return HardFamily("double-torus", "square", False, m, m, k)
        reasons.append(f"4<k<=n/2: double torus needs n=2m^2 with m>=3, got n={n}")
    if n / 2 < k <= n - 6:
        if double:
            return HardFamily("co-double-torus", "square", True, m, m, n - k - 1)
        reasons.append(f"n/2<k<=n-6: complement of double torus needs n=2m^2 with m>=3, got n={n}")
    if k == n - 5:
        shape = square_torus_shape(n)
        if shape:
            return HardFamily("co-square-torus", "square", True, *shape, 4)
        reasons.append(f"k=n-5: no square torus on {n} vertices")
    if k == n - 4:
        shape = hexagonal_torus_shape(n)
        if shape:
            return HardFamily("co-hexagonal-torus", "hexagonal", True, *shape, 3)
        reasons.append(f"k=n-4: no hexagonal torus on {n} vertices")
    raise ConstructionError(f"no explicit construction for n={n}, k={k}: " + "; ".join(reasons))


def build_hard_family(n: int, k: int) -> Graph:
    case = hard_family_case(n, k)
    if case.name.endswith("double-torus"):
        g = build_double_torus(case.rows, case.k_inner)
    else:
        g = build_lattice(LatticeShape(case.rows, case.cols, case.lattice, "torus"))
    return complement(g) if case.complemented else g
