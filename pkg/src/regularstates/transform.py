"""Local complementation, vertex deletion and the certified lattice reductions."""

from __future__ import annotations

from dataclasses import dataclass, field

from .constructions import (
    ConstructionError,
    LatticeShape,
    build_lattice,
    coord_label,
    parse_coord_label,
)
from .graph import Graph, GraphError, bits, complement, from_json_obj, to_json_obj

LC = "LocalComplement"
DELETE = "DeleteVertex"


class RewriteError(GraphError):
    """A rewrite step referenced a vertex that is not present."""


def local_complement(g: Graph, v: int | str) -> Graph:
    """Complement the subgraph induced on the neighbourhood of ``v``."""
    v = g.index(v)
    nbhd = g.rows[v]
    rows = list(g.rows)
    for u in bits(nbhd):
        rows[u] ^= nbhd ^ (1 << u)
    return Graph(g.n, tuple(rows), g.labels)


def delete_vertex(g: Graph, v: int | str) -> Graph:
    """Remove ``v`` and its edges; ids above ``v`` shift down by one."""
    v = g.index(v)
    low = (1 << v) - 1
    rows = []
    for u, r in enumerate(g.rows):
        if u == v:
            continue
        rows.append((r & low) | ((r >> (v + 1)) << v))
    return Graph(g.n - 1, tuple(rows), g.labels[:v] + g.labels[v + 1 :])


@dataclass(frozen=True)
class RewriteStep:
    kind: str
    target: str

    def apply(self, g: Graph) -> Graph:
        if self.kind == LC:
            return local_complement(g, self.target)
        if self.kind == DELETE:
            return delete_vertex(g, self.target)
        raise RewriteError(f"unknown rewrite kind {self.kind!r}")


def lc(label: str) -> RewriteStep:
    return RewriteStep(LC, label)


def delete(label: str) -> RewriteStep:
    return RewriteStep(DELETE, label)


@dataclass(frozen=True)
class ReductionCertificate:
    initial: Graph
    steps: tuple[RewriteStep, ...]
    final: Graph
    expected: Graph | None = field(default=None, compare=False)

    def replay(self) -> Graph:
        g = self.initial
        for step in self.steps:
            g = step.apply(g)
        return g

    def replays(self) -> bool:
        r = self.replay()
        return r.rows == self.final.rows and r.labels == self.final.labels

    @property
    def verified(self) -> bool:
        """Final graph equals the expected lattice label-for-label (and replays)."""
        return self.expected is not None and self.final.same_labelled(self.expected) and self.replays()

    def to_json_obj(self) -> dict:
        return {
            "initial": to_json_obj(self.initial),
            "steps": [{"kind": s.kind, "target": s.target} for s in self.steps],
            "final": to_json_obj(self.final),
        }

    @classmethod
    def from_json_obj(cls, obj: dict) -> ReductionCertificate:
        steps = tuple(RewriteStep(s["kind"], s["target"]) for s in obj["steps"])
        return cls(from_json_obj(obj["initial"]), steps, from_json_obj(obj["final"]))


def apply_pipeline(g: Graph, steps, expected: Graph | None = None) -> ReductionCertificate:
    steps = tuple(steps)
    cur = g
    for i, step in enumerate(steps):
        try:
            cur = step.apply(cur)
        except GraphError as exc:
            raise RewriteError(f"step {i} ({step.kind} {step.target!r}) failed: {exc}") from None
    return ReductionCertificate(g, steps, cur, expected)


# -- coordinate bookkeeping ---------------------------------------------------

def _coords(g: Graph, prefix: str) -> dict[tuple[int, int], str]:
    out = {}
    for lab in g.labels:
        parsed = parse_coord_label(lab)
        if parsed is not None and parsed[0] == prefix:
            out[(parsed[1], parsed[2])] = lab
    return out


def _prefixes(g: Graph) -> set[str]:
    out = set()
    for lab in g.labels:
        parsed = parse_coord_label(lab)
        if parsed is None:
            raise RewriteError(f"label {lab!r} does not carry lattice coordinates")
        out.add(parsed[0])
    return out


def _shape(coords) -> tuple[int, int]:
    rows = max(r for r, _ in coords) + 1
    cols = max(c for _, c in coords) + 1
    if len(coords) != rows * cols:
        raise RewriteError("lattice labels do not form a full rectangle")
    return rows, cols


def identify_torus(g: Graph, prefix: str = "") -> tuple[LatticeShape, bool]:
    """Recognise ``g`` (restricted to ``prefix``) as a torus or its complement.

    Returns the torus layout and whether the graph is the complement.
    """
    coords = _coords(g, prefix)
    if len(coords) != g.n:
        raise RewriteError("graph has vertices outside the lattice prefix")
    rows, cols = _shape(coords)
    for lattice in ("square", "hexagonal"):
        layout = LatticeShape(rows, cols, lattice, "torus")
        try:
            lat = build_lattice(layout, prefix)
        except ConstructionError:
            continue
        if g.same_labelled(lat):
            return layout, False
        if g.same_labelled(complement(lat)):
            return layout, True
    raise RewriteError(f"graph is neither a {rows}x{cols} torus nor the complement of one")


def _row_col_steps(coords: dict[tuple[int, int], str], skip: set[str], row: int, col: int) -> list[RewriteStep]:
    """Deletions of every remaining vertex on the given row or column, ascending."""
    return [delete(lab) for rc, lab in sorted(coords.items()) if (rc[0] == row or rc[1] == col) and lab not in skip]


def cut_open_steps(g: Graph, layout: LatticeShape, prefix: str = "") -> list[RewriteStep]:
    coords = _coords(g, prefix)
    return _row_col_steps(coords, set(), layout.rows - 1, layout.cols - 1)


def cut_open_torus(g: Graph, prefix: str = "") -> ReductionCertificate:
    """Delete the last row and column of a labelled torus, leaving the open lattice."""
    layout, comp = identify_torus(g, prefix)
    if comp:
        raise RewriteError("cut_open_torus expects a torus, not its complement")
    expected = build_lattice(LatticeShape(layout.rows - 1, layout.cols - 1, layout.lattice, "open"), prefix)
    return apply_pipeline(g, cut_open_steps(g, layout, prefix), expected)


def complement_lattice_steps(g: Graph, layout: LatticeShape, prefix: str = "") -> list[RewriteStep]:
    """LC at the (0,0) corner, delete it with its lattice neighbours, then clear row 0 and column 0.

    ``g`` must be the complement of the lattice described by ``layout``.  After
    the LC the survivors induce the lattice itself, so removing the corner's
    row and column leaves the open lattice on rows/cols ``1..``.
    """
    coords = _coords(g, prefix)
    lat = build_lattice(layout, prefix)
    a = coord_label(0, 0, prefix)
    a_lat = lat.index(a)
    marked = [a] + [lat.labels[u] for u in lat.neighbors(a_lat)]
    steps = [lc(a)] + [delete(lab) for lab in marked]
    steps += _row_col_steps(coords, set(marked), 0, 0)
    return steps


def duality_reduction(m: int) -> ReductionCertificate:
    """Complement of the open m x m grid reduced to the open (m-1) x (m-1) grid."""
    if m < 3:
        raise ConstructionError(f"duality reduction needs m >= 3, got m={m}")
    layout = LatticeShape(m, m, "square", "open")
    initial = complement(build_lattice(layout))
    expected = build_lattice(LatticeShape(m - 1, m - 1, "square", "open"), origin=(1, 1))
    return apply_pipeline(initial, complement_lattice_steps(initial, layout), expected)


def hard_family_reduction(g: Graph) -> ReductionCertificate:
    """Reduce a hard-family graph to an open lattice by deletions and (for complements) one LC."""
    prefixes = _prefixes(g)
    steps: list[RewriteStep] = []
    cur = g
    prefix = ""
    if prefixes == {"A:", "B:"}:
        prefix = "A:"
        steps = [delete(lab) for lab in g.labels if lab.startswith("B:")]
        cur = apply_pipeline(g, steps).final
    elif prefixes != {""}:
        raise RewriteError(f"unrecognised construction labels (prefixes {sorted(prefixes)})")
    layout, comp = identify_torus(cur, prefix)
    if comp:
        steps += complement_lattice_steps(cur, layout, prefix)
        expected = build_lattice(LatticeShape(layout.rows - 1, layout.cols - 1, layout.lattice, "open"), prefix, (1, 1))
    else:
        steps += cut_open_steps(cur, layout, prefix)
        expected = build_lattice(LatticeShape(layout.rows - 1, layout.cols - 1, layout.lattice, "open"), prefix)
    return apply_pipeline(g, steps, expected)
