"""GF(2) linear algebra on int bitsets."""

from __future__ import annotations

from typing import Sequence


def gf2_rank(rows: Sequence[int]) -> int:
    """Rank over GF(2) of the rows (each an int bitset)."""
    pivots: dict[int, int] = {}
    rank = 0
    for r in rows:
        while r:
            top = r.bit_length() - 1
            p = pivots.get(top)
            if p is None:
                pivots[top] = r
                rank += 1
                break
            r ^= p
    return rank


class RowBasis:
    """Echelon basis of a row space that remembers how each vector was formed.

    Vectors are added in order; those independent of their predecessors are
    kept (``members`` holds their positions in the input order).  ``coords``
    expresses any vector of the span as a bit mask over the kept vectors.
    """

    def __init__(self, rows: Sequence[int] = ()):
        self._pivots: dict[int, tuple[int, int]] = {}
        self.members: list[int] = []
        self.vectors: list[int] = []
        for i, r in enumerate(rows):
            self.add(r, tag=i)

    @property
    def rank(self) -> int:
        return len(self.vectors)

    def _reduce(self, v: int) -> tuple[int, int]:
        combo = 0
        while v:
            top = v.bit_length() - 1
            hit = self._pivots.get(top)
            if hit is None:
                break
            v ^= hit[0]
            combo ^= hit[1]
        return v, combo

    def add(self, v: int, tag: int | None = None) -> bool:
        residual, combo = self._reduce(v)
        if not residual:
            return False
        k = len(self.vectors)
        self._pivots[residual.bit_length() - 1] = (residual, combo ^ (1 << k))
        self.vectors.append(v)
        self.members.append(k if tag is None else tag)
        return True

    def in_span(self, v: int) -> bool:
        return self._reduce(v)[0] == 0

    def coords(self, v: int) -> int:
        """Coefficient mask ``c`` with ``v = xor of vectors[i] for bits i of c``."""
        residual, combo = self._reduce(v)
        if residual:
            raise ValueError("vector is not in the span")
        return combo


def gf2_rank_matrix(mat) -> int:
    """Rank of a 0/1 matrix given as a nested sequence or numpy array."""
    rows = []
    for row in mat:
        r = 0
        for j, x in enumerate(row):
            if int(x) & 1:
                r |= 1 << j
        rows.append(r)
    return gf2_rank(rows)


def matvec(cols: Sequence[int], x: int) -> int:
    """Multiply a matrix given by its column bitsets with the bit vector ``x``."""
    out = 0
    j = 0
    while x:
        if x & 1:
            out ^= cols[j]
        x >>= 1
        j += 1
    return out
