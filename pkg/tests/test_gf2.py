from __future__ import annotations

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from oracles import rank_mod2
from regularstates.gf2 import RowBasis, gf2_rank, gf2_rank_matrix, matvec

matrices = st.integers(1, 7).flatmap(
    lambda r: st.integers(1, 7).flatmap(
        lambda c: st.lists(st.lists(st.integers(0, 1), min_size=c, max_size=c), min_size=r, max_size=r)
    )
)


@given(matrices)
def test_rank_matches_dense_elimination(mat):
    assert gf2_rank_matrix(mat) == rank_mod2(np.array(mat))


@given(matrices)
def test_rank_of_transpose(mat):
    assert gf2_rank_matrix(mat) == gf2_rank_matrix(np.array(mat).T)


@given(st.lists(st.integers(0, 255), max_size=10), st.integers(0, 255))
def test_coords_reconstruct_vector(rows, v):
    basis = RowBasis(rows)
    assert basis.rank == gf2_rank(rows)
    if basis.in_span(v):
        c = basis.coords(v)
        acc = 0
        for i, vec in enumerate(basis.vectors):
            if (c >> i) & 1:
                acc ^= vec
        assert acc == v
    else:
        with pytest.raises(ValueError):
            basis.coords(v)


def test_members_record_independent_inputs():
    basis = RowBasis()
    for tag, v in zip("abcd", [0b011, 0b110, 0b101, 0b100]):
        basis.add(v, tag=tag)
    # 0b101 = 0b011 ^ 0b110 is dependent
    assert basis.members == ["a", "b", "d"]
    assert basis.rank == 3


def test_matvec():
    cols = [0b01, 0b11, 0b10]
    assert matvec(cols, 0b101) == 0b11
    assert matvec(cols, 0) == 0
