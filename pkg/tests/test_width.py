from __future__ import annotations

import json

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from conftest import graphs, random_graph
from oracles import brute_rank_width, cut_rank_dense
from regularstates.constructions import build_regular_easy, grid, square_torus
from regularstates.graph import bits, complement, complete_graph, cycle_graph, empty_graph, path_graph
from regularstates.statevector import entanglement_entropy
from regularstates.width import (
    RankDecomposition,
    WidthError,
    cut_rank,
    decomposition_from_splits,
    entanglement_width,
    exact_rank_width,
    heuristic_rank_decomposition,
    linear_decomposition,
)


@given(graphs(min_n=2), st.data())
def test_cut_rank_matches_dense_and_is_symmetric(g, data):
    s = data.draw(st.integers(1, g.full_mask - 1))
    assert cut_rank(g, s) == cut_rank_dense(g.adjacency_matrix(), bits(s))
    assert cut_rank(g, s) == cut_rank(g, g.full_mask ^ s)


def test_cut_rank_rejects_trivial_sets():
    g = cycle_graph(4)
    for s in (0, g.full_mask, 1 << 4):
        with pytest.raises(WidthError):
            cut_rank(g, s)


@pytest.mark.parametrize("seed", range(25))
def test_exact_width_matches_tree_enumeration(seed):
    rng = np.random.default_rng(seed)
    n = int(rng.integers(1, 8))
    g = random_graph(n, rng)
    assert exact_rank_width(g).value == brute_rank_width(n, g.edges())


@pytest.mark.parametrize("n", range(2, 13))
def test_complete_and_matching_have_width_one(n):
    assert exact_rank_width(complete_graph(n)).value == 1
    if n % 2 == 0:
        assert exact_rank_width(build_regular_easy(n, 1)).value == 1


@given(graphs())
def test_width_zero_iff_edgeless(g):
    assert (exact_rank_width(g).value == 0) == (g.m == 0)


def test_known_widths():
    assert exact_rank_width(path_graph(8)).value == 1
    assert exact_rank_width(cycle_graph(9)).value == 2
    assert exact_rank_width(grid(3)).value == 2
    assert exact_rank_width(empty_graph(5)).value == 0


@given(graphs())
def test_witness_widths_recompute(g):
    rep = exact_rank_width(g)
    d = rep.decomposition
    d.validate(g)
    assert d.compute_widths(g) == d.widths
    assert max(d.widths, default=0) == rep.value


def test_width_tests_over_random_instances():
    rng = np.random.default_rng(11)
    for _ in range(40):
        n = int(rng.integers(2, 13))
        g = random_graph(n, rng)
        w = exact_rank_width(g).value
        assert abs(w - exact_rank_width(complement(g)).value) <= 1
        for effort in (0, 1):
            h = heuristic_rank_decomposition(g, effort=effort)
            assert h.value >= w
            assert h.decomposition.compute_widths(g) == h.decomposition.widths


def test_entropy_linkage_on_witness_edges():
    rng = np.random.default_rng(5)
    for _ in range(5):
        g = random_graph(8, rng)
        d = exact_rank_width(g).decomposition
        for mask, w in zip(d.edge_masks(), d.widths):
            if 0 < mask < g.full_mask:
                assert abs(entanglement_entropy(g, mask) - w) <= 1e-9


def test_exact_limit(monkeypatch):
    with pytest.raises(WidthError, match="exact limit"):
        exact_rank_width(cycle_graph(10), limit=9)
    monkeypatch.setenv("REGULARSTATES_EXACT_LIMIT", "5")
    rep = entanglement_width(cycle_graph(8))
    assert not rep.exact and rep.value >= 2
    assert entanglement_width(cycle_graph(8), exact_limit_n=8).exact


def test_heuristic_reaches_known_widths_beyond_exact_range():
    assert heuristic_rank_decomposition(cycle_graph(30)).value == 2
    assert heuristic_rank_decomposition(complete_graph(20)).value == 1
    g = square_torus(5)
    row_major = linear_decomposition(25, list(range(25)))
    hi = heuristic_rank_decomposition(g, effort=2, seed=1).value
    assert hi <= heuristic_rank_decomposition(g, effort=0).value
    assert hi <= max(row_major.compute_widths(g)) <= 10


def test_linear_decomposition_shape():
    d = linear_decomposition(6, [3, 1, 0, 5, 2, 4])
    d.validate()
    g = path_graph(6)
    assert max(d.compute_widths(g)) >= 1
    with pytest.raises(WidthError):
        linear_decomposition(3, [0, 0, 1])


def test_decomposition_json_round_trip():
    g = square_torus(3)
    d = exact_rank_width(g).decomposition
    obj = json.loads(json.dumps(d.to_json_obj(g)))
    assert set(obj) == {"tree", "leaf_map", "widths"}
    back = RankDecomposition.from_json_obj(obj, g)
    assert back.widths == d.widths


def test_invalid_decompositions():
    g = path_graph(3)
    bad = RankDecomposition(3, [(0, 1), (1, 2)], {0: 0, 1: 1, 2: 2})
    with pytest.raises(WidthError):
        bad.validate(g)
    bad = RankDecomposition(3, [(3, 0), (3, 1)], {0: 0, 1: 1, 2: 2})
    with pytest.raises(WidthError):
        bad.validate(g)
    with pytest.raises(WidthError):
        RankDecomposition.from_json_obj({"tree": [[3, 0]]}, g)


def test_decomposition_from_splits_uses_internal_ids_from_n():
    d = decomposition_from_splits(4, lambda mask: mask & -mask)
    d.validate()
    assert set(d.leaf_map) == {0, 1, 2, 3}
    assert all(a >= 4 or b >= 4 for a, b in d.edges)
