from __future__ import annotations

import time
from collections import Counter

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from conftest import graphs, random_bits, random_graph, rotations
from oracles import brute_amplitude
from regularstates.complete import probability_complete
from regularstates.graph import GraphError, complete_graph, cycle_graph
from regularstates.rankdp import (
    DPStats,
    SamplingError,
    amplitude_via_decomposition,
    marginal_dense,
    marginal_probability,
    outcome_strings,
    probability_via_decomposition,
    sample_via_chain,
)
from regularstates.statevector import LocalRotations, distribution, functional_from_rotations, probability
from regularstates.width import exact_rank_width, heuristic_rank_decomposition, linear_decomposition


@given(graphs(max_n=7), st.data())
def test_amplitude_matches_basis_sum(g, data):
    rot = data.draw(rotations(g.n))
    x = data.draw(st.text("01", min_size=g.n, max_size=g.n))
    f = functional_from_rotations(rot, x)
    d = exact_rank_width(g).decomposition
    assert abs(amplitude_via_decomposition(g, d, f) - brute_amplitude(g.n, g.edges(), f)) <= 1e-10


def test_engine_triangle(rng):
    for _ in range(60):
        n = int(rng.integers(2, 11))
        g = complete_graph(n) if rng.random() < 0.25 else random_graph(n, rng)
        rot = LocalRotations.random(n, rng)
        x = random_bits(n, rng)
        p_oracle = probability(g, rot, x)
        d = heuristic_rank_decomposition(g, effort=0).decomposition
        assert abs(p_oracle - probability_via_decomposition(g, d, rot, x)) <= 1e-9
        if g.m == n * (n - 1) // 2:
            assert abs(p_oracle - probability_complete(n, rot, x)) <= 1e-9


@given(graphs(min_n=2, max_n=8), st.data())
def test_decomposition_independence(g, data):
    rot = data.draw(rotations(g.n))
    x = data.draw(st.text("01", min_size=g.n, max_size=g.n))
    f = functional_from_rotations(rot, x)
    order = data.draw(st.permutations(range(g.n)))
    a = amplitude_via_decomposition(g, exact_rank_width(g).decomposition, f)
    b = amplitude_via_decomposition(g, linear_decomposition(g.n, list(order)), f)
    assert abs(a - b) <= 1e-10


@given(graphs(min_n=2, max_n=8), st.data())
def test_cost_accounting(g, data):
    order = data.draw(st.permutations(range(g.n)))
    d = linear_decomposition(g.n, list(order))
    d.widths = d.compute_widths(g)
    stats = DPStats()
    amplitude_via_decomposition(g, d, np.ones((g.n, 2)), stats)
    assert stats.peak_live <= sum(2 ** w for w in d.widths)
    assert stats.max_table <= 2 ** d.width


@given(graphs(max_n=7), st.data())
def test_marginals_match_dense(g, data):
    rot = data.draw(rotations(g.n))
    prefix = data.draw(st.text("01", max_size=g.n))
    d = exact_rank_width(g).decomposition
    assert abs(marginal_probability(g, d, rot, prefix) - marginal_dense(g, rot, prefix)) <= 1e-10


def test_full_prefix_marginal_is_probability(rng):
    g = random_graph(6, rng)
    rot = LocalRotations.random(6, rng)
    d = exact_rank_width(g).decomposition
    for x in outcome_strings(6)[:8]:
        assert marginal_probability(g, d, rot, x) == pytest.approx(probability(g, rot, x), abs=1e-12)


def test_chain_sampler_is_seeded_and_plausible(rng):
    g = random_graph(5, rng)
    rot = LocalRotations.random(5, rng)
    d = exact_rank_width(g).decomposition
    a = sample_via_chain(g, d, rot, 2000, seed=4)
    assert a == sample_via_chain(g, d, rot, 2000, seed=4)
    p = distribution(g, rot)
    counts = Counter(a)
    emp = np.array([counts[s] / 2000 for s in outcome_strings(5)])
    assert 0.5 * np.abs(emp - p).sum() < 0.1


def test_chain_sampler_underflow():
    # a floor above every marginal forces the underflow path
    g = cycle_graph(3)
    rot = LocalRotations.identity(3)
    d = exact_rank_width(g).decomposition
    with pytest.raises(SamplingError):
        sample_via_chain(g, d, rot, 5, seed=0, floor=1.0)


def test_cycle_40_beyond_oracle():
    g = cycle_graph(40)
    d = linear_decomposition(40, list(range(40)))
    d.widths = d.compute_widths(g)
    assert d.width == 2
    rot = LocalRotations.random(40, np.random.default_rng(2))
    t0 = time.perf_counter()
    p = probability_via_decomposition(g, d, rot, "01" * 20)
    assert time.perf_counter() - t0 < 10
    assert 0 <= p <= 1


def test_input_checks():
    g = cycle_graph(4)
    d = exact_rank_width(g).decomposition
    with pytest.raises(GraphError):
        amplitude_via_decomposition(g, d, np.ones((3, 2)))
    with pytest.raises(GraphError):
        marginal_probability(g, d, LocalRotations.identity(4), "012")
    with pytest.raises(GraphError):
        probability_via_decomposition(g, d, LocalRotations.identity(3), "0000")
