from __future__ import annotations

import json

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from conftest import graphs, random_graph
from oracles import lc_dense
from regularstates.constructions import ConstructionError, LatticeShape, build_hard_family, build_lattice, square_torus
from regularstates.graph import complement, make_graph
from regularstates.transform import (
    DELETE,
    LC,
    ReductionCertificate,
    RewriteError,
    RewriteStep,
    apply_pipeline,
    complement_lattice_steps,
    cut_open_torus,
    delete,
    delete_vertex,
    duality_reduction,
    hard_family_reduction,
    identify_torus,
    lc,
    local_complement,
)
from regularstates.width import exact_rank_width


@given(graphs(), st.data())
def test_lc_matches_matrix_formula(g, data):
    v = data.draw(st.integers(0, g.n - 1))
    h = local_complement(g, v)
    h.validate()
    np.testing.assert_array_equal(h.adjacency_matrix(), lc_dense(g.adjacency_matrix(), v))


@given(graphs(), st.data())
def test_lc_is_an_involution(g, data):
    v = data.draw(st.integers(0, g.n - 1))
    assert local_complement(local_complement(g, v), v) == g


@given(graphs(), st.data())
def test_lc_leaves_edges_outside_neighbourhood(g, data):
    v = data.draw(st.integers(0, g.n - 1))
    h = local_complement(g, v)
    nb = set(g.neighbors(v))
    for a in range(g.n):
        for b in range(a + 1, g.n):
            if not (a in nb and b in nb):
                assert g.has_edge(a, b) == h.has_edge(a, b)


@given(graphs(min_n=2), st.data())
def test_delete_keeps_labels_and_compacts_ids(g, data):
    v = data.draw(st.integers(0, g.n - 1))
    h = delete_vertex(g, v)
    h.validate()
    assert h.labels == g.labels[:v] + g.labels[v + 1 :]
    keep = [u for u in range(g.n) if u != v]
    np.testing.assert_array_equal(h.adjacency_matrix(), g.adjacency_matrix()[np.ix_(keep, keep)])


def test_deletion_never_raises_rank_width():
    rng = np.random.default_rng(3)
    for _ in range(40):
        n = int(rng.integers(3, 11))
        g = random_graph(n, rng)
        w = exact_rank_width(g).value
        for v in range(n):
            assert exact_rank_width(delete_vertex(g, v)).value <= w


def test_steps_address_labels():
    g = make_graph(3, [(0, 1), (1, 2)], ["a", "b", "c"])
    cert = apply_pipeline(g, [lc("b"), delete("a")])
    assert cert.final.labels == ("b", "c")
    assert cert.final.edges() == [(0, 1)]
    assert cert.replays()
    assert not cert.verified  # nothing to compare against


def test_pipeline_reports_failing_step():
    g = make_graph(2, [(0, 1)], ["a", "b"])
    with pytest.raises(RewriteError, match="step 1"):
        apply_pipeline(g, [delete("a"), delete("a")])
    with pytest.raises(RewriteError, match="unknown"):
        apply_pipeline(g, [RewriteStep("Flip", "a")])


def test_certificate_json_round_trip():
    cert = duality_reduction(4)
    obj = json.loads(json.dumps(cert.to_json_obj()))
    assert obj["steps"][0] == {"kind": LC, "target": "0,0"}
    assert {s["kind"] for s in obj["steps"]} == {LC, DELETE}
    back = ReductionCertificate.from_json_obj(obj)
    assert back == cert
    assert back.replays()


@pytest.mark.parametrize("m", [3, 4, 5, 6])
def test_duality_reaches_smaller_grid(m):
    cert = duality_reduction(m)
    assert cert.verified
    assert cert.final.n == (m - 1) ** 2
    assert set(cert.final.labels) == {f"{r},{c}" for r in range(1, m) for c in range(1, m)}


def test_duality_needs_m_at_least_3():
    with pytest.raises(ConstructionError):
        duality_reduction(2)


@pytest.mark.parametrize("rows,cols", [(3, 4), (4, 4), (4, 6)])
def test_hexagonal_complement_duality(rows, cols):
    layout = LatticeShape(rows, cols, "hexagonal", "open")
    g = complement(build_lattice(layout))
    expected = build_lattice(LatticeShape(rows - 1, cols - 1, "hexagonal", "open"), origin=(1, 1))
    assert apply_pipeline(g, complement_lattice_steps(g, layout), expected).verified


@pytest.mark.parametrize("rows,cols", [(3, 3), (4, 5)])
def test_cut_open_square_torus(rows, cols):
    cert = cut_open_torus(square_torus(rows, cols))
    assert cert.verified
    assert cert.final.n == (rows - 1) * (cols - 1)


def test_identify_torus():
    g = square_torus(4)
    assert identify_torus(g) == (LatticeShape(4, 4, "square", "torus"), False)
    assert identify_torus(complement(g))[1] is True


@pytest.mark.parametrize("n,k", [(9, 4), (18, 5), (18, 9), (18, 12), (12, 3), (16, 3), (18, 3), (16, 11), (12, 8)])
def test_hard_family_reductions(n, k):
    cert = hard_family_reduction(build_hard_family(n, k))
    assert cert.verified
    assert cert.replays()


def test_hard_reduction_rejects_foreign_labels():
    g = make_graph(3, [(0, 1)], ["x:0,0", "y:0,1", "z:1,1"])
    with pytest.raises(RewriteError):
        hard_family_reduction(g)
