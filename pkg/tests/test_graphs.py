import dataclasses

import numpy as np
import pytest

from gradpush.errors import ConnectivityError, GraphError, TraceIOError
from gradpush.graphs.connectivity import is_strongly_connected, verify_B_strong_connectivity
from gradpush.graphs.generators import (
    complete,
    complete_graph,
    directed_cycle,
    directed_cycle_graph,
    from_graphs,
    generate_alternating_stars,
    generate_cycle_plus_random,
    load_edge_list,
    star_graph,
    static,
)
from gradpush.graphs.model import DirectedGraph, build_mixing_matrix
from tests.conftest import small_sequences


def edge_set(g: DirectedGraph) -> set[tuple[int, int]]:
    return set(g.edges())


# --- DirectedGraph ---------------------------------------------------------------------------

def test_from_edges_adds_self_loops():
    g = DirectedGraph.from_edges(3, [(0, 1), (1, 2)])
    assert g.out_neighbors == ((0, 1), (1, 2), (2,))
    assert g.in_neighbors == ((0,), (0, 1), (1, 2))


def test_graph_rejects_missing_self_loop():
    with pytest.raises(GraphError):
        DirectedGraph(n=2, out_neighbors=((1,), (1,)))


def test_graph_rejects_duplicates_and_out_of_range():
    with pytest.raises(GraphError):
        DirectedGraph(n=2, out_neighbors=((0, 1, 1), (1,)))
    with pytest.raises(GraphError):
        DirectedGraph.from_edges(2, [(0, 5)])


def test_in_and_out_adjacency_are_inverse():
    g = generate_cycle_plus_random(12, seed=5).graph(3)
    for j, outs in enumerate(g.out_neighbors):
        for i in outs:
            assert j in g.in_neighbors[i]
    assert g.out_degrees.sum() == g.in_degrees.sum()


# --- build_mixing_matrix ---------------------------------------------------------------------

def test_mixing_matrix_single_node():
    A = build_mixing_matrix(DirectedGraph(n=1, out_neighbors=((0,),)))
    assert A.dense().tolist() == [[1.0]]


def test_mixing_matrix_directed_cycle():
    A = build_mixing_matrix(directed_cycle_graph(3)).dense()
    assert np.count_nonzero(A, axis=0).tolist() == [2, 2, 2]
    assert set(A[A > 0].tolist()) == {0.5}
    # 0 -> 1: A_10 = 1/d_0
    assert A[1, 0] == 0.5 and A[0, 1] == 0.0


def test_mixing_matrix_complete():
    A = build_mixing_matrix(complete_graph(4)).dense()
    assert np.all(A == 0.25)


def test_mixing_matrix_entries_follow_in_neighbors():
    g = generate_cycle_plus_random(9, seed=1).graph(4)
    A = build_mixing_matrix(g).dense()
    for i in range(g.n):
        for j in range(g.n):
            if j in g.in_neighbors[i]:
                assert A[i, j] == pytest.approx(1.0 / g.out_degrees[j])
            else:
                assert A[i, j] == 0.0


@pytest.mark.parametrize("seq", small_sequences(), ids=lambda s: s.name)
def test_mixing_matrix_column_stochastic_positive_diagonal(seq):
    for t in range(20):
        A = build_mixing_matrix(seq.graph(t))
        np.testing.assert_allclose(A.column_sums(), 1.0, rtol=0, atol=1e-12)
        assert np.all(A.diagonal() > 0)


def test_mixing_matrix_rejects_zero_out_degree():
    g = DirectedGraph(n=2, out_neighbors=((0,), (1,)))
    object.__setattr__(g, "out_neighbors", ((), (1,)))
    g.__dict__.pop("out_degrees", None)
    with pytest.raises(GraphError):
        build_mixing_matrix(g)


# --- is_strongly_connected -------------------------------------------------------------------

def test_strong_connectivity_examples():
    assert is_strongly_connected(directed_cycle_graph(3))
    assert not is_strongly_connected(DirectedGraph.from_edges(2, []))
    hub_to_leaves = DirectedGraph.from_edges(4, [(0, 1), (0, 2), (0, 3)])
    assert not is_strongly_connected(hub_to_leaves)
    assert is_strongly_connected(star_graph(4, 0))


# --- verify_B_strong_connectivity ------------------------------------------------------------

def test_static_graph_connected_with_B1():
    report = verify_B_strong_connectivity(static(directed_cycle_graph(5)), B=1, horizon=10)
    assert report
    assert report.windows_checked == 10


def test_alternating_one_way_needs_B2(one_way):
    assert verify_B_strong_connectivity(one_way, B=2, horizon=10)
    report = verify_B_strong_connectivity(one_way, B=1, horizon=10)
    assert not report
    assert report.first_failing_window == 0
    with pytest.raises(ConnectivityError) as exc:
        report.raise_for_failure()
    assert exc.value.window == 0


def test_multiples_of_B_also_connect(one_way):
    for k in (1, 2, 3):
        assert verify_B_strong_connectivity(one_way, B=2 * k, horizon=24)


def test_verify_rejects_bad_arguments(one_way):
    with pytest.raises(ValueError):
        verify_B_strong_connectivity(one_way, B=0, horizon=4)
    with pytest.raises(ValueError):
        verify_B_strong_connectivity(one_way, B=5, horizon=4)


# --- generators ------------------------------------------------------------------------------

def test_cycle_plus_random_two_nodes():
    seq = generate_cycle_plus_random(2, seed=9)
    for t in range(20):
        assert seq.graph(t).out_degrees.tolist() == [2, 2]


def test_cycle_plus_random_large_degrees():
    seq = generate_cycle_plus_random(1000, seed=0)
    for t in (0, 17, 199):
        degrees = seq.graph(t).out_degrees
        assert degrees.max() <= 3 and degrees.min() >= 2


def test_cycle_plus_random_deterministic():
    a = generate_cycle_plus_random(50, seed=77).graph(7)
    b = generate_cycle_plus_random(50, seed=77).graph(7)
    assert edge_set(a) == edge_set(b)
    assert edge_set(a) != edge_set(generate_cycle_plus_random(50, seed=78).graph(7))


@pytest.mark.parametrize("n", [2, 3, 10, 31])
def test_cycle_plus_random_B1(n):
    seq = generate_cycle_plus_random(n, seed=n)
    assert seq.connected_by_construction
    assert verify_B_strong_connectivity(seq, B=1, horizon=25)


def test_cycle_plus_random_rejects_single_node():
    with pytest.raises(GraphError):
        generate_cycle_plus_random(1, seed=0)


def test_alternating_stars_edges():
    seq = generate_alternating_stars(3, 0, 1)
    loops = {(0, 0), (1, 1), (2, 2)}
    assert edge_set(seq.graph(0)) == loops | {(0, 1), (1, 0), (0, 2), (2, 0)}
    assert edge_set(seq.graph(1)) == loops | {(1, 0), (0, 1), (1, 2), (2, 1)}
    assert verify_B_strong_connectivity(seq, B=1, horizon=10)


def test_alternating_stars_rejects_equal_hubs():
    with pytest.raises(GraphError):
        generate_alternating_stars(4, 2, 2)
    with pytest.raises(GraphError):
        generate_alternating_stars(4, 0, 4)


def test_from_graphs_is_periodic():
    seq = from_graphs([complete_graph(3), directed_cycle_graph(3)])
    assert seq.graph(4) == complete_graph(3)
    assert seq.graph(5) == directed_cycle_graph(3)


def test_declared_B_for_static_families():
    assert complete(4).declared_B == 1
    assert directed_cycle(4).declared_B == 1
    with pytest.raises(GraphError):
        dataclasses.replace(complete(3), declared_B=0)


# --- edge-list loader ------------------------------------------------------------------------

def test_load_edge_list(tmp_path):
    path = tmp_path / "edges.txt"
    path.write_text("# t src dst\n0 0 1\n\n1 1 0\n", encoding="ascii")
    seq = load_edge_list(path, n=2)
    assert edge_set(seq.graph(0)) == {(0, 0), (1, 1), (0, 1)}
    assert edge_set(seq.graph(3)) == {(0, 0), (1, 1), (1, 0)}
    assert verify_B_strong_connectivity(seq, B=2, horizon=8)


def test_load_edge_list_errors(tmp_path):
    with pytest.raises(TraceIOError):
        load_edge_list(tmp_path / "missing.txt", n=2)
    bad = tmp_path / "bad.txt"
    bad.write_text("0 0\n", encoding="ascii")
    with pytest.raises(GraphError):
        load_edge_list(bad, n=2)
    out_of_range = tmp_path / "range.txt"
    out_of_range.write_text("0 0 7\n", encoding="ascii")
    with pytest.raises(GraphError):
        load_edge_list(out_of_range, n=2)
