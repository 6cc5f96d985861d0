"""Tests for the 2-stretch oracle."""

import math

import pytest

from ssdo.core.base import AnswerCase
from ssdo.core.exact import build_exact, verify_exhaustive
from ssdo.core.graph import Graph, sssp
from ssdo.core.oracle2 import build_oracle2, query2
from ssdo.core.spt import INFINITY_RANK, build_spt
from ssdo.core.treekit import path_vertices
from ssdo.exceptions import BridgeError, QueryError

# Triangle 0-1-2 with a pendant vertex 3 hanging off 2.
PENDANT = [(0, 1, 1), (1, 2, 1), (2, 0, 1), (2, 3, 4)]


def test_graph_a_build(graph_a: Graph) -> None:
    """Test that nothing is marked on the 4-cycle."""
    o, stats = build_oracle2(graph_a, build_spt(graph_a))
    assert o.detour == [7, 6, 5]
    assert o.labels == [INFINITY_RANK] * 4
    assert stats.marked == 0
    assert stats.stored_detours == 3
    assert stats.stored_labels == 4


def test_graph_a_queries(graph_a: Graph) -> None:
    """Test detour answers and unaffected targets on the 4-cycle."""
    o, _ = build_oracle2(graph_a, build_spt(graph_a))
    answer = query2(o, (0, 1), 2)
    assert (answer.value, answer.case) == (8, AnswerCase.DETOUR_PATH)
    assert query2(o, (1, 0), 2) == answer
    answer = query2(o, (3, 0), 2)
    assert (answer.value, answer.case) == (2, AnswerCase.NO_FAULT_EFFECT)
    # vertex 1 is above the failed edge (1,2)
    assert query2(o, (1, 2), 1).case is AnswerCase.NO_FAULT_EFFECT


def test_graph_e_marks_vertex_2(graph_e: Graph) -> None:
    """Test that the direct edge to 2 marks it with the first tree edge."""
    o, stats = build_oracle2(graph_e, build_spt(graph_e))
    assert o.detour == [22, 12]
    assert o.labels[2] == 1
    assert stats.marked == 1


def test_graph_e_queries(graph_e: Graph) -> None:
    """Test the doubled answer and the detour answer on the triangle."""
    o, _ = build_oracle2(graph_e, build_spt(graph_e))
    answer = query2(o, (0, 1), 2)
    assert (answer.value, answer.tag) == (22, "DOUBLED_BASE")
    answer = query2(o, (0, 1), 1)
    assert (answer.value, answer.case) == (22, AnswerCase.DETOUR_PATH)


def test_query_rejects_non_edge(graph_a: Graph) -> None:
    """Test that a non-adjacent pair is a query error."""
    o, _ = build_oracle2(graph_a, build_spt(graph_a))
    with pytest.raises(QueryError):
        query2(o, (0, 2), 2)
    with pytest.raises(QueryError):
        query2(o, (0, 1), 9)


def test_strict_mode_rejects_bridge() -> None:
    """Test that a bridge stops a strict build."""
    g = Graph.build(4, 0, PENDANT)
    with pytest.raises(BridgeError) as exc:
        build_oracle2(g, build_spt(g))
    assert exc.value.bridges == [(2, 3)]


def test_non_strict_mode_answers_unreachable() -> None:
    """Test that a non-strict build answers UNREACHABLE across a bridge."""
    g = Graph.build(4, 0, PENDANT)
    spt = build_spt(g)
    o, stats = build_oracle2(g, spt, strict=False)
    assert stats.bridges == 1
    assert math.isinf(query2(o, (2, 3), 3).value)
    report = verify_exhaustive(lambda u, v, t: o.query(u, v, t).value, build_exact(g, spt), bound=2.0)
    assert report.passed


def test_marked_labels_are_tree_edge_ranks(random_graph) -> None:
    """Test that every finite label is a rank and marked vertices are counted once."""
    g = random_graph(60, 150, seed=12)
    o, stats = build_oracle2(g, build_spt(g))
    finite = [r for r in o.labels if r != INFINITY_RANK]
    assert len(finite) == stats.marked
    assert all(1 <= r < g.n for r in finite)
    assert o.labels[g.source] == INFINITY_RANK


def test_marked_vertices_have_no_marked_ancestor_below_the_edge(random_graph) -> None:
    """Test that a vertex marked for (u,v) has no other marked vertex on pi_T(v, t) with an earlier label."""
    for seed in range(4):
        g = random_graph(50, 100, seed=seed)
        spt = build_spt(g)
        o, _ = build_oracle2(g, spt)
        for t, rank in enumerate(o.labels):
            if rank == INFINITY_RANK:
                continue
            v = spt.child_of(rank)
            x = spt.parent[t]
            while x >= 0 and spt.is_descendant(x, v):
                assert o.labels[x] > rank
                x = spt.parent[x]


@pytest.mark.parametrize("seed", range(8))
def test_stretch_on_random_graphs(random_graph, seed: int) -> None:
    """Test d <= answer <= 2d for every tree edge and target."""
    g = random_graph(40, 90, seed=seed)
    spt = build_spt(g)
    o, _ = build_oracle2(g, spt)
    report = verify_exhaustive(lambda u, v, t: o.query(u, v, t).value, build_exact(g, spt), bound=2.0)
    assert report.passed, [w.describe() for w in report.violations[:5]]
    assert report.max_stretch <= 2.0 + 1e-9


def positive_weights(g: Graph) -> Graph:
    return Graph.build(g.n, g.source, [(u, v, w + 1) for u, v, w in g.edges])


@pytest.mark.parametrize("seed", range(5))
def test_marked_vertex_detour_below_twice_distance(random_graph, seed: int) -> None:
    """Test that a vertex labeled with e keeps d_{G-e}(s,t) < 2 d(s,t)."""
    g = positive_weights(random_graph(40, 90, seed=seed))
    spt = build_spt(g)
    o, _ = build_oracle2(g, spt)
    tbl = build_exact(g, spt)
    for t, rank in enumerate(o.labels):
        if rank != INFINITY_RANK:
            assert tbl.query(*spt.tree_edge(rank), t) < 2 * spt.dist[t]


@pytest.mark.parametrize("seed", range(5))
def test_labeled_replacement_avoids_tree_path(random_graph, seed: int) -> None:
    """Test that failing any tree edge below the label edge leaves d_{G-e}(s,t) unchanged."""
    g = random_graph(30, 60, seed=seed)
    spt = build_spt(g)
    o, _ = build_oracle2(g, spt)
    for t, rank in enumerate(o.labels):
        if rank == INFINITY_RANK:
            continue
        v = spt.child_of(rank)
        e = spt.parent_edge[v]
        expected = sssp(g, g.source, excluded=e).dist[t]
        for x in path_vertices(spt, v, t)[1:]:
            f = spt.parent_edge[x]
            assert sssp(g, g.source, excluded=[e, f]).dist[t] == pytest.approx(expected, rel=1e-12)
