"""Tests for per-subtree replacement distances."""

from ssdo.core.graph import UNREACHABLE, Graph, sssp
from ssdo.core.replacement import subtree_replacement_distances
from ssdo.core.spt import build_spt


def test_graph_a_rows(graph_a: Graph) -> None:
    """Test replacement rows on the 4-cycle."""
    spt = build_spt(graph_a)
    assert subtree_replacement_distances(graph_a, spt, 1) == [7, 6, 5]
    assert subtree_replacement_distances(graph_a, spt, 2) == [6, 5]
    assert subtree_replacement_distances(graph_a, spt, 3) == [5]


def test_graph_e_rows(graph_e: Graph) -> None:
    """Test replacement rows on the triangle."""
    spt = build_spt(graph_e)
    assert subtree_replacement_distances(graph_e, spt, 1) == [22, 12]
    assert subtree_replacement_distances(graph_e, spt, 2) == [12]


def test_cut_off_subtree() -> None:
    """Test that a bridge leaves its whole subtree unreachable."""
    g = Graph.build(4, 0, [(0, 1, 1), (1, 2, 1), (2, 0, 1), (2, 3, 4)])
    spt = build_spt(g)
    assert subtree_replacement_distances(g, spt, 3) == [UNREACHABLE]


def test_rows_match_full_dijkstra(random_graph) -> None:
    """Test every subtree row against a full exclusion Dijkstra."""
    for seed in range(6):
        g = random_graph(35, 70, seed=seed)
        spt = build_spt(g)
        for v in spt.order[1:]:
            full = sssp(g, g.source, excluded=spt.parent_edge[v]).dist
            assert subtree_replacement_distances(g, spt, v) == [full[x] for x in spt.subtree(v)]
