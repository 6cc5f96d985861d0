"""Tests for graph parsing, validation and shortest paths."""

import io
import math

import pytest

from ssdo.core.graph import NO_EDGE, UNREACHABLE, Graph, format_graph, parse_graph, sssp, validate_fault_coverage
from ssdo.core.spt import build_spt
from ssdo.exceptions import GraphParseError, GraphValidationError
from tests.conftest import GRAPH_A, brute_force_distances


def test_parse_graph_a(graph_a: Graph) -> None:
    """Test parsing the 4-cycle example."""
    assert graph_a.n == 4
    assert graph_a.m == 4
    assert graph_a.source == 0
    assert graph_a.edges[3] == (3, 0, 5.0)


def test_parse_skips_comments_and_blank_lines() -> None:
    """Test that '#' lines and blank lines are ignored."""
    g = parse_graph("# header comment\n\n3 2 1\n# edge list\n0 1 2.5\n\n1 2 1\n")
    assert g.n == 3
    assert g.source == 1
    assert g.edges[0].w == 2.5


def test_parse_accepts_text_stream() -> None:
    """Test parsing from a file-like object."""
    g = parse_graph(io.StringIO(GRAPH_A))
    assert g.m == 4


def test_parse_reports_line_and_column() -> None:
    """Test that a bad weight names its line and column."""
    with pytest.raises(GraphParseError) as exc:
        parse_graph("2 1 0\n0 1 heavy\n")
    assert exc.value.line == 2
    assert exc.value.column == 5
    assert "line 2, column 5" in str(exc.value)


def test_parse_rejects_wrong_field_count() -> None:
    """Test that edge lines need exactly three fields."""
    with pytest.raises(GraphParseError) as exc:
        parse_graph("2 1 0\n0 1\n")
    assert exc.value.line == 2


def test_parse_rejects_missing_edges() -> None:
    """Test that the declared edge count is enforced."""
    with pytest.raises(GraphParseError, match="declared 2 edges, found 1"):
        parse_graph("3 2 0\n0 1 1\n")


def test_parse_rejects_extra_edges() -> None:
    """Test that surplus edge lines are rejected."""
    with pytest.raises(GraphParseError, match="more than the declared 1 edges"):
        parse_graph("3 1 0\n0 1 1\n1 2 1\n")


def test_parse_rejects_empty_input() -> None:
    """Test that a missing header is a parse error."""
    with pytest.raises(GraphParseError, match="missing header"):
        parse_graph("# nothing here\n")


@pytest.mark.parametrize(
    "text, message",
    [
        ("2 1 0\n0 0 1\n", "self-loop"),
        ("2 2 0\n0 1 1\n1 0 2\n", "duplicate edge"),
        ("2 1 0\n0 1 -1\n", "negative weight"),
        ("2 1 0\n0 1 inf\n", "non-finite"),
        ("2 1 0\n0 2 1\n", "out of range"),
        ("2 1 5\n0 1 1\n", "source 5 out of range"),
    ],
)
def test_validation_errors(text: str, message: str) -> None:
    """Test that well-formed but invalid graphs are rejected."""
    with pytest.raises(GraphValidationError, match=message):
        parse_graph(text)


def test_sssp_graph_a(graph_a: Graph) -> None:
    """Test fault-free distances and parents on the 4-cycle."""
    result = sssp(graph_a, 0)
    assert result.dist == [0, 1, 2, 3]
    assert [p[0] if p else None for p in result.parent] == [None, 0, 1, 2]


def test_sssp_excluding_edge(graph_a: Graph) -> None:
    """Test that excluding edge (0,1) forces the long way round."""
    assert sssp(graph_a, 0, excluded=graph_a.find_edge(0, 1)).dist == [0, 7, 6, 5]


def test_sssp_excluding_several_edges(graph_a: Graph) -> None:
    """Test that excluding both edges at the source disconnects everything else."""
    result = sssp(graph_a, 0, excluded=[graph_a.find_edge(0, 1), graph_a.find_edge(3, 0)])
    assert result.dist == [0, UNREACHABLE, UNREACHABLE, UNREACHABLE]
    assert result.parent[2] is None


def test_sssp_no_edge_sentinel(graph_a: Graph) -> None:
    """Test that NO_EDGE behaves like no exclusion."""
    assert sssp(graph_a, 0, excluded=NO_EDGE).dist == sssp(graph_a, 0).dist


def test_sssp_rejects_bad_exclusion(graph_a: Graph) -> None:
    """Test that an out-of-range edge index is rejected."""
    with pytest.raises(GraphValidationError):
        sssp(graph_a, 0, excluded=17)


def test_sssp_tie_prefers_smaller_parent() -> None:
    """Test that equal-distance relaxations keep the smaller parent id."""
    # 3 is reachable at distance 2 through 1 and through 2
    g = Graph.build(4, 0, [(0, 2, 1), (0, 1, 1), (2, 3, 1), (1, 3, 1)])
    assert sssp(g, 0).parent[3][0] == 1


def test_sssp_zero_weight_edges() -> None:
    """Test that zero-weight edges give equal distances."""
    g = Graph.build(3, 0, [(0, 1, 0), (1, 2, 0), (0, 2, 3)])
    assert sssp(g, 0).dist == [0, 0, 0]


def test_sssp_matches_networkx(random_graph, brute_force) -> None:
    """Test Dijkstra against networkx on random graphs, with and without an exclusion."""
    for seed in range(10):
        g = random_graph(30, 60, seed=seed)
        assert sssp(g, g.source).dist == brute_force(g)
        assert sssp(g, g.source, excluded=seed).dist == brute_force(g, [seed])


def test_validate_fault_coverage_cycle(graph_a: Graph) -> None:
    """Test that a cycle has no bridges."""
    assert validate_fault_coverage(graph_a, build_spt(graph_a)) == []


def test_validate_fault_coverage_finds_pendant_edge() -> None:
    """Test that a pendant vertex hanging off a cycle is reported."""
    g = Graph.build(4, 0, [(0, 1, 1), (1, 2, 1), (2, 0, 1), (2, 3, 4)])
    assert validate_fault_coverage(g, build_spt(g)) == [(2, 3)]


def test_validate_fault_coverage_matches_brute_force(random_graph) -> None:
    """Test bridge detection by deleting each tree edge."""
    for seed in range(5):
        base = random_graph(20, 22, seed=seed)
        # hang a path off vertex 0 so some tree edges are bridges
        g = Graph.build(23, 0, [*base.edges, (0, 20, 1), (20, 21, 1), (21, 22, 1)])
        spt = build_spt(g)
        expected = []
        for v in spt.order[1:]:
            dist = brute_force_distances(g, [spt.parent_edge[v]])
            if any(math.isinf(d) for d in dist):
                expected.append((spt.parent[v], v))
        assert validate_fault_coverage(g, spt) == expected


def test_fingerprint_ignores_edge_order(graph_a: Graph) -> None:
    """Test that the fingerprint depends on the edge set, not its order."""
    reordered = Graph.build(4, 0, [(0, 3, 5), (2, 3, 1), (1, 0, 1), (2, 1, 1)])
    assert reordered.fingerprint() == graph_a.fingerprint()


def test_fingerprint_changes_with_weight(graph_a: Graph) -> None:
    """Test that changing one weight changes the checksum."""
    heavier = Graph.build(4, 0, [(0, 1, 1), (1, 2, 1), (2, 3, 1), (3, 0, 6)])
    assert heavier.fingerprint()[:3] == graph_a.fingerprint()[:3]
    assert heavier.fingerprint()[3] != graph_a.fingerprint()[3]


def test_format_graph_round_trip() -> None:
    """Test that formatted text parses back to the same graph."""
    g = Graph.build(3, 2, [(0, 1, 0.1), (1, 2, 7), (2, 0, 1e-3)])
    again = parse_graph(format_graph(g, comment="round trip"))
    assert again.edges == g.edges
    assert again.source == 2


def test_edge_keys_sorted(graph_a: Graph) -> None:
    """Test compact edge keys."""
    assert graph_a.edge_keys().tolist() == [0 * 4 + 1, 0 * 4 + 3, 1 * 4 + 2, 2 * 4 + 3]


def test_sssp_is_deterministic(random_graph) -> None:
    """Test that repeated runs give identical parent arrays."""
    g = random_graph(40, 100, seed=3, max_weight=3)
    assert sssp(g, g.source).parent == sssp(g, g.source).parent
