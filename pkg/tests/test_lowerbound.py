"""Tests for the lower-bound instance family."""

from pathlib import Path

import pytest

from ssdo.core.exact import build_exact
from ssdo.core.graph import Graph
from ssdo.core.lowerbound import (
    LowerBoundInstance,
    LowerBoundParams,
    SeparationReport,
    check_separation,
    enumerate_subgraph_family,
    feasible_y,
    gen_lower_bound,
    max_weight,
    write_instance,
)
from ssdo.core.spt import build_spt
from ssdo.exceptions import InfeasibleParamsError


def separation(inst: LowerBoundInstance) -> SeparationReport:
    return check_separation(inst, build_exact(inst.graph, build_spt(inst.graph)))


def test_spoke_weights_eta_4() -> None:
    """Test x_i for eta=4 with unit slack."""
    inst = gen_lower_bound(LowerBoundParams(eta=4, y=1))
    assert inst.x == [3, 5, 7, 9]
    assert inst.z == [4, 6, 8, 10]
    assert inst.graph.n == 13
    assert inst.graph.m == 4 + 4 + 16 + 4
    assert inst.graph.source == inst.u(4) == 0


def test_default_y_is_feasible_power_of_two() -> None:
    """Test that with delta=1 the smallest feasible y is 1."""
    p = LowerBoundParams(eta=2)
    assert feasible_y(p) == 1.0
    assert gen_lower_bound(p).graph.n == 7


def test_separation_eta_4() -> None:
    """Test that every (e_i, t_h) pair needs its bipartite edge."""
    report = separation(gen_lower_bound(LowerBoundParams(eta=4, y=1)))
    assert report.passed
    assert len(report.checks) == 16
    first = report.checks[0]
    assert (first.i, first.h, first.replacement, first.alternative) == (1, 1, 4, 6)


def test_separation_with_sublinear_slack() -> None:
    """Test a delta < 1 instance with the computed y."""
    inst = gen_lower_bound(LowerBoundParams(eta=2, k=1, delta=0.5))
    assert inst.y == 2.0**27
    assert separation(inst).passed
    assert max_weight(inst) == inst.x[-1]


def test_separation_detects_broken_spokes() -> None:
    """Test that a cheap spoke breaks the base distances."""
    inst = gen_lower_bound(LowerBoundParams(eta=2, y=1))
    # a cheap spoke lets v_1 be reached directly
    cheap = [(u, v, 1.0 if (u, v) == (inst.u(1), inst.v(1)) else w) for u, v, w in inst.graph.edges]
    graph = Graph.build(inst.graph.n, inst.graph.source, cheap)
    broken = LowerBoundInstance(inst.params, graph, inst.y, inst.x, inst.z, inst.path_edges, inst.bipartite_edges)
    report = separation(broken)
    assert not report.passed
    assert report.base_failures


@pytest.mark.parametrize(
    "params, message",
    [
        (LowerBoundParams(eta=1, k=2), "eta must be >= k\\+1"),
        (LowerBoundParams(eta=3, k=0.5), "k must be >= 1"),
        (LowerBoundParams(eta=3, delta=0), "delta must be in"),
        (LowerBoundParams(eta=3, gamma=2), "gamma must be in"),
        (LowerBoundParams(eta=3, y=-1), "y must be in"),
        (LowerBoundParams(eta=2, k=1, delta=0.005, y=1e70), "y must be in"),
        (LowerBoundParams(eta=2, k=1, delta=0.005, y=2.0**50), "does not exceed"),
        (LowerBoundParams(eta=2, y=2.0**52), "edge weight .* reaches 2\\^53"),
        (LowerBoundParams(eta=5, k=4, y=1), "2y = 2 does not exceed"),
    ],
)
def test_infeasible_params(params: LowerBoundParams, message: str) -> None:
    """Test that out-of-range parameters are rejected."""
    with pytest.raises(InfeasibleParamsError, match=message):
        gen_lower_bound(params)


def test_enumerate_family_eta_2() -> None:
    """Test that all 16 bipartite subsets are pairwise distinguished."""
    report = enumerate_subgraph_family(gen_lower_bound(LowerBoundParams(eta=2, y=1)))
    assert report.subsets == 16
    assert report.pairs == 120
    assert report.passed


def test_enumerate_family_limit() -> None:
    """Test that enumeration refuses large eta."""
    with pytest.raises(InfeasibleParamsError):
        enumerate_subgraph_family(gen_lower_bound(LowerBoundParams(eta=4, y=1)))


def test_write_instance(tmp_path: Path) -> None:
    """Test the graph file and its metadata."""
    inst = gen_lower_bound(LowerBoundParams(eta=4, y=1))
    meta_path = write_instance(inst, tmp_path / "lb.txt")
    assert meta_path == tmp_path / "lb.txt.meta"
    meta = dict(line.split("=", 1) for line in meta_path.read_text().splitlines())
    assert meta["x"] == "3,5,7,9"
    assert meta["n"] == "13"
    assert meta["roles"].split(",")[:5] == ["u4", "u3", "u2", "u1", "u0"]
    assert meta["roles"].split(",")[-1] == "v4"
    assert (tmp_path / "lb.txt").read_text().startswith("# lower-bound instance eta=4\n13 28 0\n")


def test_heavy_instance_warns(caplog: pytest.LogCaptureFixture) -> None:
    """Test that weights near the float64 integer limit are logged."""
    with caplog.at_level("WARNING", logger="ssdo.core.lowerbound"):
        inst = gen_lower_bound(LowerBoundParams(eta=2, y=2.0**40))
    assert max_weight(inst) == inst.x[-1] == 2.0**41 + 3
    assert "within 2^13 of float64 integer precision" in caplog.text
