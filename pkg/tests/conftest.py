"""Pytest fixtures for SSDO tests."""

import math
from collections.abc import Callable, Collection
from pathlib import Path

import networkx as nx
import pytest

from ssdo.config import CONFIG_SCHEMA, reset_config
from ssdo.core.generators import random_two_edge_connected_graph
from ssdo.core.graph import Graph, parse_graph

# Cycle 0-1-2-3 closed by a heavy edge back to the source.
GRAPH_A = "4 4 0\n0 1 1\n1 2 1\n2 3 1\n3 0 5\n"

# Triangle whose direct edge to 2 loses to the path through 1.
GRAPH_E = "3 3 0\n0 1 1\n1 2 10\n0 2 12\n"


@pytest.fixture(autouse=True)
def reset_ssdo_config() -> None:
    """Reset config singleton between tests."""
    reset_config()
    yield
    reset_config()


@pytest.fixture(autouse=True)
def isolate_ssdo_env_vars(monkeypatch: pytest.MonkeyPatch) -> None:
    """Remove all SSDO env vars to prevent test pollution."""
    for schema in CONFIG_SCHEMA.values():
        if schema["env"]:
            monkeypatch.delenv(schema["env"], raising=False)


@pytest.fixture(autouse=True)
def isolate_config_path(tmp_path: Path, monkeypatch: pytest.MonkeyPatch) -> Path:
    """Use temporary config path to avoid writing to a real project config."""
    import ssdo.cli.config
    import ssdo.cli.init
    import ssdo.config

    config_dir = tmp_path / "config" / "ssdo"

    def mock_get_config_path(root=None, local: bool = True):
        filename = ssdo.config.CONFIG_FILENAME_LOCAL if local else ssdo.config.CONFIG_FILENAME_PROJECT
        return config_dir / filename

    def mock_get_active_config_path(root=None):
        local_path = config_dir / ssdo.config.CONFIG_FILENAME_LOCAL
        if local_path.exists():
            return local_path
        return config_dir / ssdo.config.CONFIG_FILENAME_PROJECT

    def mock_config_exists(root=None):
        local_path = config_dir / ssdo.config.CONFIG_FILENAME_LOCAL
        project_path = config_dir / ssdo.config.CONFIG_FILENAME_PROJECT
        return local_path.exists() or project_path.exists()

    monkeypatch.setattr(ssdo.config, "get_config_path", mock_get_config_path)
    monkeypatch.setattr(ssdo.config, "get_active_config_path", mock_get_active_config_path)
    monkeypatch.setattr(ssdo.config, "config_exists", mock_config_exists)

    # Also patch in modules that import these functions directly
    monkeypatch.setattr(ssdo.cli.init, "config_exists", mock_config_exists)
    monkeypatch.setattr(ssdo.cli.config, "get_active_config_path", mock_get_active_config_path)

    return config_dir


@pytest.fixture
def graph_a() -> Graph:
    return parse_graph(GRAPH_A)


@pytest.fixture
def graph_e() -> Graph:
    return parse_graph(GRAPH_E)


@pytest.fixture
def random_graph() -> Callable[..., Graph]:
    """Factory for seeded random 2-edge-connected graphs."""

    def make(n: int, m: int | None = None, seed: int = 0, max_weight: int = 100) -> Graph:
        if m is None:
            m = min(2 * n, n * (n - 1) // 2)
        return random_two_edge_connected_graph(n, m, seed=seed, max_weight=max_weight)

    return make


def brute_force_distances(g: Graph, excluded: Collection[int] = ()) -> list[float]:
    """Distances from the source with networkx Dijkstra on g minus the excluded edge indices."""
    nxg = nx.Graph()
    nxg.add_nodes_from(range(g.n))
    skip = set(excluded)
    for i, (u, v, w) in enumerate(g.edges):
        if i not in skip:
            nxg.add_edge(u, v, weight=w)
    lengths = nx.single_source_dijkstra_path_length(nxg, g.source, weight="weight")
    return [float(lengths.get(x, math.inf)) for x in range(g.n)]


@pytest.fixture
def brute_force() -> Callable[..., list[float]]:
    return brute_force_distances


@pytest.fixture
def write_graph(tmp_path: Path) -> Callable[[str, str], Path]:
    """Write graph text to a file under tmp_path."""

    def write(text: str, name: str = "graph.txt") -> Path:
        path = tmp_path / name
        path.write_text(text)
        return path

    return write


@pytest.fixture
def graph_a_file(write_graph: Callable[[str, str], Path]) -> Path:
    return write_graph(GRAPH_A, "a.txt")


@pytest.fixture
def graph_e_file(write_graph: Callable[[str, str], Path]) -> Path:
    return write_graph(GRAPH_E, "e.txt")


@pytest.fixture
def cli_runner(tmp_path: Path, isolate_config_path: Path, monkeypatch: pytest.MonkeyPatch):
    """CLI runner working inside a scratch directory with a config file present."""
    workdir = tmp_path / "work"
    workdir.mkdir()
    monkeypatch.chdir(workdir)

    import ssdo.config

    config_path = isolate_config_path / ssdo.config.CONFIG_FILENAME_LOCAL
    config_path.parent.mkdir(parents=True, exist_ok=True)
    config_path.write_text("log_level: WARNING\n")

    class SsdoCliRunner:
        """Wrapper around Click's CliRunner with simpler interface."""

        def invoke(self, args: list[str], input: str | None = None):
            """Invoke CLI command with given arguments."""
            from click.testing import CliRunner

            from ssdo.cli import cli

            runner = CliRunner()
            return runner.invoke(cli, args, input=input)

    return SsdoCliRunner()
