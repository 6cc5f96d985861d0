"""CLI command for querying a saved oracle."""

from pathlib import Path

import click

from ssdo.cli.common import FILE_PATH, InputError, format_distance, read_graph
from ssdo.core.container import load_oracle
from ssdo.exceptions import SsdoError


@click.command()
@click.option("--oracle", "oracle_path", required=True, type=FILE_PATH, help="Container")
@click.option("--fail", nargs=2, type=int, required=True, metavar="U V", help="Endpoints of the failing edge")
@click.option("--target", required=True, type=int, help="Target vertex")
@click.option(
    "--graph",
    "graph_path",
    type=FILE_PATH,
    default=None,
    help="Refuse unless the oracle was built on this graph",
)
def query(oracle_path: Path, fail: tuple[int, int], target: int, graph_path: Path | None) -> None:
    """Print the approximate source-to-TARGET distance after FAIL breaks."""
    try:
        container = load_oracle(oracle_path)
        if graph_path is not None:
            container.check_graph(read_graph(graph_path))
        answer = container.oracle.query(fail[0], fail[1], target)
    except SsdoError as e:
        raise InputError(str(e)) from e
    except OSError as e:
        raise InputError(f"cannot read {oracle_path}: {e.strerror or e}") from e
    click.echo(f"{format_distance(answer.value)} {answer.tag}")
