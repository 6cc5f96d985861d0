"""CLI command for building and saving an oracle."""

from pathlib import Path

import click

from ssdo.cli.common import (
    FILE_PATH,
    STRETCH,
    InputError,
    StretchSpec,
    build_oracle,
    echo_counters,
    read_graph,
    resolve_stretch,
)
from ssdo.config import get_config
from ssdo.core.container import save_oracle
from ssdo.core.spt import build_spt
from ssdo.exceptions import SsdoError


@click.command()
@click.option("--graph", "graph_path", required=True, type=FILE_PATH, help="Graph file")
@click.option("--stretch", type=STRETCH, default=None, help="2 or eps:<value in (0,1)> (default from config)")
@click.option("--out", required=True, type=FILE_PATH, help="Container to write")
@click.option("--strict/--no-strict", default=None, help="Refuse graphs with bridges in the tree (default from config)")
def build(graph_path: Path, stretch: StretchSpec | None, out: Path, strict: bool | None) -> None:
    """Build an oracle for GRAPH and write it to OUT."""
    stretch = resolve_stretch(stretch)
    if strict is None:
        strict = get_config().strict
    g = read_graph(graph_path)
    try:
        spt = build_spt(g)
        built = build_oracle(g, spt, stretch, strict)
        size = save_oracle(out, built.oracle, g)
    except SsdoError as e:
        raise InputError(str(e)) from e
    except OSError as e:
        raise InputError(f"cannot write {out}: {e.strerror or e}") from e

    if built.bridges:
        click.echo(f"warning: {built.bridges} tree edges are bridges; their subtrees become unreachable", err=True)
    echo_counters(built.counters)
    click.echo(f"Wrote {out} ({size} bytes)")
