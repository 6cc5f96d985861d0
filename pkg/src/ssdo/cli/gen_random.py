"""CLI command for generating random 2-edge-connected graphs."""

from pathlib import Path

import click

from ssdo.cli.common import FILE_PATH, InputError
from ssdo.config import get_config
from ssdo.core.generators import random_two_edge_connected_graph
from ssdo.core.graph import format_graph
from ssdo.exceptions import SsdoError


@click.command("gen-random")
@click.option("--n", "n", type=int, required=True, help="Vertex count")
@click.option("--m", "m", type=int, required=True, help="Edge count (n <= m <= n(n-1)/2)")
@click.option("--seed", type=int, default=None, help="Generator seed (default from config)")
@click.option("--max-weight", type=click.IntRange(min=0), default=100, show_default=True, help="Largest edge weight")
@click.option("--out", type=FILE_PATH, default=None, help="Output file")
def gen_random(n: int, m: int, seed: int | None, max_weight: int, out: Path | None) -> None:
    """Generate a seeded random 2-edge-connected graph with source 0."""
    seed = get_config().seed if seed is None else seed
    try:
        g = random_two_edge_connected_graph(n, m, seed=seed, max_weight=max_weight)
    except SsdoError as e:
        raise InputError(str(e)) from e
    text = format_graph(g, comment=f"random 2-edge-connected graph, seed {seed}")
    if out is None:
        click.echo(text, nl=False)
        return
    try:
        out.write_text(text)
    except OSError as e:
        raise InputError(f"cannot write {out}: {e.strerror or e}") from e
    click.echo(f"Wrote {out} (n={g.n}, m={g.m})")
