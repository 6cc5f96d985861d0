"""CLI command for benchmarking oracle size and query latency."""

import time
from pathlib import Path

import click
import numpy as np

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
from ssdo.core.container import OracleContainer, serialize
from ssdo.core.exact import sample_pairs
from ssdo.core.oracle_eps import OracleEps
from ssdo.core.spt import build_spt
from ssdo.exceptions import SsdoError

PERCENTILES = (50, 90, 99)


@click.command()
@click.option("--graph", "graph_path", required=True, type=FILE_PATH, help="Graph file")
@click.option("--stretch", type=STRETCH, default=None, help="2 or eps:<value in (0,1)> (default from config)")
@click.option("--queries", type=click.IntRange(min=0), default=None, help="Timed queries (default from config)")
@click.option("--seed", type=int, default=None, help="Workload seed (default from config)")
def bench(graph_path: Path, stretch: StretchSpec | None, queries: int | None, seed: int | None) -> None:
    """Report build time, container size, storage against budget, and query latency."""
    cfg = get_config()
    stretch = resolve_stretch(stretch)
    queries = cfg.bench_queries if queries is None else queries
    seed = cfg.seed if seed is None else seed
    g = read_graph(graph_path)
    try:
        spt = build_spt(g)
        built = build_oracle(g, spt, stretch, cfg.strict)
    except SsdoError as e:
        raise InputError(str(e)) from e
    oracle = built.oracle

    n = g.n
    echo_counters(built.counters)
    click.echo(f"container bytes: {len(serialize(OracleContainer(oracle, g.fingerprint())))}")
    if isinstance(oracle, OracleEps):
        stored = (n - 1) + sum(len(b.entries) for b in oracle.buckets)
        budget = (n - 1) + n * (oracle.k + 1)
        click.echo(f"stored entries: {stored} of budget {budget} ((n-1) + n(k+1))")
    else:
        click.echo(f"stored entries: {len(oracle.detour)} detours + {len(oracle.labels)} labels")

    pairs = sample_pairs(spt, queries, seed, edge_pool=max(n - 1, 1))
    if not pairs:
        click.echo("queries: 0 (build only)")
        return
    latencies = np.empty(len(pairs), dtype=np.float64)
    for i, (rank, t) in enumerate(pairs):
        u, v = spt.tree_edge(rank)
        started = time.perf_counter_ns()
        oracle.query(u, v, t)
        latencies[i] = (time.perf_counter_ns() - started) / 1000.0
    click.echo(f"queries: {len(pairs)} (seed {seed})")
    for p, value in zip(PERCENTILES, np.percentile(latencies, PERCENTILES)):
        click.echo(f"latency p{p}: {value:.1f} us")
    click.echo(f"latency max: {latencies.max():.1f} us")
