"""CLI command for checking an oracle against exact post-failure distances."""

from pathlib import Path

import click

from ssdo.cli.common import (
    FILE_PATH,
    STRETCH,
    InputError,
    StretchSpec,
    VerificationFailed,
    build_oracle,
    read_graph,
    resolve_stretch,
    stretch_of,
)
from ssdo.config import get_config
from ssdo.core.container import load_oracle
from ssdo.core.exact import build_exact, verify_exhaustive, verify_sampled
from ssdo.core.spt import build_spt
from ssdo.exceptions import SsdoError

# Witnesses printed before the rest are summarized
MAX_WITNESSES = 10


@click.command()
@click.option("--graph", "graph_path", required=True, type=FILE_PATH, help="Graph file")
@click.option("--stretch", type=STRETCH, default=None, help="2 or eps:<value in (0,1)> (default from config)")
@click.option("--samples", type=click.IntRange(min=0), default=0, help="Check this many seeded pairs (0 = all)")
@click.option("--seed", type=int, default=None, help="Sampling seed (default from config)")
@click.option(
    "--oracle",
    "oracle_path",
    type=FILE_PATH,
    default=None,
    help="Verify this saved container instead of building one",
)
@click.option("--workers", type=click.IntRange(min=1), default=None, help="Processes for the exact table")
def verify(
    graph_path: Path,
    stretch: StretchSpec | None,
    samples: int,
    seed: int | None,
    oracle_path: Path | None,
    workers: int | None,
) -> None:
    """Check oracle answers against exact distances for every (edge, target) pair."""
    cfg = get_config()
    g = read_graph(graph_path)
    try:
        spt = build_spt(g)
        if oracle_path is not None:
            container = load_oracle(oracle_path)
            container.check_graph(g)
            oracle = container.oracle
        else:
            oracle = build_oracle(g, spt, resolve_stretch(stretch), cfg.strict).oracle
    except SsdoError as e:
        raise InputError(str(e)) from e
    except OSError as e:
        raise InputError(f"cannot read {oracle_path}: {e.strerror or e}") from e

    spec = stretch_of(oracle)

    def ask(u: int, v: int, t: int) -> float:
        return oracle.query(u, v, t).value

    if samples:
        report = verify_sampled(
            ask, g, spt, spec.bound, samples, seed=cfg.seed if seed is None else seed, tolerance=cfg.tolerance
        )
    else:
        if g.n > cfg.verify_max_n:
            raise InputError(
                f"graph has {g.n} vertices, exhaustive verification allows {cfg.verify_max_n}; use --samples"
            )
        tbl = build_exact(g, spt, workers=workers or cfg.workers)
        report = verify_exhaustive(ask, tbl, spec.bound, tolerance=cfg.tolerance)

    click.echo(f"oracle: stretch {spec}")
    click.echo(f"checked: {report.checked} pairs")
    click.echo(f"max stretch: {report.max_stretch:.6f} (bound {spec.bound:g})")
    if report.passed:
        click.echo("result: pass")
        return
    for violation in report.violations[:MAX_WITNESSES]:
        click.echo(f"violation: {violation.describe()}")
    if len(report.violations) > MAX_WITNESSES:
        click.echo(f"... and {len(report.violations) - MAX_WITNESSES} more")
    raise VerificationFailed(f"{len(report.violations)} stretch violations")
