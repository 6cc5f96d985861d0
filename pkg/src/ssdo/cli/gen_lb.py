"""CLI command for generating lower-bound instances."""

from pathlib import Path

import click

from ssdo.cli.common import FILE_PATH, InputError, VerificationFailed, format_distance
from ssdo.core.exact import build_exact
from ssdo.core.lowerbound import (
    LowerBoundParams,
    check_separation,
    enumerate_subgraph_family,
    gen_lower_bound,
    write_instance,
)
from ssdo.core.spt import build_spt
from ssdo.exceptions import SsdoError


@click.command("gen-lb")
@click.option("--eta", type=int, required=True, help="Path length and bipartite side size (>= k+1)")
@click.option("--k", type=float, default=1.0, show_default=True, help="Slack multiplier k >= 1")
@click.option("--delta", type=float, default=1.0, show_default=True, help="Slack exponent delta in (0,1]")
@click.option("--gamma", type=float, default=1.0, show_default=True, help="Spoke gap gamma in (0,1]")
@click.option("--y", type=float, default=None, help="Star and bipartite weight (default: smallest feasible power of 2)")
@click.option("--out", type=FILE_PATH, default=None, help="Graph file to write")
@click.option("--enumerate", "enumerate_family", is_flag=True, help="Check every bipartite-edge subset (eta <= 3)")
def gen_lb(
    eta: int, k: float, delta: float, gamma: float, y: float | None, out: Path | None, enumerate_family: bool
) -> None:
    """Generate an instance where every bipartite edge is needed for beta-additive answers."""
    try:
        inst = gen_lower_bound(LowerBoundParams(eta=eta, k=k, delta=delta, gamma=gamma, y=y))
        spt = build_spt(inst.graph)
        report = check_separation(inst, build_exact(inst.graph, spt))
        family = enumerate_subgraph_family(inst) if enumerate_family else None
    except SsdoError as e:
        raise InputError(str(e)) from e

    click.echo(f"instance: eta={eta} n={inst.graph.n} m={inst.graph.m} y={format_distance(inst.y)}")
    click.echo("x: " + " ".join(format_distance(x) for x in inst.x))
    if out is not None:
        try:
            meta = write_instance(inst, out)
        except OSError as e:
            raise InputError(f"cannot write {out}: {e.strerror or e}") from e
        click.echo(f"Wrote {out} and {meta}")

    for failure in report.base_failures:
        click.echo(f"base check failed: {failure}")
    for check in report.failures:
        click.echo(
            f"separation failed: i={check.i} h={check.h} "
            f"replacement {format_distance(check.replacement)} alternative {format_distance(check.alternative)}"
        )
    passed = len(report.checks) - len(report.failures)
    click.echo(f"separation: {passed}/{len(report.checks)} pairs pass")
    if family is not None:
        click.echo(
            f"family: {family.subsets} subsets, {family.pairs - len(family.undistinguished)}/{family.pairs} "
            "pairs distinguished"
        )

    if not report.passed or (family is not None and not family.passed):
        raise VerificationFailed("lower-bound checks failed")
