"""SSDO CLI entry point."""

import logging
from typing import Any

import click

from ssdo.cli.bench import bench
from ssdo.cli.build import build
from ssdo.cli.common import USAGE_EXIT, InputError
from ssdo.cli.config import config
from ssdo.cli.gen_lb import gen_lb
from ssdo.cli.gen_random import gen_random
from ssdo.cli.init import init
from ssdo.cli.query import query
from ssdo.cli.verify import verify
from ssdo.config import get_config

LOG_FORMAT = "%(levelname)s %(name)s: %(message)s"

# Commands that manage the config file itself and must work when it is broken
SKIP_CONFIG_COMMANDS = {"init", "config"}


class SsdoGroup(click.Group):
    """Group that reports usage errors with exit status 1."""

    def make_context(
        self, info_name: str | None, args: list[str], parent: click.Context | None = None, **extra: Any
    ) -> click.Context:
        try:
            return super().make_context(info_name, args, parent=parent, **extra)
        except click.UsageError as e:
            e.exit_code = USAGE_EXIT
            raise

    def invoke(self, ctx: click.Context) -> Any:
        try:
            return super().invoke(ctx)
        except click.UsageError as e:
            e.exit_code = USAGE_EXIT
            raise


@click.group(cls=SsdoGroup)
@click.option("--log-level", default=None, help="Override the configured log level (DEBUG, INFO, WARNING, ERROR)")
@click.version_option(package_name="ssdo")
@click.pass_context
def cli(ctx: click.Context, log_level: str | None) -> None:
    """SSDO - single-source edge-fault-tolerant distance oracles.

    Build, query and verify 2-stretch and (1+eps)-stretch distance oracles.
    """
    if ctx.invoked_subcommand in SKIP_CONFIG_COMMANDS and log_level is None:
        return
    try:
        level = log_level or get_config().log_level
    except ValueError as e:
        raise InputError(f"invalid configuration: {e}") from e
    numeric = logging.getLevelName(level.upper())
    if not isinstance(numeric, int):
        raise InputError(f"unknown log level {level!r}")
    logging.basicConfig(level=numeric, format=LOG_FORMAT, force=True)


cli.add_command(bench)
cli.add_command(build)
cli.add_command(config)
cli.add_command(gen_lb)
cli.add_command(gen_random)
cli.add_command(init)
cli.add_command(query)
cli.add_command(verify)
