"""CLI command for initializing SSDO configuration."""

import click

from ssdo.config import config_exists, create_default_config


def prompt_config_location() -> bool:
    """Prompt user to choose config location.

    Returns:
        True for local config, False for project config.
    """
    click.echo("Where should SSDO store configuration?")
    click.echo("  [1] Local (personal settings in .ssdo/settings.local.yaml)")
    click.echo("  [2] Project (shared settings in .ssdo/settings.yaml)")
    choice: int = click.prompt("Choice", type=click.IntRange(1, 2), default=1)
    return choice == 1


def run_init(local: bool | None = None, force: bool = False) -> bool:
    """Run the init flow.

    Args:
        local: Where to write the config. None asks the user.
        force: If True, run even if config already exists.

    Returns:
        True if config was created, False if skipped.
    """
    if not force and config_exists():
        return False

    if local is None:
        local = prompt_config_location()
    config_path = create_default_config(local=local)
    click.echo(f"Created config at {config_path}")
    return True


@click.command()
@click.option("--force", "-f", is_flag=True, help="Reinitialize even if config exists")
@click.option("--project", "location", flag_value="project", help="Write shared .ssdo/settings.yaml")
@click.option("--local", "location", flag_value="local", help="Write personal .ssdo/settings.local.yaml")
def init(force: bool, location: str | None) -> None:
    """Initialize SSDO configuration.

    Creates a config file with default values. You can choose between:

    \b
    - Local: Personal settings stored in .ssdo/settings.local.yaml
    - Project: Shared settings stored in .ssdo/settings.yaml
    """
    if not force and config_exists():
        click.echo("SSDO is already initialized. Use --force to reinitialize.")
        return

    run_init(local=None if location is None else location == "local", force=True)
