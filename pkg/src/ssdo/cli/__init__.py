"""SSDO CLI package."""

from ssdo.cli.main import cli

__all__ = ["cli"]
