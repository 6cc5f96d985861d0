"""Shared pieces of the CLI commands: exit codes, stretch specs, oracle builds."""

import math
from dataclasses import dataclass, field
from pathlib import Path

import click

from ssdo.config import get_config
from ssdo.core.graph import Graph, load_graph
from ssdo.core.oracle2 import Oracle2, build_oracle2
from ssdo.core.oracle_eps import OracleEps, build_oracle_eps
from ssdo.core.spt import Spt
from ssdo.exceptions import SsdoError

FILE_PATH = click.Path(dir_okay=False, path_type=Path)

USAGE_EXIT = 1
INPUT_EXIT = 2
VERIFY_EXIT = 3


class InputError(click.ClickException):
    """Invalid input file or parameters (exit status 2)."""

    exit_code = INPUT_EXIT


class VerificationFailed(click.ClickException):
    """Some oracle answer broke its stretch bound (exit status 3)."""

    exit_code = VERIFY_EXIT


@dataclass(frozen=True)
class StretchSpec:
    """Either the 2-stretch oracle or the (1+epsilon) oracle."""

    epsilon: float | None = None

    @property
    def is_two(self) -> bool:
        return self.epsilon is None

    @property
    def bound(self) -> float:
        return 2.0 if self.epsilon is None else 1.0 + self.epsilon

    def __str__(self) -> str:
        return "2" if self.epsilon is None else f"eps:{self.epsilon:g}"


def parse_stretch(text: str) -> StretchSpec:
    """Parse ``2`` or ``eps:<value in (0,1)>``.

    Raises:
        ValueError: On anything else.
    """
    text = text.strip()
    if text == "2":
        return StretchSpec()
    prefix, sep, raw = text.partition(":")
    if prefix != "eps" or not sep:
        raise ValueError(f"stretch must be 2 or eps:<value>, got {text!r}")
    try:
        epsilon = float(raw)
    except ValueError:
        raise ValueError(f"epsilon must be a number, got {raw!r}") from None
    if not (math.isfinite(epsilon) and 0 < epsilon < 1):
        raise ValueError("epsilon must be in (0,1)")
    return StretchSpec(epsilon)


class StretchType(click.ParamType):
    name = "stretch"

    def convert(self, value: object, param: click.Parameter | None, ctx: click.Context | None) -> StretchSpec:
        if isinstance(value, StretchSpec):
            return value
        try:
            return parse_stretch(str(value))
        except ValueError as e:
            self.fail(str(e), param, ctx)


STRETCH = StretchType()


def resolve_stretch(stretch: StretchSpec | None) -> StretchSpec:
    """The command-line stretch, or the configured default."""
    if stretch is not None:
        return stretch
    try:
        return parse_stretch(get_config().stretch)
    except ValueError as e:
        raise InputError(f"invalid configured stretch: {e}") from e


def read_graph(path: Path) -> Graph:
    """Load a graph file, turning parse and I/O errors into exit status 2."""
    try:
        return load_graph(path)
    except SsdoError as e:
        raise InputError(f"{path}: {e}") from e
    except OSError as e:
        raise InputError(f"cannot read {path}: {e.strerror or e}") from e


@dataclass
class BuiltOracle:
    oracle: Oracle2 | OracleEps
    counters: dict[str, str] = field(default_factory=dict)
    bridges: int = 0


def build_oracle(g: Graph, spt: Spt, stretch: StretchSpec, strict: bool) -> BuiltOracle:
    """Build the oracle named by ``stretch`` and collect its size counters."""
    if stretch.epsilon is None:
        o2, stats = build_oracle2(g, spt, strict=strict)
        counters = {
            "kind": "TWO",
            "detours": str(stats.stored_detours),
            "labels": str(stats.stored_labels),
            "marked": str(stats.marked),
            "build time": f"{stats.build_seconds:.3f}s",
        }
        return BuiltOracle(o2, counters, stats.bridges)
    oe, report = build_oracle_eps(g, spt, stretch.epsilon, strict=strict)
    counters = {
        "kind": f"EPS (epsilon={oe.epsilon:g})",
        "S": str(report.s_size),
        "S_prime": str(report.s_prime_size),
        "k": str(report.k),
        "stored reals": f"{report.stored_reals} (budget {report.storage_budget})",
        "labels per bucket": ",".join(str(size) for size in report.bucket_sizes),
        "build time": f"{report.build_seconds:.3f}s",
    }
    if report.skipped_degenerate:
        counters["skipped zero-length landmarks"] = str(report.skipped_degenerate)
    return BuiltOracle(oe, counters, report.bridges)


def stretch_of(oracle: Oracle2 | OracleEps) -> StretchSpec:
    return StretchSpec() if isinstance(oracle, Oracle2) else StretchSpec(oracle.epsilon)


def format_distance(value: float) -> str:
    """Distances print as integers when integral, UNREACHABLE when infinite."""
    if math.isinf(value):
        return "UNREACHABLE"
    if value.is_integer() and abs(value) < 2**53:
        return str(int(value))
    return repr(value)


def echo_counters(counters: dict[str, str]) -> None:
    width = max((len(key) for key in counters), default=0) + 1
    for key, value in counters.items():
        click.echo(f"{key + ':':<{width}} {value}")
