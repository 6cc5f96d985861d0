"""Configuration management for SSDO."""

import os
from dataclasses import dataclass
from pathlib import Path
from typing import Any

import yaml

CONFIG_DIR = ".ssdo"
CONFIG_FILENAME_LOCAL = "settings.local.yaml"
CONFIG_FILENAME_PROJECT = "settings.yaml"


def get_project_root(cwd: Path | None = None) -> Path:
    """Get the directory that holds the .ssdo config directory.

    Args:
        cwd: Directory to use. Defaults to current directory.

    Returns:
        Path to the project root.
    """
    return (cwd or Path.cwd()).resolve()


def get_config_path(root: Path | None = None, local: bool = True) -> Path:
    """Get the config file path for a project.

    Args:
        root: Project root. If None, uses the current directory.
        local: If True, return path to local config. If False, return path to project config.

    Returns:
        Path to the config file.
    """
    if root is None:
        root = get_project_root()
    filename = CONFIG_FILENAME_LOCAL if local else CONFIG_FILENAME_PROJECT
    return root / CONFIG_DIR / filename


def get_active_config_path(root: Path | None = None) -> Path:
    """Get the path to the config file that should be used for read/write.

    Returns the local config path if it exists, otherwise the project config path.
    """
    if root is None:
        root = get_project_root()
    local_path = root / CONFIG_DIR / CONFIG_FILENAME_LOCAL
    if local_path.exists():
        return local_path
    return root / CONFIG_DIR / CONFIG_FILENAME_PROJECT


def config_exists(root: Path | None = None) -> bool:
    """Check if any config file exists (local or project)."""
    if root is None:
        root = get_project_root()
    local_path = root / CONFIG_DIR / CONFIG_FILENAME_LOCAL
    project_path = root / CONFIG_DIR / CONFIG_FILENAME_PROJECT
    return local_path.exists() or project_path.exists()


# Schema for documentation and ssdo config list
CONFIG_SCHEMA: dict[str, dict[str, str | None]] = {
    "stretch": {
        "type": "string",
        "default": "2",
        "env": "SSDO_STRETCH",
        "description": "Default stretch spec: 2 or eps:<value in (0,1)>",
    },
    "strict": {
        "type": "bool",
        "default": "true",
        "env": "SSDO_STRICT",
        "description": "Refuse graphs whose tree edges include bridges",
    },
    "tolerance": {
        "type": "float",
        "default": "1e-09",
        "env": "SSDO_TOLERANCE",
        "description": "Relative slack for float comparisons during verification",
    },
    "verify_max_n": {
        "type": "int",
        "default": "4096",
        "env": "SSDO_VERIFY_MAX_N",
        "description": "Largest graph accepted by exhaustive verification",
    },
    "workers": {
        "type": "int",
        "default": "1",
        "env": "SSDO_WORKERS",
        "description": "Worker processes for exact table rows",
    },
    "seed": {
        "type": "int",
        "default": "0",
        "env": "SSDO_SEED",
        "description": "Default seed for sampled verification and benchmarks",
    },
    "bench_queries": {
        "type": "int",
        "default": "1000",
        "env": "SSDO_BENCH_QUERIES",
        "description": "Default number of benchmark queries",
    },
    "log_level": {
        "type": "string",
        "default": "WARNING",
        "env": "SSDO_LOG_LEVEL",
        "description": "Log level for diagnostics on stderr (DEBUG, INFO, WARNING, ERROR)",
    },
}

_TRUE_VALUES = ("true", "1", "yes")


def parse_value(key: str, raw: Any) -> Any:
    """Convert a raw file or env value to the type declared in CONFIG_SCHEMA.

    Raises:
        ValueError: If the value cannot be converted.
    """
    kind = CONFIG_SCHEMA[key]["type"]
    if kind == "bool":
        if isinstance(raw, bool):
            return raw
        return str(raw).lower() in _TRUE_VALUES
    if kind == "int":
        return int(raw)
    if kind == "float":
        return float(raw)
    return str(raw)


@dataclass
class Config:
    """SSDO configuration."""

    stretch: str = "2"
    strict: bool = True
    tolerance: float = 1e-9
    verify_max_n: int = 4096
    workers: int = 1
    seed: int = 0
    bench_queries: int = 1000
    log_level: str = "WARNING"

    @classmethod
    def _apply_file_config(cls, config: "Config", file_config: dict[str, Any]) -> None:
        """Apply config values from a file config dict."""
        for key in CONFIG_SCHEMA:
            if key in file_config and file_config[key] is not None:
                setattr(config, key, parse_value(key, file_config[key]))

    @classmethod
    def load(cls, root: Path | None = None) -> "Config":
        """Load config from file, with env var overrides.

        Loading precedence (later overrides earlier):
        1. Default values
        2. Project config (.ssdo/settings.yaml)
        3. Local config (.ssdo/settings.local.yaml)
        4. Environment variables

        Args:
            root: Project root path. If None, uses the current directory.
        """
        config = cls()

        # Layer 1: project config (shared settings)
        project_path = get_config_path(root, local=False)
        if project_path.exists():
            with open(project_path) as f:
                file_config = yaml.safe_load(f) or {}
            cls._apply_file_config(config, file_config)

        # Layer 2: local config overrides project
        local_path = get_config_path(root, local=True)
        if local_path.exists():
            with open(local_path) as f:
                file_config = yaml.safe_load(f) or {}
            cls._apply_file_config(config, file_config)

        # Layer 3: env vars override file
        for key, schema in CONFIG_SCHEMA.items():
            env_name = schema["env"]
            if env_name and (env_value := os.environ.get(env_name)):
                setattr(config, key, parse_value(key, env_value))

        return config

    def _serialize_value(self, key: str) -> str | None:
        """Serialize a config value to string for YAML output.

        Returns None if the value should be commented out.
        """
        value = getattr(self, key)
        if value is None:
            return None
        if isinstance(value, bool):
            return "true" if value else "false"
        str_value = str(value)
        # Stretch specs contain ':' and must be quoted
        if ":" in str_value or str_value.startswith('"'):
            escaped = str_value.replace("\\", "\\\\").replace('"', '\\"')
            return f'"{escaped}"'
        return str_value

    def save(self, root: Path | None = None, local: bool | None = None) -> None:
        """Save current config to file with documentation comments.

        Args:
            root: Project root path. If None, uses the current directory.
            local: If True, save to local config. If False, save to project config.
                   If None (default), use local if it already exists, otherwise project.
        """
        if local is None:
            local = get_config_path(root, local=True).exists()
        config_path = get_config_path(root, local=local)
        config_path.parent.mkdir(parents=True, exist_ok=True)

        lines: list[str] = []
        for key, schema in CONFIG_SCHEMA.items():
            lines.append(f"# {schema['description']}")
            lines.append(f"# Env: {schema['env']}")
            value = self._serialize_value(key)
            if value is None:
                lines.append(f"# {key}:")
            else:
                lines.append(f"{key}: {value}")
            lines.append("")

        if lines and lines[-1] == "":
            lines.pop()

        with open(config_path, "w") as f:
            f.write("\n".join(lines) + "\n")


# Module-level singleton (lazy loaded)
_config: Config | None = None


def get_config() -> Config:
    """Get the global config instance."""
    global _config
    if _config is None:
        _config = Config.load()
    return _config


def reset_config() -> None:
    """Reset config singleton (for testing)."""
    global _config
    _config = None


def create_default_config(root: Path | None = None, local: bool = True) -> Path:
    """Create default config file.

    Args:
        root: Project root path. If None, uses the current directory.
        local: If True, create local config. If False, create project config.

    Returns:
        Path to the created config file.
    """
    config_path = get_config_path(root, local=local)
    Config().save(root, local=local)
    return config_path
