"""
Run configuration shared by all commands.
"""

import os
from dataclasses import dataclass, field, fields, replace
from pathlib import Path
from typing import Any

from sphere_lagrange.models.exceptions import ConfigError

LOG_LEVELS = ("DEBUG", "INFO", "WARNING", "ERROR", "CRITICAL")


@dataclass(frozen=True)
class RunConfig:
    """
    Settings for a run.

    Values come from the defaults below, then a ``key = value`` file, then command-line flags.
    """

    seed: int = 7
    threads: int = field(default_factory=lambda: os.cpu_count() or 1)
    precision: int = 128  # interval bits
    max_precision: int = 4096
    digits: int = 30  # significant digits of printed decimals
    samples: int = 1000
    log_level: str = "WARNING"
    log_file: str | None = None

    @classmethod
    def from_file(cls, path: str | Path) -> "RunConfig":
        """
        Read a ``key = value`` configuration file.

        Blank lines and ``#`` comments are ignored.

        Raises:
            ConfigError: on unreadable files, unknown keys or malformed values
        """
        try:
            text = Path(path).read_text(encoding="utf-8")
        except OSError as e:
            raise ConfigError(f"cannot read {path}: {e.strerror}") from e
        values: dict[str, str] = {}
        for number, raw in enumerate(text.splitlines(), start=1):
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            key, sep, value = line.partition("=")
            if not sep:
                raise ConfigError(f"line {number}: expected key = value")
            values[key.strip().replace("-", "_")] = value.strip()
        return cls().merged(values)

    def merged(self, overrides: dict[str, Any]) -> "RunConfig":
        """
        Return a copy with overrides applied; ``None`` values are skipped.

        String values are converted to the field's type.

        Raises:
            ConfigError: on unknown keys, malformed values or failed validation
        """
        types = {f.name: f.type for f in fields(self)}
        changes: dict[str, Any] = {}
        for key, value in overrides.items():
            if key not in types:
                raise ConfigError(f"unknown key {key!r}")
            if value is None:
                continue
            if types[key] == "int" or types[key] is int:
                try:
                    changes[key] = int(value)
                except (TypeError, ValueError):
                    raise ConfigError(f"{key} must be an integer, got {value!r}") from None
            else:
                changes[key] = str(value)
        config = replace(self, **changes)
        errors = config.validate()
        if errors:
            raise ConfigError("; ".join(errors))
        return config

    def validate(self) -> list[str]:
        """
        Validate the configuration.

        Returns:
            List of error messages (empty if valid)
        """
        errors = []
        if self.threads < 1:
            errors.append("threads must be at least 1")
        if self.precision < 16:
            errors.append("precision must be at least 16 bits")
        if self.max_precision < self.precision:
            errors.append("max_precision must not be below precision")
        if not 1 <= self.digits <= 1000:
            errors.append("digits must be between 1 and 1000")
        if self.samples < 1:
            errors.append("samples must be at least 1")
        if self.log_level.upper() not in LOG_LEVELS:
            errors.append(f"log_level must be one of {', '.join(LOG_LEVELS)}")
        return errors

    def to_dict(self) -> dict[str, Any]:
        return {f.name: getattr(self, f.name) for f in fields(self)}
