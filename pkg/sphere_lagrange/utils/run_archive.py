"""
Run archives: JSON records of a command's configuration and results.
"""

import json
import os
from typing import Any

from sphere_lagrange import __version__
from sphere_lagrange.models.run_config import RunConfig
from sphere_lagrange.utils.logger import get_logger

logger = get_logger(__name__)

APPLICATION = "Sphere Lagrange"
FORMAT_VERSION = "1.0"


class RunArchive:
    """Manages saving and loading of run archives."""

    ARCHIVE_EXTENSION = ".json"

    @staticmethod
    def save_run(command: str, config: RunConfig, results: dict[str, Any], file_path: str) -> bool:
        """
        Save a run archive.

        Args:
            command: Name of the command that produced the results
            config: Effective configuration of the run
            results: JSON-serializable results
            file_path: Path where the archive should be saved

        Returns:
            True if saved successfully, False otherwise
        """
        try:
            if not file_path.lower().endswith(RunArchive.ARCHIVE_EXTENSION):
                file_path += RunArchive.ARCHIVE_EXTENSION

            archive = {
                "version": FORMAT_VERSION,
                "application": APPLICATION,
                "command": command,
                "config": config.to_dict(),
                "results": results,
                "metadata": {
                    "created_by": f"{APPLICATION} {__version__}",
                    "file_format_version": FORMAT_VERSION,
                },
            }

            directory = os.path.dirname(file_path)
            if directory:
                os.makedirs(directory, exist_ok=True)

            with open(file_path, "w", encoding="utf-8") as f:
                json.dump(archive, f, indent=2, ensure_ascii=False, sort_keys=True)
                f.write("\n")

        except Exception as e:  # pylint: disable=broad-exception-caught
            logger.error("Error saving run archive: %s", e, exc_info=True)
            return False
        return True

    @staticmethod
    def load_run(file_path: str) -> dict[str, Any] | None:
        """
        Load a run archive.

        Args:
            file_path: Path to the archive

        Returns:
            The archive dictionary, or None if loading failed
        """
        try:
            if not os.path.exists(file_path):
                logger.warning("Run archive not found: %s", file_path)
                return None

            with open(file_path, encoding="utf-8") as f:
                archive = json.load(f)

            if not RunArchive._validate_archive(archive):
                logger.warning("Invalid run archive format")
                return None

        except json.JSONDecodeError as e:
            logger.error("Error parsing run archive: %s", e, exc_info=True)
            return None
        except Exception as e:  # pylint: disable=broad-exception-caught
            logger.error("Error loading run archive: %s", e, exc_info=True)
            return None
        return archive

    @staticmethod
    def load_config(file_path: str) -> RunConfig | None:
        """The configuration recorded in an archive, or None if unavailable."""
        archive = RunArchive.load_run(file_path)
        if archive is None:
            return None
        try:
            return RunConfig().merged(archive.get("config", {}))
        except ValueError as e:
            logger.warning("Archive %s has an invalid configuration: %s", file_path, e)
            return None

    @staticmethod
    def _validate_archive(data: Any) -> bool:
        """
        Validate the structure of archive data.

        Args:
            data: Parsed archive

        Returns:
            True if valid, False otherwise
        """
        if not isinstance(data, dict):
            return False
        for field in ("version", "application", "command", "results"):
            if field not in data:
                logger.warning("Missing required field: %s", field)
                return False

        if data.get("application") != APPLICATION:
            logger.warning("Not a %s archive: %s", APPLICATION, data.get("application"))
            return False

        version = data.get("version", "")
        if not str(version).startswith("1."):
            logger.warning("Unsupported archive version: %s", version)
            return False

        return True
