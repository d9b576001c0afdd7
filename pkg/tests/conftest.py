"""
Shared pytest fixtures for the sphere-lagrange test suite.
"""

from collections.abc import Callable

import pytest

from sphere_lagrange.app import run
from sphere_lagrange.models.target import TargetNumber


@pytest.fixture
def golden() -> TargetNumber:
    """The golden ratio (1 + sqrt5)/2."""
    return TargetNumber.parse("golden")


@pytest.fixture
def cli(capsys: pytest.CaptureFixture[str]) -> Callable[..., tuple[int, str, str]]:
    """
    Run the command-line runner and capture its streams.

    Returns:
        A function taking the arguments and returning (exit status, stdout, stderr)
    """

    def invoke(*argv: str) -> tuple[int, str, str]:
        code = run(list(argv))
        captured = capsys.readouterr()
        return code, captured.out, captured.err

    return invoke
