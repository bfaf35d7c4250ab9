"""Shared fixtures: bundled data access and an in-process CLI runner."""

from importlib import resources

import pytest

from cartilab.cli import main as cli_main


def bundled_text(name: str) -> str:
    return resources.files("cartilab.data").joinpath(name).read_text("utf-8")


@pytest.fixture
def bundled():
    return bundled_text


@pytest.fixture
def run_cli(capsys, monkeypatch):
    """Invoke the CLI in-process; returns (exit_code, stdout, stderr).

    The environment config override is cleared so tests see the bundled
    default unless they set it themselves.
    """
    monkeypatch.delenv("CARTILAB_CONFIG", raising=False)

    def run(*argv: str):
        try:
            code = cli_main(list(argv))
        except SystemExit as exc:  # argparse usage errors
            code = exc.code if isinstance(exc.code, int) else 1
        captured = capsys.readouterr()
        return code, captured.out, captured.err

    return run
