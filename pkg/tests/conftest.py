import random

import pytest

from shlie import category


@pytest.fixture
def rng():
    return random.Random(20261015)


@pytest.fixture(autouse=True)
def memory_only_cache(monkeypatch, tmp_path):
    """Keep every test away from a cache directory in the working tree."""
    monkeypatch.setenv(category.CACHE_ENV, str(tmp_path / "env-cache"))
    yield
    category.configure_cache(None)


@pytest.fixture
def fresh_cache(tmp_path):
    """A disk-backed hom cache in a temporary directory."""
    return category.configure_cache(str(tmp_path / "cache"))


def pytest_terminal_summary(terminalreporter, config):
    lines = getattr(config, "acceptance_lines", None)
    if lines:
        terminalreporter.section("acceptance criteria")
        for _, line in sorted(lines):
            terminalreporter.write_line(line)
