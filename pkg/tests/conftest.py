import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from traitbench import fixtures, format_machine


@pytest.fixture
def echo():
    return fixtures.echo()


@pytest.fixture
def looper():
    return fixtures.looper()


@pytest.fixture
def eraser():
    return fixtures.eraser()


@pytest.fixture
def marker():
    return fixtures.marker()


@pytest.fixture
def machine_file(tmp_path):
    """Write a machine to a temp file and hand back its path."""

    def write(m, name="m.tm"):
        path = tmp_path / name
        path.write_text(format_machine(m), "utf-8")
        return str(path)

    return write
