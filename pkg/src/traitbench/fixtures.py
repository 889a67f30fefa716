"""Small reference machines shipped as data files in the textual format."""

from __future__ import annotations

from functools import lru_cache
from importlib import resources

from .machine import MachineDescription, parse_machine

FIXTURE_NAMES = ("echo", "looper", "eraser", "marker")


@lru_cache(maxsize=None)
def load_fixture(name: str) -> MachineDescription:
    if name not in FIXTURE_NAMES:
        raise KeyError(f"unknown fixture {name!r}, expected one of {FIXTURE_NAMES}")
    text = resources.files(__package__).joinpath(f"data/{name}.tm").read_text("utf-8")
    return parse_machine(text)


def echo() -> MachineDescription:
    """Halts at once, leaving the input in place."""
    return load_fixture("echo")


def looper() -> MachineDescription:
    """Never halts; walks right forever."""
    return load_fixture("looper")


def eraser() -> MachineDescription:
    """Erases the input and accepts on the first blank; always halts blank."""
    return load_fixture("eraser")


def marker() -> MachineDescription:
    """Writes one fixed symbol on the start cell and accepts; total."""
    return load_fixture("marker")


def all_fixtures() -> dict[str, MachineDescription]:
    return {name: load_fixture(name) for name in FIXTURE_NAMES}
