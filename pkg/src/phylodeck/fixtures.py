"""Bundled example networks (plain-text format) for tests and demos."""

from __future__ import annotations

from importlib import resources

from .cli import parse_pnet


def _dir():
    return resources.files("phylodeck") / "fixtures"


def fixture_names():
    """Sorted names (without extension) of all bundled networks."""
    return sorted(
        entry.name[: -len(".pnet")]
        for entry in _dir().iterdir()
        if entry.name.endswith(".pnet")
    )


def fixture_text(name):
    return (_dir() / f"{name}.pnet").read_text(encoding="utf-8")


def load(name):
    """Parse a bundled network by name."""
    return parse_pnet(fixture_text(name))
