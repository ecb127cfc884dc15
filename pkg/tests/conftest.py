"""Shared fixtures for the test suite."""

from __future__ import annotations

import random

import pytest

from phylodeck import fixtures as fixture_store


@pytest.fixture
def rng():
    return random.Random(0xC0FFEE)


@pytest.fixture
def load():
    return fixture_store.load
