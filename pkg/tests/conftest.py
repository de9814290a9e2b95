from __future__ import annotations

import sys
from functools import lru_cache

import pytest

from engelgroups.catalog import parse_catalog_name, standard_catalog


@lru_cache(maxsize=None)
def group(name: str):
    return parse_catalog_name(name)


@lru_cache(maxsize=None)
def catalog_groups():
    return tuple(standard_catalog())


@pytest.fixture
def G():
    return group


def pytest_terminal_summary(terminalreporter):
    mod = sys.modules.get("test_acceptance")
    results = getattr(mod, "RESULTS", None)
    if results:
        terminalreporter.section("acceptance criteria")
        for k in sorted(results):
            terminalreporter.write_line(results[k])
