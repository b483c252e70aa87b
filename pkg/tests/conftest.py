import functools
import os

import pytest

from affine_lyndon.leclerc import generate_up_to_delta


@functools.lru_cache(maxsize=None)
def table(name: str, order: tuple, depth: int):
    """Shared generated tables; tests must not mutate them beyond extending depth."""
    return generate_up_to_delta(name, order, depth)


def pytest_collection_modifyitems(config, items):
    if os.environ.get("AFFINE_LYNDON_LONG") == "1":
        return
    skip = pytest.mark.skip(reason="set AFFINE_LYNDON_LONG=1 to run E-type sweeps")
    for item in items:
        if "long_running" in item.keywords:
            item.add_marker(skip)


ACCEPTANCE_LINES: list = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES, key=lambda s: int(s.split()[1].rstrip(":"))):
            terminalreporter.write_line(line)
