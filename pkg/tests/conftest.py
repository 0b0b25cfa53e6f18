from __future__ import annotations

from fractions import Fraction

import pytest

from fewdist.catalog import regular_polygon, unit_square
from fewdist.field import QuadExt


@pytest.fixture
def phi() -> QuadExt:
    return QuadExt(Fraction(1, 2), Fraction(1, 2), 5)


@pytest.fixture
def pentagon():
    return regular_polygon(5).payload


@pytest.fixture
def square():
    return unit_square().payload


def pytest_terminal_summary(terminalreporter):
    from test_acceptance import RESULTS

    if not RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(RESULTS):
        terminalreporter.write_line(RESULTS[n])
