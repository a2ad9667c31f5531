from fractions import Fraction as F

import pytest

from lydim import Interval, TransitionMatrix, synthesize


def middle_thirds_map():
    return synthesize(TransitionMatrix.full(2), [Interval(0, F(1, 3)), Interval(F(2, 3), 1)], [3, 3])


def two_four_map():
    return synthesize(TransitionMatrix.full(2), [Interval(0, F(1, 2)), Interval(F(3, 4), 1)], [2, 4])


def star_map():
    return synthesize(
        TransitionMatrix.star(2), [Interval(0, F(9, 20)), Interval(F(11, 20), 1)], [F(20, 9), 2]
    )


EXAMPLE_MAPS = {"middle_thirds": middle_thirds_map, "two_four": two_four_map, "star": star_map}


@pytest.fixture(params=sorted(EXAMPLE_MAPS))
def example_map(request):
    return EXAMPLE_MAPS[request.param]()


def pytest_terminal_summary(terminalreporter):
    import sys

    mod = sys.modules.get("test_acceptance")
    results = getattr(mod, "RESULTS", None)
    if results:
        terminalreporter.section("acceptance criteria")
        for label in sorted(results, key=lambda s: int(s.split()[0][1:])):
            terminalreporter.write_line(results[label])
