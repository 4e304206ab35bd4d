import itertools
import math

import pytest
from hypothesis import HealthCheck, settings

from borsuk.gallery import gallery

settings.register_profile("default", deadline=None, max_examples=60, suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")


def brute_vertex_diameter(points) -> float:
    """Largest distance over all vertex pairs, with plain math.dist."""
    return max(math.dist(p, q) for p, q in itertools.combinations(points, 2))


def close(a, b, tol=1e-12):
    return all(abs(x - y) <= tol for x, y in zip(a, b))


@pytest.fixture(scope="session")
def shapes():
    return {s.name: s for s in gallery()}


def pytest_terminal_summary(terminalreporter):
    import sys

    mod = sys.modules.get("test_acceptance")
    if mod is None or not mod.RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for line in sorted(mod.RESULTS, key=lambda s: int(s.split("criterion ")[1].split(":")[0])):
        terminalreporter.write_line(line)
