import numpy as np
import pytest
from hypothesis import strategies as st

from balayage import ChargeDistribution


def random_atoms(rng, n, xlim=(-5.0, 5.0), ylim=(-5.0, 5.0), masses=(0.5, 2.0), signed=False):
    xs = rng.uniform(*xlim, n)
    ys = rng.uniform(*ylim, n)
    ms = rng.uniform(*masses, n)
    if signed:
        ms = ms * rng.choice([-1.0, 1.0], n)
    return ChargeDistribution.from_atoms(zip((complex(x, y) for x, y in zip(xs, ys)), ms))


def outside_strip_atoms(rng, n, b=1.0):
    side = rng.choice([-1.0, 1.0], n)
    xs = side * rng.uniform(b + 0.5, b + 3.0, n)
    ys = rng.uniform(-3.0, 3.0, n)
    ms = rng.uniform(0.5, 2.0, n)
    return ChargeDistribution.from_atoms(zip((complex(x, y) for x, y in zip(xs, ys)), ms))


@pytest.fixture
def rng():
    return np.random.default_rng(20240601)


coord = st.floats(-8, 8, allow_nan=False).map(lambda v: round(v, 3))
mass = st.floats(0.1, 3, allow_nan=False).map(lambda v: round(v, 3))
points = st.builds(complex, coord, coord)
atom_lists = st.lists(st.tuples(points, mass), min_size=1, max_size=8)


ACCEPTANCE_RESULTS = {}


def record_criterion(number, title, ok, detail=""):
    ACCEPTANCE_RESULTS[number] = (title, bool(ok), detail)
    print(f"[{'PASS' if ok else 'FAIL'}] criterion {number}: {title} {detail}".rstrip())
    assert ok, f"criterion {number} failed: {detail}"


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(ACCEPTANCE_RESULTS):
        title, ok, detail = ACCEPTANCE_RESULTS[number]
        terminalreporter.write_line(f"[{'PASS' if ok else 'FAIL'}] {number}. {title}  {detail}".rstrip())
