from __future__ import annotations

import numpy as np
import pytest
from hypothesis import settings
from hypothesis import strategies as st

from regularstates.graph import make_graph
from regularstates.statevector import LocalRotations

settings.register_profile("default", deadline=None, max_examples=60)
settings.load_profile("default")


@st.composite
def graphs(draw, min_n=1, max_n=8):
    n = draw(st.integers(min_n, max_n))
    pairs = [(i, j) for i in range(n) for j in range(i + 1, n)]
    keep = draw(st.lists(st.booleans(), min_size=len(pairs), max_size=len(pairs)))
    return make_graph(n, [e for e, k in zip(pairs, keep) if k])


@st.composite
def rotations(draw, n):
    angle = st.floats(0, 2 * np.pi, allow_nan=False)
    return LocalRotations(tuple(draw(angle) for _ in range(n)), tuple(draw(angle) for _ in range(n)))


def random_graph(n: int, rng: np.random.Generator, p: float | None = None):
    p = rng.uniform(0.2, 0.8) if p is None else p
    return make_graph(n, [(i, j) for i in range(n) for j in range(i + 1, n) if rng.random() < p])


def random_bits(n: int, rng: np.random.Generator) -> str:
    return "".join(str(b) for b in rng.integers(0, 2, n))


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)


# one line per acceptance criterion, echoed after the run
ACCEPTANCE: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE):
            terminalreporter.write_line(line)
