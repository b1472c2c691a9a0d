import random

import pytest
from hypothesis import strategies as st

from fraisse.trees import ColoredTree


def random_shape(rng: random.Random, leaves: list, n: int):
    if len(leaves) == 1:
        return leaves[0]
    cut = rng.randint(1, len(leaves) - 1)
    rng.shuffle(leaves)
    return (rng.randint(1, n), random_shape(rng, leaves[:cut], n), random_shape(rng, leaves[cut:], n))


@st.composite
def trees(draw, max_leaves=7, max_colors=3):
    n = draw(st.integers(1, max_colors))
    m = draw(st.integers(0, max_leaves))
    seed = draw(st.integers(0, 2**32 - 1))
    if m == 0:
        return ColoredTree(None)
    return ColoredTree(random_shape(random.Random(seed), list(range(m)), n))


@pytest.fixture(scope="session")
def rng():
    return random.Random(20261016)


ACCEPTANCE_LINES: list = []


@pytest.fixture
def acceptance_log():
    return ACCEPTANCE_LINES


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES, key=lambda s: int(s.split()[1].rstrip(":"))):
            terminalreporter.write_line(line)
