import numpy as np
import pytest
from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

from polyforms import PolyMatrix, PrimeField
from polyforms.testkit import random_matrix

settings.register_profile(
    "default",
    deadline=None,
    max_examples=60,
    suppress_health_check=[HealthCheck.too_slow, HealthCheck.data_too_large],
)
settings.load_profile("default")

PRIMES = (2, 3, 7, 97)

# filled by the acceptance tests, echoed at the end of the run
ACCEPTANCE_LINES: list[str] = []

F7 = PrimeField(7)


def mat(field, rows):
    """Matrix from rows of ascending coefficient lists."""
    return PolyMatrix.from_entries(field, rows)


@pytest.fixture
def f7():
    return F7


@pytest.fixture
def example_matrix():
    # [[x^2, x+1, 2], [2x+2, 2x, 2]] over F_7
    return mat(F7, [[[0, 0, 1], [1, 1], [2]], [[2, 2], [0, 2], [2]]])


@pytest.fixture
def example_popov():
    # [[x^2+6x+6, 1, 1], [x+1, x, 1]]
    return mat(F7, [[[6, 6, 1], [1], [1]], [[1, 1], [0, 1], [1]]])


@st.composite
def matrices(draw, max_rows=4, max_cols=5, max_deg=3, primes=PRIMES, min_rows=0, wide=False):
    p = draw(st.sampled_from(primes))
    m = draw(st.integers(min_rows, max_rows))
    n = draw(st.integers(m if wide else 0, max(max_cols, m if wide else 0)))
    d = draw(st.integers(0, max_deg))
    seed = draw(st.integers(0, 2**32 - 1))
    return random_matrix(PrimeField(p), m, n, d, np.random.default_rng(seed))


@st.composite
def shifts(draw, n, bound=3):
    return tuple(draw(st.lists(st.integers(-bound, bound), min_size=n, max_size=n)))


seeds = st.integers(0, 2**32 - 1)


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
