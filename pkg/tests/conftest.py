import os
import random

import pytest
from hypothesis import settings, strategies as st

from mglfsr.ff import Field
from mglfsr.instance import random_instance

settings.register_profile("default", max_examples=60, deadline=None)
settings.load_profile("default")

SEED = int(os.environ.get("MGLFSR_SEED", "20240611"))

PRIMES = [2, 3, 5, 7, 13, 17, 65537]


@st.composite
def polys(draw, field, max_len=12):
    coeffs = draw(st.lists(st.integers(0, field.p - 1), max_size=max_len))
    return field(coeffs)


@st.composite
def field_and_polys(draw, n=2, max_len=12):
    field = Field(draw(st.sampled_from(PRIMES)))
    return (field, *[draw(polys(field, max_len)) for _ in range(n)])


@st.composite
def instances(draw, **kwargs):
    seed = draw(st.integers(0, 2**32 - 1))
    return random_instance(random.Random(seed), **kwargs)


@pytest.fixture
def rng():
    return random.Random(SEED)


# acceptance lines are collected here and echoed in the terminal summary
ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
