import random

import pytest
from hypothesis import HealthCheck, settings, strategies as st

from chainlab.axioms import Profile, random_complex
from chainlab.matrix import ExactMatrix
from chainlab.rings import GF, QQ, ZZ

settings.register_profile(
    "chainlab", deadline=None, max_examples=60,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.load_profile("chainlab")

RINGS = [ZZ, QQ, GF(2), GF(5)]
SMALL = Profile(lo=-1, width=3, max_rank=3, entry_bound=4, max_torsion=6, steps=10)

# filled by the acceptance tests, printed once at the end of the run
ACCEPTANCE_LINES = []


def matrices(ring=ZZ, max_dim=5, bound=9):
    @st.composite
    def build(draw):
        r = draw(st.integers(0, max_dim))
        c = draw(st.integers(0, max_dim))
        vals = draw(st.lists(st.integers(-bound, bound), min_size=r * c, max_size=r * c))
        return ExactMatrix.from_flat(ring, r, c, vals)
    return build()


seeds = st.integers(0, 10**6)
rings = st.sampled_from(RINGS)


def generated(seed, ring=ZZ, profile=SMALL):
    rng = seed if isinstance(seed, random.Random) else random.Random(seed)
    return random_complex(rng, ring, profile)


@pytest.fixture
def rng():
    return random.Random(20240611)


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
