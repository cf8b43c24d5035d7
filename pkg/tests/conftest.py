import random

import pytest
from hypothesis import settings

from schemekit.fields import PrimeField, QQ
from schemekit.polyring import PolyRing

settings.register_profile("default", max_examples=60, deadline=None)
settings.load_profile("default")

# verdict lines of the acceptance criteria, echoed in the terminal summary
ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)


def random_poly(ring, rng, *, terms=4, max_deg=4, homogeneous=None):
    """Random polynomial with small coefficients (field elements from ints)."""
    fld = ring.field
    out = {}
    for _ in range(terms):
        if homogeneous is not None:
            cuts = sorted(rng.randint(0, homogeneous) for _ in range(ring.nvars - 1))
            e = tuple(b - a for a, b in zip([0] + cuts, cuts + [homogeneous]))
        else:
            e = tuple(rng.randint(0, max_deg) for _ in range(ring.nvars))
            while sum(e) > max_deg:
                e = tuple(max(0, x - 1) for x in e)
        c = fld.convert(rng.randint(-9, 9))
        if not fld.is_zero(c):
            out[e] = c
    return ring.from_dict(out)


@pytest.fixture
def rng():
    return random.Random(20261016)


@pytest.fixture
def R101():
    return PolyRing(PrimeField(101), ["x", "y", "z"])


@pytest.fixture
def RQ():
    return PolyRing(QQ, ["x", "y", "z"])
