import mpmath
import numpy as np
import pytest
from hypothesis import strategies as st

from l1gateaux import MeasureSpace

# Random instance distribution used throughout the property suites.
MAX_ATOMS = 32
WEIGHT_RANGE = (0.0, 10.0)  # open at 0
VALUE_RANGE = (-10.0, 10.0)
ZERO_RATE = 0.2


def random_space(rng, n=None, max_atoms=MAX_ATOMS):
    n = int(rng.integers(1, max_atoms + 1)) if n is None else n
    w = WEIGHT_RANGE[1] - rng.uniform(*WEIGHT_RANGE, n)  # in (0, 10]
    return MeasureSpace.from_weights(w.tolist())


def random_values(rng, n, zero_rate=0.0):
    v = rng.uniform(*VALUE_RANGE, n)
    if zero_rate:
        v[rng.random(n) < zero_rate] = 0.0
    return v.tolist()


def random_g_member(rng, space):
    v = np.array(random_values(rng, len(space)))
    v[v == 0] = 1.0
    return space.function(v.tolist())


def mp_central_difference(space, f, h, p, t=1e-6, dps=50):
    """Central quotient ``(N(f + t h) - N(f - t h)) / 2t`` of the Lp norm in high precision."""
    with mpmath.workdps(dps):
        p, t = mpmath.mpf(p), mpmath.mpf(t)

        def norm(sign):
            total = mpmath.mpf(0)
            for w, a, b in zip(space.weights, f.values, h.values):
                total += mpmath.mpf(w) * abs(mpmath.mpf(a) + sign * t * mpmath.mpf(b)) ** p
            return total ** (1 / p)

        return float((norm(1) - norm(-1)) / (2 * t))


@pytest.fixture
def rng():
    return np.random.default_rng(20261015)


weights_st = st.one_of(
    st.just(0.0),
    st.floats(min_value=1e-3, max_value=10, allow_nan=False),
)
values_st = st.one_of(st.just(0.0), st.floats(min_value=-10, max_value=10, allow_nan=False))


@st.composite
def spaces(draw, min_atoms=1, max_atoms=8, allow_inf=False):
    w = weights_st | st.just(float("inf")) if allow_inf else weights_st
    ws = draw(st.lists(w, min_size=min_atoms, max_size=max_atoms))
    return MeasureSpace.from_weights(ws)


@st.composite
def functions_on(draw, space, integrable=True):
    vals = []
    for w in space.weights:
        if integrable and w == float("inf"):
            vals.append(0.0)
        else:
            vals.append(draw(values_st))
    return space.function(vals)


# -- acceptance summary -------------------------------------------------------

ACCEPTANCE_LINES = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
