import numpy as np
from hypothesis import settings, strategies as st

settings.register_profile("opuc", deadline=None, max_examples=40, derandomize=True)
settings.load_profile("opuc")


@st.composite
def alphas(draw, min_size=1, max_size=8, radius=0.9):
    """Verblunsky coefficients drawn from the disk of the given radius."""
    n = draw(st.integers(min_size, max_size))
    r = draw(st.lists(st.floats(0, radius), min_size=n, max_size=n))
    t = draw(st.lists(st.floats(0, 2 * np.pi), min_size=n, max_size=n))
    return np.array(r) * np.exp(1j * np.array(t))


@st.composite
def disk_points(draw, radius=0.95):
    r = draw(st.floats(0, radius))
    t = draw(st.floats(0, 2 * np.pi))
    return complex(r * np.exp(1j * t))


def rng(seed=0):
    return np.random.default_rng(seed)
