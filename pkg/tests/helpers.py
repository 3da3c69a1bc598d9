import math

import numpy as np
import pytest

from gabortf.core import Lattice
from gabortf.waveform import GaussianParams, gaussian_pulse, rect_window

TEST_LATTICES = [(4, 2, 2), (16, 4, 8), (48, 4, 8)]


def random_complex(rng, *shape):
    return rng.standard_normal(shape) + 1j * rng.standard_normal(shape)


def sample_windows(lat, seed=7):
    """Rectangular, Gaussian and random windows used by the reconstruction checks.

    The Gaussian is centred half a sample off the grid: any window symmetric
    about a sample point has a zero in its Zak transform on (4, 2, 2).
    """
    rng = np.random.default_rng(seed + lat.L)
    sigma = math.sqrt(lat.a * lat.M / (2 * math.pi))
    return {
        "rect": rect_window(lat.L, lat.a).astype(complex),
        "gauss": gaussian_pulse(lat, GaussianParams(1.0, sigma), center=lat.L / 2 - 0.5).astype(complex),
        "random": random_complex(rng, lat.L),
    }


def window_cases():
    for dims in TEST_LATTICES:
        lat = Lattice(*dims)
        for name, w in sample_windows(lat).items():
            yield pytest.param(lat, w, id=f"{dims}-{name}")
