"""Reproducible noise from a documented 64-bit linear congruential stream.

State update: ``x <- (6364136223846793005 * x + 1442695040888963407) mod 2**64``.
Each step yields the uniform ``(x >> 11) / 2**53`` in [0, 1). Complex white
noise takes two uniforms (u1, u2) per sample and applies Box-Muller:

    r = sqrt(-2 ln(1 - u1)),  re = r cos(2 pi u2),  im = r sin(2 pi u2)

scaled by ``sqrt(variance / 2)``. The initial state is the seed mod 2**64.
Any implementation following these steps reproduces the exact sequences.
"""
import numpy as np

from . import kernels


class LcgNoise:
    """Seeded source of uniforms and circular complex Gaussian noise."""

    def __init__(self, seed=0):
        self.state = int(seed) & ((1 << 64) - 1)

    def uniform(self, n):
        values, self.state = kernels.lcg_uniform(self.state, int(n))
        return values

    def standard_normal_pairs(self, n):
        """Two independent standard normals per sample, shape (2, n)."""
        u = self.uniform(2 * n).reshape(n, 2)
        r = np.sqrt(-2.0 * np.log1p(-u[:, 0]))
        theta = 2.0 * np.pi * u[:, 1]
        return np.stack([r * np.cos(theta), r * np.sin(theta)])

    def complex_normal(self, n, variance=1.0):
        z = self.standard_normal_pairs(n)
        return (z[0] + 1j * z[1]) * np.sqrt(variance / 2.0)


def complex_white_noise(n, seed, variance=1.0):
    """Length-n circular complex Gaussian noise with the given per-sample variance."""
    return LcgNoise(seed).complex_normal(n, variance)
