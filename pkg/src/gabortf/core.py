"""Finite discrete Gabor transform on a separable, circular time-frequency lattice.

Conventions
-----------
All shifts are circular modulo the signal length ``L``. For a lattice with
time step ``a`` and ``M`` channels, coefficient ``c[m, n]`` belongs to the atom

    atom[l] = w[(l - n*a) mod L] * exp(+2j*pi*m*l/M)

The analysis transform uses ``exp(-2j*pi*m*l/M)`` and the conjugated window,
the synthesis transform the unconjugated window and ``exp(+2j*pi*m*l/M)``.
Neither carries a normalisation factor; all scaling lives in the dual window.
Coefficient grids are frequency-major, shape ``(M, N)``.
"""
from dataclasses import dataclass, field

import numpy as np

from . import kernels
from .errors import DegenerateInputError, DimensionError, DivisibilityError, UnsupportedLatticeError

RANK_RTOL = 1e-10


@dataclass(frozen=True)
class Lattice:
    """Sampling of the time-frequency plane.

    ``a`` is the time step in samples and ``M`` the number of frequency
    channels, so the channel spacing is ``1/M`` cycles per sample. The
    density ``a/M`` is the discrete time-bandwidth product; lattices with
    density above one can analyse but not reconstruct.
    """

    L: int
    a: int
    M: int
    N: int = field(init=False)
    density: float = field(init=False)

    def __post_init__(self):
        for name in ("L", "a", "M"):
            value = getattr(self, name)
            if int(value) != value or value < 1:
                raise ValueError(f"{name} must be a positive integer, got {value!r}")
            object.__setattr__(self, name, int(value))
        if self.L % self.a:
            raise DivisibilityError(f"time step a={self.a} does not divide L={self.L}")
        if self.L % self.M:
            raise DivisibilityError(f"channel count M={self.M} does not divide L={self.L}")
        object.__setattr__(self, "N", self.L // self.a)
        object.__setattr__(self, "density", self.a / self.M)

    @property
    def reconstructing(self):
        return self.a <= self.M

    @property
    def critical(self):
        return self.a == self.M

    @property
    def oversampled(self):
        return self.M > self.a

    @property
    def shape(self):
        """Coefficient grid shape ``(M, N)``."""
        return (self.M, self.N)

    def require_reconstructing(self):
        if not self.reconstructing:
            raise UnsupportedLatticeError(
                f"lattice density a/M = {self.density:g} exceeds 1; no dual windows exist"
            )


def make_lattice(L, a, M):
    return Lattice(L, a, M)


def as_signal(x, L=None, name="signal"):
    """Validate a 1-D finite sequence and return it as a contiguous complex array."""
    arr = np.ascontiguousarray(x, dtype=np.complex128)
    if arr.ndim != 1 or arr.size == 0:
        raise DimensionError(f"{name} must be a non-empty 1-D sequence, got shape {arr.shape}")
    if L is not None and arr.size != L:
        raise DimensionError(f"{name} has length {arr.size}, lattice expects {L}")
    if not np.all(np.isfinite(arr)):
        raise ValueError(f"{name} contains non-finite values")
    return arr


def as_grid(c, lat, name="coefficients"):
    arr = np.ascontiguousarray(c, dtype=np.complex128)
    if arr.shape != lat.shape:
        raise DimensionError(f"{name} has shape {arr.shape}, lattice expects {lat.shape}")
    if not np.all(np.isfinite(arr)):
        raise ValueError(f"{name} contains non-finite values")
    return arr


def gabor_atom(w, lat, n, m):
    """Time-frequency shifted copy of ``w`` at lattice point (n, m)."""
    w = as_signal(w, lat.L, "window")
    if not (0 <= n < lat.N and 0 <= m < lat.M):
        raise IndexError(f"atom index (n={n}, m={m}) outside {lat.N} x {lat.M} lattice")
    l = np.arange(lat.L)
    return np.roll(w, n * lat.a) * np.exp(2j * np.pi * ((m * l) % lat.M) / lat.M)


def atom_matrix(w, lat):
    """All ``M*N`` atoms as rows, ordered ``m * N + n`` to match ``grid.ravel()``."""
    w = as_signal(w, lat.L, "window")
    l = np.arange(lat.L)
    shifts = w[(l[None, :] - lat.a * np.arange(lat.N)[:, None]) % lat.L]
    mods = np.exp(2j * np.pi * ((np.arange(lat.M)[:, None] * l[None, :]) % lat.M) / lat.M)
    return (mods[:, None, :] * shifts[None, :, :]).reshape(lat.M * lat.N, lat.L)


def dgt(s, gamma, lat):
    """Discrete Gabor transform of ``s`` with analysis window ``gamma``.

    Returns the ``(M, N)`` grid of inner products of ``s`` with the atoms of
    ``gamma``. The lattice ``(L, 1, L)`` gives the full circular STFT.
    """
    s = as_signal(s, lat.L)
    gamma = as_signal(gamma, lat.L, "analysis window")
    folded = kernels.fold_analysis(s, gamma, lat.a, lat.M)
    return np.fft.fft(folded, axis=0)


def idgt(c, p, lat):
    """Gabor expansion: superpose the atoms of ``p`` weighted by ``c``."""
    c = as_grid(c, lat)
    p = as_signal(p, lat.L, "synthesis window")
    z = np.fft.ifft(c, axis=0) * lat.M
    return kernels.overlap_synthesis(z, p, lat.a)


@dataclass(frozen=True)
class WexlerRazSystem:
    """Biorthogonality constraints on the analysis window as a linear system.

    Row ``q * a + r`` is the functional
    ``gamma -> (M/a) * sum_l gamma[l] * conj(p[(l - q*M) mod L]) * exp(-2j*pi*r*l/a)``
    for ``q < L/M`` and ``r < a``; the target is 1 at (0, 0) and 0 elsewhere.
    """

    rows: np.ndarray
    target: np.ndarray
    lattice: Lattice


def wexler_raz_system(p, lat):
    lat.require_reconstructing()
    p = as_signal(p, lat.L, "synthesis window")
    L, a, M = lat.L, lat.a, lat.M
    l = np.arange(L)
    shifted = np.conj(p[(l[None, :] - M * np.arange(L // M)[:, None]) % L])
    mods = np.exp(-2j * np.pi * ((np.arange(a)[:, None] * l[None, :]) % a) / a)
    rows = (M / a) * (shifted[:, None, :] * mods[None, :, :]).reshape(-1, L)
    target = np.zeros(rows.shape[0], dtype=np.complex128)
    target[0] = 1.0
    return WexlerRazSystem(rows, target, lat)


def wexler_raz_residual(p, gamma, lat):
    """Largest deviation of ``(p, gamma)`` from the Wexler-Raz identity.

    Zero exactly when ``idgt(dgt(., gamma), p)`` is the identity.
    """
    system = wexler_raz_system(p, lat)
    gamma = as_signal(gamma, lat.L, "analysis window")
    return float(np.max(np.abs(system.rows @ gamma - system.target)))


def analysis_matrix(w, lat):
    """The ``(M*N, L)`` matrix of ``s -> dgt(s, w, lat).ravel()``."""
    return np.conj(atom_matrix(w, lat))


def analysis_matrix_rank(w, lat):
    """Numerical rank of the analysis map; ``L`` means the atoms span the signal space."""
    mat = analysis_matrix(w, lat)
    sv = np.linalg.svd(mat, compute_uv=False)
    if sv.size == 0 or sv[0] == 0.0:
        return 0
    thresh = RANK_RTOL * sv[0] * max(mat.shape)
    return int(np.count_nonzero(sv > thresh))


def uncertainty_product(s):
    """RMS time width times RMS angular-frequency width of ``s``.

    Moments are taken over the sample grid as given (no wrap-around) in time
    and over the DFT bins mapped to (-pi, pi] in frequency. Well sampled,
    well contained Gaussians approach the continuum minimum of 1/2; very
    short signals such as an impulse can score below it.
    """
    s = as_signal(s)
    energy = np.abs(s) ** 2
    total = energy.sum()
    if total == 0.0:
        raise DegenerateInputError("uncertainty product of an all-zero signal is undefined")
    L = s.size
    t = np.arange(L, dtype=float)
    t_mean = (t * energy).sum() / total
    dt = np.sqrt(((t - t_mean) ** 2 * energy).sum() / total)

    spec = np.abs(np.fft.fft(s)) ** 2
    k = np.arange(L)
    omega = 2.0 * np.pi * np.where(k > L // 2, k - L, k) / L
    w_mean = (omega * spec).sum() / spec.sum()
    dw = np.sqrt(((omega - w_mean) ** 2 * spec).sum() / spec.sum())
    return float(dt * dw)
