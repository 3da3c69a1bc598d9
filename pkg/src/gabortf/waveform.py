"""Gabor-atom transmission: pulse shapes, symbol modulation and detection.

A symbol grid ``S[m, n]`` is sent as the superposition of atoms of the pulse
``p`` (exactly :func:`gabortf.core.idgt`); the receiver correlates with the
atoms of a dual window (exactly :func:`gabortf.core.dgt`). With the
rectangular pulse on a critical lattice this is OFDM without a cyclic
prefix; any other pulse gives generalised OFDM.
"""
from dataclasses import dataclass

import numpy as np

from .core import as_grid, dgt, idgt
from .errors import ConfigurationError, UnsupportedLatticeError

_WRAP_CUTOFF = 1e-17


@dataclass(frozen=True)
class GaussianParams:
    """``amplitude * exp(-t**2 / (2 sigma**2))`` with ``sigma`` in samples."""

    amplitude: float = 1.0
    sigma: float = 1.0

    def __post_init__(self):
        if not self.amplitude > 0:
            raise ValueError(f"amplitude must be positive, got {self.amplitude}")
        if not self.sigma > 0:
            raise ValueError(f"sigma must be positive, got {self.sigma}")


def gaussian_pulse(lat, params, center=None):
    """Periodised sampled Gaussian, centred at ``L/2`` unless ``center`` is given.

    Wraps ``j = +-1, +-2, ...`` are added in symmetric pairs until the largest
    sample of the next wrap falls below 1e-17, so a centre on the sample grid
    yields a window that is exactly symmetric about it.
    """
    L = lat.L
    c = L / 2 if center is None else float(center)
    t = np.arange(L, dtype=float) - c
    two_var = 2.0 * params.sigma**2
    acc = np.exp(-(t**2) / two_var)
    j = 1
    while True:
        hi = np.exp(-((t + j * L) ** 2) / two_var)
        lo = np.exp(-((t - j * L) ** 2) / two_var)
        if max(hi.max(), lo.max()) < _WRAP_CUTOFF:
            break
        acc = acc + (hi + lo)
        j += 1
    return params.amplitude * acc


def rect_window(L, length):
    """``length`` ones anchored at sample 0, zeros elsewhere."""
    if not 1 <= length <= L:
        raise ValueError(f"rectangle length {length} must lie in [1, {L}]")
    w = np.zeros(L)
    w[:length] = 1.0
    return w


def triangular_window(L, length, center=None):
    """Symmetric triangle of total support ``length`` centred at ``L/2``."""
    c = L / 2 if center is None else center
    half = length / 2
    return np.clip(1.0 - np.abs(np.arange(L) - c) / half, 0.0, None)


def modulate(symbols, p, lat):
    """Transmit signal for a symbol grid: the Gabor expansion with pulse ``p``."""
    if lat.density > 1:
        raise UnsupportedLatticeError(
            f"time-bandwidth product a/M = {lat.density:g} exceeds 1; symbols are not separable"
        )
    return idgt(symbols, p, lat)


def demodulate(s, gamma, lat):
    """Recover symbols by correlating with the atoms of the analysis window ``gamma``."""
    return dgt(s, gamma, lat)


def blockwise_inverse_dft(symbols):
    """OFDM reference transmitter: unnormalised inverse DFT of each symbol column.

    Block ``n`` holds ``sum_k S[k, n] exp(+2j*pi*k*l/M)`` for ``l < M``,
    evaluated with an explicit DFT matrix.
    """
    symbols = np.asarray(symbols, dtype=np.complex128)
    M = symbols.shape[0]
    k = np.arange(M)
    F = np.exp(2j * np.pi * ((k[:, None] * k[None, :]) % M) / M)
    return (F @ symbols).T.reshape(-1)


def ofdm_equivalence_deviation(symbols, lat):
    """Max deviation between rectangular-pulse Gabor modulation and block OFDM."""
    if not lat.critical:
        raise ConfigurationError(
            f"OFDM equivalence needs a critical lattice (a == M), got a={lat.a}, M={lat.M}"
        )
    symbols = as_grid(symbols, lat, "symbols")
    tx = modulate(symbols, rect_window(lat.L, lat.a), lat)
    return float(np.max(np.abs(tx - blockwise_inverse_dft(symbols))))
