"""Discrete chirp-Fourier transform and linear chirp parameter estimation.

The transform is

    X[k, l] = N**-0.5 * sum_n s[n] * exp(-2j*pi*(l*n**2 + k*n)/N)

so row ``l = 0`` is the unitary DFT. For prime ``N`` a unit chirp with
parameters ``(k0, l0)`` gives ``|X[k0, l0]| = sqrt(N)``, zeros elsewhere in
the matched-rate column and unit magnitude at every other rate.
"""
from dataclasses import dataclass

import numpy as np

from . import kernels
from .core import as_signal
from .errors import DegenerateInputError


@dataclass(frozen=True)
class ChirpParams:
    k0: int
    l0: int
    amplitude: complex = 1.0


def make_chirp(N, params):
    """``amplitude * exp(+2j*pi*(l0*n**2 + k0*n)/N)``; phases reduced mod N exactly."""
    n = np.arange(N, dtype=np.int64)
    phase = (params.l0 * n * n + params.k0 * n) % N
    return params.amplitude * np.exp(2j * np.pi * phase / N)


def dcft(s):
    """``(N, N)`` grid indexed ``[k, l]`` (frequency, chirp rate)."""
    s = as_signal(s)
    if s.size < 2:
        raise ValueError("DCFT needs at least two samples")
    rows = kernels.chirp_demod(s)
    return np.fft.fft(rows, axis=1).T / np.sqrt(s.size)


def estimate_chirp_params(s):
    """Frequency and rate index of the largest DCFT magnitude.

    Ties go to the smallest rate, then the smallest frequency.
    """
    s = as_signal(s)
    if not np.any(s):
        raise DegenerateInputError("cannot estimate chirp parameters of an all-zero signal")
    X = dcft(s)
    # l-major flattening makes argmax honour the (l, k) tie-break
    flat = int(np.argmax(np.abs(X).T))
    l, k = divmod(flat, s.size)
    return ChirpParams(k0=k, l0=l, amplitude=complex(X[k, l] / np.sqrt(s.size)))
