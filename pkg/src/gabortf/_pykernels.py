"""Pure numpy implementations of the inner loops.

These are the reference for the compiled kernels in ``_ckernels.pyx``;
both expose the same four functions with identical semantics.
"""
import numpy as np

LCG_MULTIPLIER = 6364136223846793005
LCG_INCREMENT = 1442695040888963407
_MASK64 = (1 << 64) - 1


def fold_analysis(s, g, a, M):
    """Windowed, M-periodically folded products for the analysis transform.

    Returns the (M, N) array ``y[j, n] = sum_k s[j+kM] * conj(g[(j+kM-na) mod L])``.
    A length-M FFT down each column finishes the DGT.
    """
    L = s.shape[0]
    N = L // a
    idx = (np.arange(L)[None, :] - a * np.arange(N)[:, None]) % L
    prod = s[None, :] * np.conj(g)[idx]
    return prod.reshape(N, L // M, M).sum(axis=1).T.copy()


def overlap_synthesis(z, p, a):
    """Overlap-add of shifted windows weighted by M-periodic column signals.

    ``z`` is (M, N); returns ``s[l] = sum_n p[(l-na) mod L] * z[l mod M, n]``.
    """
    M, N = z.shape
    L = N * a
    l = np.arange(L)
    idx = (l[None, :] - a * np.arange(N)[:, None]) % L
    return (p[idx] * z.T[:, l % M]).sum(axis=0)


def chirp_demod(s):
    """Rows ``y[r, n] = s[n] * exp(-2j*pi*(r*n*n mod N)/N)`` for r = 0..N-1."""
    N = s.shape[0]
    n = np.arange(N, dtype=np.int64)
    phase = (np.arange(N, dtype=np.int64)[:, None] * ((n * n) % N)[None, :]) % N
    return s[None, :] * np.exp(-2j * np.pi * phase / N)


def _affine_power(k):
    """Multiplier and increment of k composed LCG steps, mod 2**64."""
    mult, inc = 1, 0
    base_m, base_c = LCG_MULTIPLIER, LCG_INCREMENT
    while k:
        if k & 1:
            mult, inc = (base_m * mult) & _MASK64, (base_m * inc + base_c) & _MASK64
        base_m, base_c = (base_m * base_m) & _MASK64, (base_m * base_c + base_c) & _MASK64
        k >>= 1
    return mult, inc


def lcg_uniform(state, n):
    """Draw n uniforms in [0, 1) from the 64-bit LCG; returns (values, new_state).

    Vectorised by jump-ahead: block [b, 2b) is the affine image of block [0, b).
    """
    state = int(state) & _MASK64
    if n == 0:
        return np.empty(0), state
    states = np.empty(n, dtype=np.uint64)
    states[0] = (LCG_MULTIPLIER * state + LCG_INCREMENT) & _MASK64
    filled = 1
    while filled < n:
        take = min(filled, n - filled)
        mult, inc = _affine_power(filled)
        states[filled:filled + take] = states[:take] * np.uint64(mult) + np.uint64(inc)
        filled += take
    values = (states >> np.uint64(11)).astype(np.float64) * 2.0**-53
    return values, int(states[-1])
