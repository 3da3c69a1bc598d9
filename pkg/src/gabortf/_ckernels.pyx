# cython: language_level=3
"""Compiled inner loops; semantics mirror ``gabortf._pykernels`` exactly."""
import numpy as np
cimport numpy as cnp
from libc.math cimport cos, sin, M_PI
from libc.stdint cimport uint64_t

cnp.import_array()

cdef uint64_t LCG_MULTIPLIER = 6364136223846793005ULL
cdef uint64_t LCG_INCREMENT = 1442695040888963407ULL


def fold_analysis(const double complex[::1] s, const double complex[::1] g,
                  Py_ssize_t a, Py_ssize_t M):
    cdef Py_ssize_t L = s.shape[0]
    cdef Py_ssize_t N = L // a
    cdef Py_ssize_t n, l, j, idx
    cdef double sr, si, gr, gi
    out = np.zeros((N, M), dtype=np.complex128)
    cdef double[:, ::1] y = out.view(np.float64)
    for n in range(N):
        idx = L - n * a if n else 0
        j = 0
        for l in range(L):
            if idx == L:
                idx = 0
            if j == M:
                j = 0
            sr = s[l].real
            si = s[l].imag
            gr = g[idx].real
            gi = g[idx].imag
            # s * conj(g)
            y[n, 2 * j] += sr * gr + si * gi
            y[n, 2 * j + 1] += si * gr - sr * gi
            idx += 1
            j += 1
    return out.T.copy()


def overlap_synthesis(const double complex[:, :] z, const double complex[::1] p,
                      Py_ssize_t a):
    cdef Py_ssize_t M = z.shape[0]
    cdef Py_ssize_t N = z.shape[1]
    cdef Py_ssize_t L = N * a
    cdef Py_ssize_t n, l, j, idx
    cdef double pr, pi, zr, zi
    zt = np.ascontiguousarray(np.asarray(z).T)
    cdef double[:, ::1] zv = zt.view(np.float64)
    out = np.zeros(L, dtype=np.complex128)
    cdef double[::1] s = out.view(np.float64)
    for n in range(N):
        idx = L - n * a if n else 0
        j = 0
        for l in range(L):
            if idx == L:
                idx = 0
            if j == M:
                j = 0
            pr = p[idx].real
            pi = p[idx].imag
            zr = zv[n, 2 * j]
            zi = zv[n, 2 * j + 1]
            s[2 * l] += pr * zr - pi * zi
            s[2 * l + 1] += pr * zi + pi * zr
            idx += 1
            j += 1
    return out


def chirp_demod(const double complex[::1] s):
    cdef Py_ssize_t N = s.shape[0]
    cdef Py_ssize_t r, n, ph
    out = np.empty((N, N), dtype=np.complex128)
    cdef double complex[:, ::1] y = out
    cdef double[::1] c = np.empty(N)
    cdef double[::1] si = np.empty(N)
    cdef long long[::1] sq = np.empty(N, dtype=np.int64)
    for n in range(N):
        c[n] = cos(2.0 * M_PI * n / N)
        si[n] = -sin(2.0 * M_PI * n / N)
        sq[n] = (n * n) % N
    for r in range(N):
        for n in range(N):
            ph = (r * sq[n]) % N
            y[r, n] = s[n] * (c[ph] + 1j * si[ph])
    return out


def lcg_uniform(state, Py_ssize_t n):
    cdef uint64_t x = (<uint64_t>(int(state) & 0xFFFFFFFFFFFFFFFF))
    cdef Py_ssize_t i
    out = np.empty(n, dtype=np.float64)
    cdef double[::1] v = out
    for i in range(n):
        x = LCG_MULTIPLIER * x + LCG_INCREMENT
        v[i] = <double>(x >> 11) * (1.0 / 9007199254740992.0)
    return out, int(x)
