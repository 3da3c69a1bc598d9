import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from gabortf.core import (
    Lattice,
    analysis_matrix_rank,
    dgt,
    gabor_atom,
    idgt,
    make_lattice,
    uncertainty_product,
    wexler_raz_residual,
)
from gabortf.dual import min_norm_dual
from gabortf.errors import DegenerateInputError, DimensionError, DivisibilityError, UnsupportedLatticeError
from gabortf.waveform import GaussianParams, gaussian_pulse, rect_window, triangular_window

from helpers import random_complex, window_cases
from oracles import dgt_bruteforce, idgt_bruteforce, reconstruction_matrix

DELTA4 = np.array([1, 0, 0, 0], dtype=complex)


class TestLattice:
    def test_critical(self):
        lat = make_lattice(4, 2, 2)
        assert (lat.N, lat.density) == (2, 1.0)
        assert lat.critical and lat.reconstructing and not lat.oversampled

    def test_oversampled(self):
        lat = make_lattice(48, 4, 8)
        assert (lat.N, lat.density) == (12, 0.5)
        assert lat.oversampled and not lat.critical
        assert lat.shape == (8, 12)

    @pytest.mark.parametrize("dims", [(4, 3, 2), (4, 2, 3), (10, 4, 5)])
    def test_divisibility(self, dims):
        with pytest.raises(DivisibilityError):
            make_lattice(*dims)

    @pytest.mark.parametrize("dims", [(0, 1, 1), (4, 0, 2), (4, 2, -2)])
    def test_positivity(self, dims):
        with pytest.raises(ValueError):
            make_lattice(*dims)

    def test_undersampled_is_constructible_but_flagged(self):
        lat = make_lattice(8, 4, 2)
        assert lat.density == 2.0 and not lat.reconstructing
        with pytest.raises(UnsupportedLatticeError):
            lat.require_reconstructing()


class TestAtom:
    def test_hand_evaluated(self):
        atom = gabor_atom([1, 1, 0, 0], make_lattice(4, 2, 2), 1, 1)
        np.testing.assert_allclose(atom, [0, 0, 1, -1], atol=1e-15)

    def test_origin_is_window(self, rng):
        w = random_complex(rng, 12)
        np.testing.assert_array_equal(gabor_atom(w, make_lattice(12, 3, 4), 0, 0), w)

    def test_pure_shift(self):
        atom = gabor_atom(DELTA4, make_lattice(4, 1, 4), 2, 0)
        np.testing.assert_array_equal(atom, [0, 0, 1, 0])

    @pytest.mark.parametrize("n,m", [(2, 0), (0, 2), (-1, 0)])
    def test_out_of_range(self, n, m):
        with pytest.raises(IndexError):
            gabor_atom([1, 1, 0, 0], make_lattice(4, 2, 2), n, m)


class TestDgt:
    def test_hand_evaluated(self, backend):
        c = dgt([1, 2, 3, 4], [0.5, 0.5, 0, 0], make_lattice(4, 2, 2))
        np.testing.assert_allclose(c, [[1.5, 3.5], [-0.5, -0.5]], atol=1e-15)

    def test_zero_signal(self, backend):
        assert not np.any(dgt(np.zeros(8), np.ones(8), make_lattice(8, 2, 4)))

    def test_stft_of_delta_window(self, backend, rng):
        L = 6
        s = random_complex(rng, L)
        w = np.zeros(L)
        w[0] = 1
        c = dgt(s, w, make_lattice(L, 1, L))
        m, n = np.meshgrid(np.arange(L), np.arange(L), indexing="ij")
        np.testing.assert_allclose(c, s[n] * np.exp(-2j * np.pi * m * n / L), atol=1e-13)

    def test_length_mismatch(self):
        with pytest.raises(DimensionError):
            dgt(np.ones(5), np.ones(4), make_lattice(4, 2, 2))

    @pytest.mark.parametrize("dims", [(4, 2, 2), (12, 3, 4), (24, 4, 6), (48, 4, 8), (48, 8, 4), (30, 5, 3)])
    def test_matches_bruteforce(self, backend, dims, rng):
        L, a, M = dims
        s, g = random_complex(rng, L), random_complex(rng, L)
        np.testing.assert_allclose(dgt(s, g, Lattice(*dims)), dgt_bruteforce(s, g, a, M), atol=1e-12 * L)

    def test_time_shift_covariance(self, backend, rng):
        lat = make_lattice(24, 4, 6)
        s, g = random_complex(rng, 24), random_complex(rng, 24)
        shifted = dgt(np.roll(s, lat.a), g, lat)
        rotated = np.roll(dgt(s, g, lat), 1, axis=1)
        # the modulation is anchored at l = 0, so a shift by a also turns row m by exp(-2j*pi*m*a/M)
        phase = np.exp(-2j * np.pi * np.arange(lat.M) * lat.a / lat.M)[:, None]
        np.testing.assert_allclose(shifted, phase * rotated, atol=1e-12)
        np.testing.assert_allclose(np.abs(shifted), np.abs(rotated), atol=1e-12)


class TestIdgt:
    def test_hand_evaluated(self, backend):
        lat = make_lattice(4, 2, 2)
        c = np.array([[1.5, 3.5], [-0.5, -0.5]])
        np.testing.assert_allclose(idgt(c, [1, 1, 0, 0], lat), [1, 2, 3, 4], atol=1e-15)

    def test_zero_grid(self, backend):
        assert not np.any(idgt(np.zeros((2, 2)), [1, 1, 0, 0], make_lattice(4, 2, 2)))

    def test_single_coefficient_gives_window(self, backend, rng):
        lat = make_lattice(12, 3, 4)
        p = random_complex(rng, 12)
        c = np.zeros(lat.shape, dtype=complex)
        c[0, 0] = 1
        np.testing.assert_allclose(idgt(c, p, lat), p, atol=1e-15)

    def test_shape_mismatch(self):
        with pytest.raises(DimensionError):
            idgt(np.zeros((2, 3)), [1, 1, 0, 0], make_lattice(4, 2, 2))

    @pytest.mark.parametrize("dims", [(4, 2, 2), (12, 3, 4), (48, 4, 8), (30, 5, 3)])
    def test_matches_bruteforce(self, backend, dims, rng):
        L, a, M = dims
        lat = Lattice(*dims)
        c, p = random_complex(rng, *lat.shape), random_complex(rng, L)
        np.testing.assert_allclose(idgt(c, p, lat), idgt_bruteforce(c, p, a), atol=1e-12 * L)


@pytest.mark.parametrize("dims", [(4, 2, 2), (16, 4, 8), (48, 4, 8), (24, 6, 4)])
def test_linearity(backend, dims, rng):
    lat = Lattice(*dims)
    s1, s2, g = (random_complex(rng, lat.L) for _ in range(3))
    alpha, beta = 0.3 - 1.2j, -2.0 + 0.5j
    np.testing.assert_allclose(
        dgt(alpha * s1 + beta * s2, g, lat), alpha * dgt(s1, g, lat) + beta * dgt(s2, g, lat), atol=1e-12
    )
    c1, c2 = random_complex(rng, *lat.shape), random_complex(rng, *lat.shape)
    np.testing.assert_allclose(
        idgt(alpha * c1 + beta * c2, g, lat), alpha * idgt(c1, g, lat) + beta * idgt(c2, g, lat), atol=1e-12
    )


@pytest.mark.parametrize("dims", [(4, 2, 2), (16, 4, 8), (48, 4, 8), (24, 6, 4)])
def test_adjointness(backend, dims, rng):
    lat = Lattice(*dims)
    s, p = random_complex(rng, lat.L), random_complex(rng, lat.L)
    c = random_complex(rng, *lat.shape)
    lhs = np.vdot(c, dgt(s, p, lat))  # <dgt(s), c>
    rhs = np.vdot(idgt(c, p, lat), s)  # <s, idgt(c)>
    assert abs(lhs - rhs) < 1e-12 * max(1.0, abs(lhs))


class TestWexlerRaz:
    def test_rect_pair(self):
        assert wexler_raz_residual([1, 1, 0, 0], [0.5, 0.5, 0, 0], make_lattice(4, 2, 2)) < 1e-15

    def test_self_pair_is_not_dual(self):
        assert wexler_raz_residual([1, 1, 0, 0], [1, 1, 0, 0], make_lattice(4, 2, 2)) == 1.0

    def test_delta_pair(self):
        assert wexler_raz_residual(DELTA4, DELTA4 / 4, make_lattice(4, 1, 4)) < 1e-15

    def test_rejects_undersampled(self):
        with pytest.raises(UnsupportedLatticeError):
            wexler_raz_residual(np.ones(8), np.ones(8), make_lattice(8, 4, 2))

    @pytest.mark.parametrize("lat,p", list(window_cases()))
    def test_residual_zero_iff_reconstruction(self, lat, p, rng):
        gamma = min_norm_dual(p, lat)
        ident = np.eye(lat.L)
        assert wexler_raz_residual(p, gamma, lat) < 1e-10
        np.testing.assert_allclose(reconstruction_matrix(p, gamma, lat.a, lat.M), ident, atol=1e-10)
        perturbed = gamma + 1e-3 * random_complex(rng, lat.L)
        assert wexler_raz_residual(p, perturbed, lat) > 1e-6
        assert np.max(np.abs(reconstruction_matrix(p, perturbed, lat.a, lat.M) - ident)) > 1e-6


class TestRank:
    def test_rect(self):
        assert analysis_matrix_rank([1, 1, 0, 0], make_lattice(4, 2, 2)) == 4

    def test_zero(self):
        assert analysis_matrix_rank(np.zeros(4), make_lattice(4, 2, 2)) == 0

    def test_delta_on_coarse_lattice(self):
        assert analysis_matrix_rank(DELTA4, make_lattice(4, 2, 2)) == 2

    @pytest.mark.parametrize("lat,w", list(window_cases()))
    def test_full_rank_windows(self, lat, w):
        assert analysis_matrix_rank(w, lat) == lat.L


class TestUncertainty:
    L = 1024

    def gaussian(self, sigma=64.0):
        return gaussian_pulse(Lattice(self.L, 1, 1), GaussianParams(1.0, sigma))

    def test_gaussian_meets_bound(self):
        assert uncertainty_product(self.gaussian()) == pytest.approx(0.5, rel=0.02)

    def test_modulation_invariant(self):
        g = self.gaussian()
        tone = np.exp(2j * np.pi * np.arange(self.L) * 16 / self.L)
        assert uncertainty_product(g * tone) == pytest.approx(uncertainty_product(g), rel=1e-9)

    def test_rectangle_exceeds_bound(self):
        assert uncertainty_product(rect_window(self.L, 64)) > 0.5

    def test_gaussian_is_most_compact(self):
        g = self.gaussian()
        rect = rect_window(self.L, 256)
        tri = triangular_window(self.L, 384)
        windows = [w / np.linalg.norm(w) for w in (g, rect, tri)]
        up_gauss, up_rect, up_tri = (uncertainty_product(w) for w in windows)
        assert up_gauss < up_tri and up_gauss < up_rect

    def test_impulse_scores_below_continuum_bound(self):
        w = np.zeros(64)
        w[10] = 1
        assert uncertainty_product(w) < 0.5

    def test_zero_signal(self):
        with pytest.raises(DegenerateInputError):
            uncertainty_product(np.zeros(16))


@settings(max_examples=40, deadline=None)
@given(
    dims=st.sampled_from([(4, 2, 2), (8, 2, 4), (12, 3, 4), (16, 4, 8), (12, 2, 6)]),
    seed=st.integers(0, 2**32 - 1),
)
def test_perfect_reconstruction_property(dims, seed):
    lat = Lattice(*dims)
    rng = np.random.default_rng(seed)
    p = random_complex(rng, lat.L)
    if analysis_matrix_rank(p, lat) < lat.L:
        return
    gamma = min_norm_dual(p, lat)
    s = random_complex(rng, lat.L)
    scale = np.linalg.norm(gamma) * np.linalg.norm(p) * lat.L
    assert np.max(np.abs(idgt(dgt(s, gamma, lat), p, lat) - s)) < 1e-12 * max(scale, 1.0)
