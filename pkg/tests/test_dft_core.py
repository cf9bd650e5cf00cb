"""Tests for the DFT conventions and FFT convolutions"""
import numpy as np
import pytest

from app.cq.dft_core import (
    causal_conv,
    dft,
    half_length,
    idft,
    is_hermitian,
    periodic_conv,
    symmetrize,
)
from app.exceptions import InvalidArgumentError


def direct_periodic(x, y):
    n = len(x)
    return np.array([sum(x[m] * y[(k - m) % n] for m in range(n)) for k in range(n)])


def direct_causal(x, y, n):
    return np.array([sum(x[m] * y[k - m] for m in range(k + 1)) for k in range(n + 1)])


class TestDft:
    def test_constant_maps_to_dc_bin(self):
        np.testing.assert_allclose(dft([1, 1, 1, 1]), [4, 0, 0, 0], atol=1e-15)

    def test_unit_impulse(self):
        np.testing.assert_allclose(dft([1, 0, 0, 0]), [1, 1, 1, 1], atol=1e-15)

    def test_shifted_impulse_uses_negative_exponent(self):
        np.testing.assert_allclose(dft([0, 1, 0, 0]), [1, -1j, -1, 1j], atol=1e-15)

    def test_inverse_examples(self):
        np.testing.assert_allclose(idft([4, 0, 0, 0]), [1, 1, 1, 1], atol=1e-15)
        np.testing.assert_allclose(idft([1, 1, 1, 1]), [1, 0, 0, 0], atol=1e-15)

    def test_round_trip_short(self):
        np.testing.assert_allclose(idft(dft([1, 2, 3])), [1, 2, 3], atol=1e-14)

    def test_round_trip_all_lengths(self, rng):
        for length in range(1, 257):
            x = rng.standard_normal(length) + 1j * rng.standard_normal(length)
            back = idft(dft(x))
            assert np.max(np.abs(back - x)) <= 1e-13 * np.max(np.abs(x))

    def test_matches_definition_for_prime_length(self, rng):
        n = 13
        x = rng.standard_normal(n) + 1j * rng.standard_normal(n)
        zeta = np.exp(2j * np.pi / n)
        expected = np.array([sum(x[m] * zeta ** (-ell * m) for m in range(n)) for ell in range(n)])
        np.testing.assert_allclose(dft(x), expected, rtol=1e-12, atol=1e-12)

    def test_vector_sequences_transform_componentwise(self, rng):
        x = rng.standard_normal((10, 3))
        out = dft(x)
        for j in range(3):
            np.testing.assert_allclose(out[:, j], dft(x[:, j]), atol=1e-13)

    def test_empty_input_rejected(self):
        with pytest.raises(InvalidArgumentError):
            dft([])


class TestPeriodicConv:
    def test_identity(self):
        np.testing.assert_allclose(periodic_conv([1, 0], [2.5, -1.0]), [2.5, -1.0], atol=1e-15)

    def test_ones(self):
        np.testing.assert_allclose(periodic_conv([1, 1], [1, 1]), [2, 2], atol=1e-15)

    def test_random_against_double_sum(self, rng):
        for _ in range(20):
            x = rng.standard_normal(8) + 1j * rng.standard_normal(8)
            y = rng.standard_normal(8) + 1j * rng.standard_normal(8)
            expected = direct_periodic(x, y)
            assert np.max(np.abs(periodic_conv(x, y) - expected)) <= 1e-13 * np.max(np.abs(expected))

    def test_length_mismatch(self):
        with pytest.raises(InvalidArgumentError):
            periodic_conv([1, 2, 3], [1, 2])


class TestCausalConv:
    def test_hand_computation(self):
        np.testing.assert_allclose(causal_conv([1, 2], [3, 4], 1), [3, 10], atol=1e-14)

    def test_discrete_delta(self):
        y = np.array([0.3, -1.2, 4.0])
        np.testing.assert_allclose(causal_conv([1, 0, 0], y, 2), y, atol=1e-14)

    def test_ones(self):
        np.testing.assert_allclose(causal_conv([1, 1, 1], [1, 1, 1], 2), [1, 2, 3], atol=1e-14)

    def test_ignores_entries_past_n(self):
        np.testing.assert_allclose(causal_conv([1, 2, 99], [3, 4, 99], 1), [3, 10], atol=1e-13)

    @pytest.mark.parametrize("n", [0, 1, 7, 64, 255, 511])
    def test_against_triangular_sum(self, rng, n):
        x = rng.standard_normal(n + 1) + 1j * rng.standard_normal(n + 1)
        y = rng.standard_normal(n + 1) + 1j * rng.standard_normal(n + 1)
        expected = np.convolve(x, y)[: n + 1]
        assert np.max(np.abs(causal_conv(x, y, n) - expected)) <= 1e-12 * np.max(np.abs(expected))

    def test_short_input(self):
        with pytest.raises(InvalidArgumentError):
            causal_conv([1, 2], [1, 2, 3], 2)


class TestSymmetrize:
    def test_half_lengths(self):
        assert half_length(3) == 3
        assert half_length(4) == 3
        assert half_length(0) == 1

    def test_odd_last_index(self):
        out = symmetrize([1.0, 2 + 1j, 5.0], 3)
        np.testing.assert_array_equal(out, [1.0, 2 + 1j, 5.0, 2 - 1j])

    def test_real_half_is_its_own_reflection(self):
        out = symmetrize([1.0, 2.0, 3.0], 4)
        np.testing.assert_array_equal(out, [1.0, 2.0, 3.0, 3.0, 2.0])
        assert is_hermitian(out)

    def test_reproduces_dft_of_real_vector(self, rng):
        for n in (5, 6, 31, 32):
            x = rng.standard_normal(n + 1)
            full = dft(x)
            assert is_hermitian(full)
            rebuilt = symmetrize(full[: half_length(n)], n)
            assert np.max(np.abs(rebuilt - full)) <= 1e-13 * np.max(np.abs(full))

    def test_wrong_half_length(self):
        with pytest.raises(InvalidArgumentError):
            symmetrize([1, 2], 4)
