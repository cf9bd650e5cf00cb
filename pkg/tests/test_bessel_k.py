"""Tests for the complex K0/K1 evaluator"""
import numpy as np
import pytest
import scipy.special
from scipy.integrate import quad

from app.exceptions import InvalidArgumentError
from app.special.bessel_k import (
    _continued_fraction,
    _series,
    evaluate_k0_k1,
    hankel_bridge_check,
    k0,
    k1,
)


def polar_grid(radii, max_arg=1.2, n_args=9):
    args = np.linspace(-max_arg, max_arg, n_args)
    return np.array([r * np.exp(1j * a) for r in radii for a in args])


class TestReferenceValues:
    def test_values_at_one(self):
        assert k0(1.0) == pytest.approx(0.421024438240708, rel=1e-13)
        assert k1(1.0) == pytest.approx(0.601907230197235, rel=1e-13)

    @pytest.mark.parametrize("x", [0.3, 1.7, 2.5, 6.0, 15.0])
    def test_integral_representation(self, x):
        # exp(-x cosh t) underflows to zero past this point while cosh t stays finite
        upper = np.arccosh(745.0 / x)
        ref0 = quad(lambda t: np.exp(-x * np.cosh(t)), 0, upper, epsabs=0, epsrel=1e-13, limit=200)[0]
        ref1 = quad(lambda t: np.exp(-x * np.cosh(t)) * np.cosh(t), 0, upper, epsabs=0, epsrel=1e-13, limit=200)[0]
        assert np.isfinite(ref1)
        assert k0(x).real == pytest.approx(ref0, rel=1e-10)
        assert k1(x).real == pytest.approx(ref1, rel=1e-10)
        assert abs(k0(x).imag) <= 1e-15 * abs(ref0)

    def test_against_scipy_on_complex_grid(self):
        z = polar_grid([0.05, 0.5, 1.0, 1.9, 2.1, 3.0, 7.5, 20.0, 60.0])
        pair = evaluate_k0_k1(z)
        np.testing.assert_allclose(pair.k0, scipy.special.kv(0, z), rtol=1e-10)
        np.testing.assert_allclose(pair.k1, scipy.special.kv(1, z), rtol=1e-10)

    def test_near_imaginary_axis(self):
        z = np.array([1e-3 + 5.0j, 1e-2 - 12.0j, 0.1 + 1.0j])
        pair = evaluate_k0_k1(z)
        np.testing.assert_allclose(pair.k0, scipy.special.kv(0, z), rtol=1e-8)
        np.testing.assert_allclose(pair.k1, scipy.special.kv(1, z), rtol=1e-9)


class TestIdentities:
    def test_conjugate_symmetry(self, rng):
        z = rng.uniform(0.01, 10.0, 40) + 1j * rng.uniform(-10.0, 10.0, 40)
        pair = evaluate_k0_k1(z)
        conj = evaluate_k0_k1(np.conj(z))
        np.testing.assert_allclose(conj.k0, np.conj(pair.k0), rtol=1e-14)
        np.testing.assert_allclose(conj.k1, np.conj(pair.k1), rtol=1e-14)

    @pytest.mark.parametrize("z", [0.7, 1.5 + 0.5j, 2.2 - 1.0j, 5.0 + 3.0j])
    def test_derivative_of_k0(self, z):
        h = 1e-4
        derivative = (k0(z + h) - k0(z - h)) / (2 * h)
        assert abs(derivative + k1(z)) <= 1e-6 * abs(k1(z))

    def test_small_argument_limit(self):
        z = 1e-4
        assert z * k1(z).real == pytest.approx(1.0, abs=1e-4)
        assert k0(z).real == pytest.approx(-np.log(z / 2) - np.euler_gamma, rel=1e-6)


class TestHankelBridge:
    @pytest.mark.parametrize("z,tol", [(1.0, 1e-10), (0.01 + 0.5j, 1e-9), (3.0, 1e-10)])
    def test_fixed_points(self, z, tol):
        res0, res1 = hankel_bridge_check(z)
        assert res0 <= tol
        assert res1 <= tol

    def test_random_points(self, rng):
        r = rng.uniform(0.05, 6.0, 50)
        theta = rng.uniform(-1.4, 1.4, 50)
        res0, res1 = hankel_bridge_check(r * np.exp(1j * theta))
        assert max(res0, res1) <= 1e-9


class TestBranches:
    def test_branches_agree_in_overlap(self):
        z = polar_grid([1.5, 2.0, 2.5], max_arg=1.2)
        s0, s1 = _series(z)
        c0, c1 = _continued_fraction(z)
        np.testing.assert_allclose(c0, s0, rtol=1e-10)
        np.testing.assert_allclose(c1, s1, rtol=1e-10)

    def test_continued_fraction_far_out(self):
        z = polar_grid([7.0, 8.0, 9.0])
        c0, c1 = _continued_fraction(z)
        np.testing.assert_allclose(c0, scipy.special.kv(0, z), rtol=1e-11)
        np.testing.assert_allclose(c1, scipy.special.kv(1, z), rtol=1e-11)

    def test_array_shape_is_kept(self):
        z = np.linspace(0.5, 5.0, 12).reshape(3, 4)
        pair = evaluate_k0_k1(z)
        assert pair.k0.shape == (3, 4)
        assert not pair.underflowed.any()


class TestDomain:
    def test_underflow(self):
        pair = evaluate_k0_k1(np.array([800.0 + 1.0j, 1.0]))
        assert pair.underflowed.tolist() == [True, False]
        assert pair.k0[0] == 0
        assert pair.k1[0] == 0

    @pytest.mark.parametrize("z", [0.0, -1.0, 2.0j, -0.5 + 1.0j])
    def test_left_half_plane_rejected(self, z):
        with pytest.raises(InvalidArgumentError):
            evaluate_k0_k1(z)
