"""Laplace-domain single-layer operators of the fully discrete calculus

Kernels are written with K0/K1 of the rotated argument:

    (i/4) H0^(1)(is r) = K0(s r) / (2π)
    (s/4) H1^(1)(is r) = -s K1(s r) / (2π)

Every operator family satisfies F(conj s) = conj F(s).
"""
import logging

import numpy as np

from app.cq.symbols import Symbol, scaled_argument
from app.exceptions import GeometryError, InvalidArgumentError
from app.scattering.geometry import BoundaryGeometry
from app.special.bessel_k import evaluate_k0_k1

logger = logging.getLogger(__name__)

INV_TWO_PI = 1.0 / (2.0 * np.pi)


def _check_frequency(s: complex) -> complex:
    s = complex(s)
    if not s.real > 0:
        raise InvalidArgumentError(f"operators need Re s > 0, got s={s}")
    return s


def assemble_V(geom: BoundaryGeometry, s: complex) -> np.ndarray:
    """V(s)_ij = ½ Σ_± K0(s|m_i± - m_j|)/(2π)"""
    s = _check_frequency(s)
    out = np.zeros((geom.n, geom.n), dtype=complex)
    for _, dist, _ in geom.observation_grids():
        out += evaluate_k0_k1(s * dist).k0
    return 0.5 * INV_TWO_PI * out


def assemble_J_uncorrected(geom: BoundaryGeometry, s: complex) -> np.ndarray:
    """J°(s)_ij = ½ Σ_± (-s/2π) K1(s r±) ((m_i± - m_j)·n_i±)/r±"""
    s = _check_frequency(s)
    out = np.zeros((geom.n, geom.n), dtype=complex)
    for diff, dist, normals in geom.observation_grids():
        projection = np.einsum("ijk,ik->ij", diff, normals) / dist
        out += evaluate_k0_k1(s * dist).k1 * projection
    return -0.5 * s * INV_TWO_PI * out


def assemble_J(geom: BoundaryGeometry, s: complex) -> np.ndarray:
    """J(s) = Q J°(s)"""
    return geom.Q @ assemble_J_uncorrected(geom, s)


def potential_matrix(geom: BoundaryGeometry, s: complex, points) -> np.ndarray:
    """
    Rows of the discrete single-layer potential, S(s)_pj = K0(s|z_p - m_j|)/(2π).

    Raises:
        GeometryError: If a point coincides with a source
    """
    s = _check_frequency(s)
    points = np.atleast_2d(np.asarray(points, dtype=float))
    dist = np.linalg.norm(points[:, None, :] - geom.sources[None, :, :], axis=2)
    if np.min(dist) <= 0.0:
        raise GeometryError("potential evaluated at a source point")
    return INV_TWO_PI * evaluate_k0_k1(s * dist).k0


def potential_at(geom: BoundaryGeometry, s: complex, eta, z) -> complex:
    """(S(s)η)(z) = (1/2π) Σ_j K0(s|z - m_j|) η_j"""
    eta = np.asarray(eta, dtype=complex)
    if eta.shape != (geom.n,):
        raise InvalidArgumentError(f"density must have {geom.n} entries, got {eta.shape}")
    return complex(potential_matrix(geom, s, [z])[0] @ eta)


def single_layer_symbol(geom: BoundaryGeometry, speed: float = 1.0) -> Symbol:
    """s ↦ V(s/c)"""
    base = Symbol(lambda s: assemble_V(geom, s), dims=(geom.n, geom.n), conjugate_symmetric=True,
                  name="V")
    return scaled_argument(base, speed)


def normal_derivative_symbol(geom: BoundaryGeometry, speed: float = 1.0) -> Symbol:
    """s ↦ J(s/c)"""
    base = Symbol(lambda s: assemble_J(geom, s), dims=(geom.n, geom.n), conjugate_symmetric=True,
                  name="J")
    return scaled_argument(base, speed)


def potential_symbol(geom: BoundaryGeometry, points, speed: float = 1.0) -> Symbol:
    """s ↦ S(s/c) restricted to the given evaluation points"""
    points = np.atleast_2d(np.asarray(points, dtype=float))
    base = Symbol(lambda s: potential_matrix(geom, s, points), dims=(points.shape[0], geom.n),
                  conjugate_symmetric=True, name="S")
    return scaled_argument(base, speed)
