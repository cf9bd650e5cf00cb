"""Sampled boundary: sources, observation grids and correction matrices"""
import logging

import numpy as np
import scipy.linalg

from app.constants.calderon import (
    MASS_DIAGONAL,
    MASS_OFF_DIAGONAL,
    MIN_BOUNDARY_POINTS,
    NORMAL_DIAGONAL,
    NORMAL_OFF_DIAGONAL,
    OBSERVATION_OFFSET,
)
from app.exceptions import GeometryError, InvalidArgumentError
from app.scattering.curves import Curve

logger = logging.getLogger(__name__)


def circulant_tridiagonal(n: int, diagonal: float, off_diagonal: float) -> np.ndarray:
    """Symmetric circulant with the given diagonal and first cyclic off-diagonals"""
    first = np.zeros(n)
    first[0] = diagonal
    first[1] += off_diagonal
    first[-1] += off_diagonal
    return scipy.linalg.circulant(first)


class CalderonMatrices:
    """Mass matrix M and normal-derivative correction Q"""

    def __init__(self, n: int):
        if n < MIN_BOUNDARY_POINTS:
            raise InvalidArgumentError(f"need at least {MIN_BOUNDARY_POINTS} boundary points, got {n}")
        self.M = circulant_tridiagonal(n, MASS_DIAGONAL, MASS_OFF_DIAGONAL)
        self.Q = circulant_tridiagonal(n, NORMAL_DIAGONAL, NORMAL_OFF_DIAGONAL)
        self.M.flags.writeable = False
        self.Q.flags.writeable = False
        self._mass_factor = scipy.linalg.cho_factor(self.M)

    def solve_mass(self, rhs: np.ndarray) -> np.ndarray:
        """M⁻¹ rhs along the last axis"""
        flat = rhs.reshape(-1, rhs.shape[-1]).T
        return scipy.linalg.cho_solve(self._mass_factor, flat).T.reshape(rhs.shape)


class BoundaryGeometry:
    """
    Point sources m_j = x(jh) with normals h·n(jh) and two observation grids
    at parameters (i ± 1/6)h, h = 1/N.
    """

    def __init__(self, curve: Curve, n: int):
        if n < MIN_BOUNDARY_POINTS:
            raise InvalidArgumentError(f"need at least {MIN_BOUNDARY_POINTS} boundary points, got {n}")
        self.curve = curve
        self.n = n
        self.h = 1.0 / n

        r = np.arange(n) * self.h
        self.sources = curve.x(r)
        self.source_normals = self.h * curve.normal(r)
        self.obs_plus = curve.x(r + OBSERVATION_OFFSET * self.h)
        self.obs_minus = curve.x(r - OBSERVATION_OFFSET * self.h)
        self.normals_plus = self.h * curve.normal(r + OBSERVATION_OFFSET * self.h)
        self.normals_minus = self.h * curve.normal(r - OBSERVATION_OFFSET * self.h)
        self.matrices = CalderonMatrices(n)

        self._diff_plus, self._dist_plus = self._offsets(self.obs_plus)
        self._diff_minus, self._dist_minus = self._offsets(self.obs_minus)
        for arr in (self.sources, self.source_normals, self.obs_plus, self.obs_minus,
                    self.normals_plus, self.normals_minus):
            arr.flags.writeable = False
        logger.debug(f"Sampled {curve.name} with {n} points (h={self.h:.4g})")

    def _offsets(self, observations: np.ndarray):
        diff = observations[:, None, :] - self.sources[None, :, :]
        dist = np.linalg.norm(diff, axis=2)
        if np.min(dist) <= 0.0:
            raise GeometryError(f"observation point coincides with a source on {self.curve.name}")
        return diff, dist

    def observation_grids(self):
        """[(differences m_i± - m_j, distances, normals n_i±)] for the + and - grids"""
        return [
            (self._diff_plus, self._dist_plus, self.normals_plus),
            (self._diff_minus, self._dist_minus, self.normals_minus),
        ]

    @property
    def M(self) -> np.ndarray:
        return self.matrices.M

    @property
    def Q(self) -> np.ndarray:
        return self.matrices.Q

    def polygon(self, samples: int = 512) -> np.ndarray:
        """Dense closed polyline of the curve"""
        return self.curve.x(np.linspace(0.0, 1.0, samples, endpoint=False))

    def __repr__(self) -> str:
        return f"BoundaryGeometry({self.curve.name}, N={self.n})"
