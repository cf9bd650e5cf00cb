"""Plane-wave excitation u_inc(z, t) = ψ(c(t - t_lag) - z·d)"""
from typing import Optional, Tuple
import logging

import numpy as np
from pydantic import BaseModel, Field, field_validator

from app.constants.calderon import DEFAULT_LAG_MARGIN, DEFAULT_SIGNAL_POWER, DEFAULT_SIGNAL_RATE
from app.scattering.curves import Curve
from app.scattering.geometry import BoundaryGeometry

logger = logging.getLogger(__name__)


class IncidentWave(BaseModel):
    """Plane wave with causal signal ψ(t) = amplitude · t^power · e^{-rate t}, t > 0"""

    direction: Tuple[float, float] = Field((1.0, 0.0), description="Propagation direction (normalized)")
    speed: float = Field(1.0, gt=0, description="Wave speed c")
    lag: Optional[float] = Field(None, gt=0, description="Time lag; default from the geometry")
    amplitude: float = Field(1.0, description="Signal amplitude")
    power: int = Field(DEFAULT_SIGNAL_POWER, ge=1, description="Signal vanishes like t^power at 0")
    rate: float = Field(DEFAULT_SIGNAL_RATE, gt=0, description="Signal decay rate")

    @field_validator("direction")
    @classmethod
    def normalize_direction(cls, v):
        norm = float(np.hypot(*v))
        if norm == 0.0:
            raise ValueError("direction must be non-zero")
        return (v[0] / norm, v[1] / norm)

    @property
    def d(self) -> np.ndarray:
        return np.array(self.direction)

    def signal(self, t) -> np.ndarray:
        t = np.asarray(t, dtype=float)
        positive = np.where(t > 0, t, 0.0)
        return np.where(t > 0, self.amplitude * positive ** self.power * np.exp(-self.rate * positive), 0.0)

    def resolved_lag(self, geom: BoundaryGeometry) -> float:
        """t_lag, defaulting to margin + max_j |m_j·d| / c"""
        if self.lag is not None:
            return self.lag
        return DEFAULT_LAG_MARGIN + float(np.max(np.abs(geom.sources @ self.d))) / self.speed

    def with_lag(self, geom: BoundaryGeometry) -> "IncidentWave":
        return self.model_copy(update={"lag": self.resolved_lag(geom)})


def incident_field(wave: IncidentWave, points, times, lag: float) -> np.ndarray:
    """u_inc at points for every time, shape times.shape + (P,)"""
    points = np.atleast_2d(np.asarray(points, dtype=float))
    times = np.asarray(times, dtype=float)
    projection = points @ wave.d
    return wave.signal(wave.speed * (times[..., None] - lag) - projection)


def sample_incident(geom: BoundaryGeometry, wave: IncidentWave, times) -> np.ndarray:
    """β_i(t) = ½ Σ_± ψ(c(t - t_lag) - m_i±·d), shape times.shape + (N,)"""
    lag = wave.resolved_lag(geom)
    return 0.5 * (incident_field(wave, geom.obs_plus, times, lag)
                  + incident_field(wave, geom.obs_minus, times, lag))


def first_arrival(geom: BoundaryGeometry, wave: IncidentWave) -> float:
    """Earliest time at which β is non-zero on some observation point"""
    lag = wave.resolved_lag(geom)
    projection = np.concatenate([geom.obs_plus @ wave.d, geom.obs_minus @ wave.d])
    return lag + float(np.min(projection)) / wave.speed


def inside_mask(curve: Curve, points, samples: int = 1024) -> np.ndarray:
    """Winding number test of points against a dense polygon of the curve"""
    points = np.atleast_2d(np.asarray(points, dtype=float))
    polygon = curve.x(np.linspace(0.0, 1.0, samples, endpoint=False))
    a = polygon[None, :, :] - points[:, None, :]
    b = np.roll(polygon, -1, axis=0)[None, :, :] - points[:, None, :]
    cross = a[..., 0] * b[..., 1] - a[..., 1] * b[..., 0]
    dot = np.einsum("pkj,pkj->pk", a, b)
    winding = np.arctan2(cross, dot).sum(axis=1) / (2.0 * np.pi)
    return np.abs(winding) > 0.5
