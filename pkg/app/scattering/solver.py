"""Time-domain sound-soft scattering by CQ in time and the discrete calculus in space

    V_c * η + β = 0                    density on the boundary
    M λ = -½ M η + J_c * η             normal derivative
    U = S_c * η                        scattered field at points off Γ
"""
from typing import Dict, Optional, Sequence
import logging

import numpy as np
from pydantic import BaseModel, ConfigDict

from app.exceptions import InvalidArgumentError
from app.models.scheme import SchemeKind, SolveMethod
from app.scattering.geometry import BoundaryGeometry
from app.scattering.incident import IncidentWave, first_arrival, incident_field, sample_incident
from app.scattering.operators import normal_derivative_symbol, potential_symbol, single_layer_symbol
from app.schemes.base_scheme import BaseScheme

logger = logging.getLogger(__name__)

POTENTIAL_CHUNK = 256


class ScatteringResult(BaseModel):
    """Histories on the step grid plus requested field values"""

    model_config = ConfigDict(arbitrary_types_allowed=True)

    times: np.ndarray
    density: np.ndarray
    normal_derivative: np.ndarray
    lag: float
    first_arrival: float
    snapshot_times: np.ndarray  # step times the snapshots were taken at
    requested_snapshot_times: np.ndarray
    snapshots: np.ndarray
    probe_points: np.ndarray
    probe_field: np.ndarray
    probe_incident: np.ndarray

    @property
    def causality_ratio(self) -> float:
        """max |η| at steps before the first arrival relative to max |η|"""
        peak = float(np.max(np.abs(self.density))) if self.density.size else 0.0
        before = self.times <= self.first_arrival
        if peak == 0.0 or not np.any(before):
            return 0.0
        return float(np.max(np.abs(self.density[before]))) / peak

    @property
    def extinction_ratio(self) -> Optional[float]:
        """sup_t |U + u_inc| / sup_t |u_inc| over the probe points"""
        if self.probe_points.shape[0] == 0:
            return None
        scale = float(np.max(np.abs(self.probe_incident)))
        if scale == 0.0:
            return 0.0
        return float(np.max(np.abs(self.probe_field + self.probe_incident))) / scale


def default_method(scheme: BaseScheme) -> SolveMethod:
    """
    Strictly triangular (exactly causal) path for the density equation.

    The all-steps solve reaches the same density up to the contour floor but
    leaks about sqrt(eps) of the late signal into steps before first arrival.
    """
    if scheme.kind == SchemeKind.MULTISTEP:
        return SolveMethod.LOOK_AHEAD
    return SolveMethod.MOT


def _field(
    geom: BoundaryGeometry,
    wave: IncidentWave,
    scheme: BaseScheme,
    kappa: float,
    eta_stages: np.ndarray,
    points: np.ndarray,
) -> np.ndarray:
    """Scattered field at points on the step grid, shape (N_t+1, P)"""
    n_steps = eta_stages.shape[0] - 1
    if points.shape[0] == 0:
        return np.zeros((n_steps + 1, 0))
    chunks = []
    for start in range(0, points.shape[0], POTENTIAL_CHUNK):
        chunk = points[start:start + POTENTIAL_CHUNK]
        symbol = potential_symbol(geom, chunk, wave.speed)
        values = scheme.forward(symbol, kappa, eta_stages, SolveMethod.ALL_STEPS)
        chunks.append(scheme.step_values(values).real)
        logger.debug(f"Evaluated field at points {start}..{start + chunk.shape[0] - 1}")
    return np.concatenate(chunks, axis=1)


def solve_scattering(
    geom: BoundaryGeometry,
    wave: IncidentWave,
    scheme: BaseScheme,
    kappa: float,
    n_steps: int,
    snapshot_times: Sequence[float] = (),
    grid_points=None,
    probe_points=None,
    method: Optional[SolveMethod] = None,
    allow_unstable: bool = False,
) -> ScatteringResult:
    """
    Solve the boundary convolution equation and postprocess.

    Args:
        geom: Sampled boundary
        wave: Incident plane wave (lag resolved from the geometry when unset)
        scheme: Time discretization
        kappa: Time step
        n_steps: Last time index N_t
        snapshot_times: Times at which the field on ``grid_points`` is reported
        grid_points: Snapshot grid, shape (P, 2)
        probe_points: Points where the full field history is kept (extinction checks)
        method: Density solve path (default: exactly causal triangular path)
        allow_unstable: Permit schemes that are not A-stable

    Returns:
        ScatteringResult

    Raises:
        InvalidArgumentError: Non-A-stable scheme without allow_unstable, or bad grid parameters
        NodeEvaluationError: Singular V at some contour node
    """
    if kappa <= 0 or n_steps < 1:
        raise InvalidArgumentError(f"need kappa > 0 and at least one step, got {kappa}, {n_steps}")
    if not scheme.a_stable and not allow_unstable:
        raise InvalidArgumentError(f"scheme {scheme.scheme_id.value} is not A-stable; not usable for waves")

    wave = wave.with_lag(geom)
    method = default_method(scheme) if method is None else SolveMethod(method)
    forward_method = SolveMethod.ALL_STEPS if method == SolveMethod.ALL_STEPS else SolveMethod.MOT
    logger.info(f"Scattering run: {geom}, scheme={scheme.scheme_id.value}, kappa={kappa:g}, "
                f"steps={n_steps}, method={method.value}")

    beta = scheme.sample(lambda t: sample_incident(geom, wave, t), kappa, n_steps)
    eta_stages = scheme.solve(single_layer_symbol(geom, wave.speed), kappa, -beta, method=method)
    j_eta = scheme.forward(normal_derivative_symbol(geom, wave.speed), kappa, eta_stages, forward_method)
    lambda_stages = -0.5 * eta_stages + geom.matrices.solve_mass(j_eta)

    times = scheme.step_times(kappa, n_steps)
    density = scheme.step_values(eta_stages).real
    normal_derivative = scheme.step_values(lambda_stages).real

    grid = np.zeros((0, 2)) if grid_points is None else np.atleast_2d(np.asarray(grid_points, dtype=float))
    probes = np.zeros((0, 2)) if probe_points is None else np.atleast_2d(np.asarray(probe_points, dtype=float))
    snapshot_times = np.asarray(sorted(snapshot_times), dtype=float)
    if snapshot_times.size and grid.shape[0] == 0:
        raise InvalidArgumentError("snapshots requested without a grid")

    snapshot_index = np.array([int(np.argmin(np.abs(times - t))) for t in snapshot_times], dtype=int)
    for requested, index in zip(snapshot_times, snapshot_index):
        if not np.isclose(times[index], requested, rtol=0.0, atol=1e-12 * max(1.0, abs(requested))):
            logger.info(f"Snapshot at t={requested:g} snapped to step {index} (t={times[index]:g})")
    field = _field(geom, wave, scheme, kappa, eta_stages, np.concatenate([grid, probes]))
    snapshots = field[snapshot_index, : grid.shape[0]] if snapshot_index.size else np.zeros((0, grid.shape[0]))
    probe_field = field[:, grid.shape[0]:]
    probe_incident = incident_field(wave, probes, times, wave.lag) if probes.shape[0] else np.zeros_like(probe_field)

    result = ScatteringResult(
        times=times,
        density=density,
        normal_derivative=normal_derivative,
        lag=wave.lag,
        first_arrival=first_arrival(geom, wave),
        snapshot_times=times[snapshot_index],
        requested_snapshot_times=snapshot_times,
        snapshots=snapshots,
        probe_points=probes,
        probe_field=probe_field,
        probe_incident=probe_incident,
    )
    logger.info(f"Scattering run finished: causality ratio {result.causality_ratio:.3g}")
    return result


def snapshot_grid(width: int, height: int, extent: float) -> Dict[str, np.ndarray]:
    """Uniform grid on [-extent, extent]², row-major with y decreasing (image order)"""
    xs = np.linspace(-extent, extent, width)
    ys = np.linspace(extent, -extent, height)
    gx, gy = np.meshgrid(xs, ys)
    return {"x": xs, "y": ys, "points": np.stack([gx.ravel(), gy.ravel()], axis=1)}
