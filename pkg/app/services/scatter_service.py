"""Scattering demo driver: run, write histories and snapshots, report diagnostics"""
from pathlib import Path
import logging

import numpy as np

from app.models.report import ScatterSummary
from app.models.run_config import RunConfig
from app.scattering.curves import Curve, get_curve
from app.scattering.geometry import BoundaryGeometry
from app.scattering.incident import IncidentWave, inside_mask
from app.scattering.solver import snapshot_grid, solve_scattering
from app.schemes.scheme_factory import SchemeFactory
from app.utils.graymap import write_graymap
from app.utils.table_io import write_history_csv, write_matrix_csv

logger = logging.getLogger(__name__)

PROBE_COUNT = 5
PROBE_SHRINK = 0.4


def interior_probes(curve: Curve, count: int = PROBE_COUNT, shrink: float = PROBE_SHRINK) -> np.ndarray:
    """Points shrunk towards the centroid of the curve, kept if inside"""
    boundary = curve.x(np.arange(count) / count)
    centroid = curve.x(np.linspace(0.0, 1.0, 256, endpoint=False)).mean(axis=0)
    candidates = centroid + shrink * (boundary - centroid)
    return candidates[inside_mask(curve, candidates)]


def run_scatter(cfg: RunConfig) -> ScatterSummary:
    """
    Solve the scattering problem described by ``cfg`` and write its artifacts.

    Artifacts in ``cfg.out``: density.csv, normal_derivative.csv and, per
    snapshot, snapshot_<k>.csv, snapshot_<k>.pgm and snapshot_<k>.pgm.json.
    """
    curve = get_curve(cfg.geometry)
    geom = BoundaryGeometry(curve, cfg.boundary_points)
    wave = IncidentWave(direction=cfg.direction, speed=cfg.speed, amplitude=cfg.amplitude)
    scheme = SchemeFactory.get_scheme(cfg.scheme, cfg.eps, cfg.oversampling)

    grid = None
    if cfg.grid is not None:
        grid = snapshot_grid(cfg.grid[0], cfg.grid[1], cfg.grid_extent)
    probes = interior_probes(curve)

    result = solve_scattering(
        geom,
        wave,
        scheme,
        cfg.kappa,
        cfg.steps,
        snapshot_times=cfg.snapshots if grid is not None else (),
        grid_points=None if grid is None else grid["points"],
        probe_points=probes,
    )

    out = Path(cfg.out)
    artifacts = {
        "density": str(write_history_csv(out / "density.csv", result.times, result.density, "eta")),
        "normal_derivative": str(write_history_csv(out / "normal_derivative.csv", result.times,
                                                   result.normal_derivative, "lambda")),
    }
    if grid is not None:
        height, width = cfg.grid[1], cfg.grid[0]
        snapped = zip(result.snapshot_times, result.requested_snapshot_times, result.snapshots)
        for k, (t, requested, values) in enumerate(snapped):
            matrix = values.reshape(height, width)
            artifacts[f"snapshot_{k}"] = str(write_matrix_csv(out / f"snapshot_{k}.csv", matrix, grid["x"]))
            write_graymap(out / f"snapshot_{k}.pgm", matrix, time=float(t), requested_time=float(requested))
            artifacts[f"snapshot_{k}_pgm"] = str(out / f"snapshot_{k}.pgm")

    summary = ScatterSummary(
        scheme=scheme.scheme_id.value,
        boundary_points=geom.n,
        steps=cfg.steps,
        kappa=cfg.kappa,
        first_arrival=result.first_arrival,
        causality_ratio=result.causality_ratio,
        extinction_ratio=result.extinction_ratio,
        artifacts=artifacts,
    )
    (out / "summary.json").write_text(summary.model_dump_json(indent=2))
    logger.info(f"Scattering artifacts written to {out}")
    return summary
