"""Two-dimensional time-domain scattering by a sound-soft obstacle"""
from app.scattering.curves import Curve, get_curve
from app.scattering.geometry import BoundaryGeometry
from app.scattering.incident import IncidentWave
from app.scattering.solver import ScatteringResult, solve_scattering

__all__ = [
    "Curve",
    "get_curve",
    "BoundaryGeometry",
    "IncidentWave",
    "ScatteringResult",
    "solve_scattering",
]
