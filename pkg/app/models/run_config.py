"""Run configuration shared by the CLI, the services and the HTTP API"""
from enum import Enum
from typing import Dict, List, Optional, Tuple

from pydantic import BaseModel, Field, field_validator

from app.config import settings
from app.models.scheme import SchemeId, SolveMethod


class SymbolId(str, Enum):
    """Closed-form transfer functions available to runs"""
    RESOLVENT = "resolvent"
    OSCILLATOR = "oscillator"
    POWER = "power"
    ABEL = "abel"
    ANTIDERIVATIVE = "antiderivative"
    DELAY = "delay"
    IDENTITY = "identity"


class SignalId(str, Enum):
    """Causal data signals g(t)"""
    T5EXP = "t5exp"
    MONOMIAL = "monomial"
    ZERO = "zero"


class SymbolSpec(BaseModel):
    """Parsed ``name:key=value,...`` symbol description"""

    kind: SymbolId
    params: Dict[str, float] = Field(default_factory=dict)

    @classmethod
    def parse(cls, text: str) -> "SymbolSpec":
        name, _, raw = text.partition(":")
        params = {}
        for item in filter(None, raw.split(",")):
            key, sep, value = item.partition("=")
            if not sep:
                raise ValueError(f"malformed symbol parameter {item!r}")
            params[key.strip()] = float(value)
        return cls(kind=SymbolId(name.strip().lower()), params=params)

    def label(self) -> str:
        if not self.params:
            return self.kind.value
        return self.kind.value + ":" + ",".join(f"{k}={v:g}" for k, v in sorted(self.params.items()))


class RunConfig(BaseModel):
    """
    Parameters of a single engine run.

    Every numeric field is validated at parse time; string forms used by the
    CLI (``--symbol oscillator:c=1``, ``--grid 40x40``, ``--snapshots 1,2``)
    are converted by the field validators.
    """

    scheme: SchemeId = Field(SchemeId.BDF2, description="Time discretization")
    kappa: float = Field(0.05, gt=0, description="Time step κ")
    steps: int = Field(40, ge=1, description="Last time index N")
    final_time: float = Field(2.0, gt=0, description="Final time T of convergence studies")
    levels: int = Field(4, ge=4, le=12, description="Number of κ-halvings in convergence studies")

    symbol: SymbolSpec = Field(default_factory=lambda: SymbolSpec(kind=SymbolId.OSCILLATOR, params={"c": 1.0}))
    signal: SignalId = Field(SignalId.T5EXP, description="Data signal")
    signal_power: int = Field(5, ge=0, description="Exponent k of t^k in the signal")
    signal_rate: float = Field(1.0, ge=0, description="Decay rate of the signal")
    amplitude: float = Field(1.0, description="Signal amplitude")

    eps: Optional[float] = Field(None, gt=0, lt=1, description="Contour accuracy parameter")
    oversampling: Optional[int] = Field(None, ge=1, le=8, description="Contour nodes per step (k in k(N+1))")
    block: Optional[int] = Field(None, ge=1, description="Look-ahead block size")
    method: SolveMethod = Field(SolveMethod.ALL_STEPS, description="Convolution evaluation path")

    geometry: str = Field("circle:radius=1", description="Scatterer shape")
    boundary_points: int = Field(32, ge=3, description="Boundary sample count N")
    speed: float = Field(1.0, gt=0, description="Wave speed c")
    direction: Tuple[float, float] = Field((1.0, 0.0), description="Plane-wave direction")
    grid: Optional[Tuple[int, int]] = Field(None, description="Snapshot grid W×H")
    grid_extent: float = Field(3.0, gt=0, description="Half-width of the snapshot window")
    snapshots: List[float] = Field(default_factory=list, description="Snapshot times")

    out: str = Field(default_factory=lambda: settings.output_dir, description="Output directory")

    @field_validator("symbol", mode="before")
    @classmethod
    def parse_symbol(cls, v):
        if isinstance(v, str):
            return SymbolSpec.parse(v)
        return v

    @field_validator("grid", mode="before")
    @classmethod
    def parse_grid(cls, v):
        if isinstance(v, str):
            width, sep, height = v.lower().partition("x")
            if not sep:
                raise ValueError(f"grid must look like WxH, got {v!r}")
            v = (int(width), int(height))
        if v is not None and min(v) < 2:
            raise ValueError("grid needs at least 2 points per direction")
        return v

    @field_validator("snapshots", mode="before")
    @classmethod
    def parse_snapshots(cls, v):
        if isinstance(v, str):
            v = [float(item) for item in v.split(",") if item.strip()]
        if any(t < 0 for t in v):
            raise ValueError("snapshot times must be non-negative")
        return sorted(v)

    @field_validator("direction", mode="before")
    @classmethod
    def parse_direction(cls, v):
        if isinstance(v, str):
            v = tuple(float(item) for item in v.split(","))
        return v
