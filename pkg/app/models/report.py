"""Result models of convergence studies and scattering runs"""
from typing import Dict, List, Optional

from pydantic import BaseModel, Field


class ConvergenceRow(BaseModel):
    kappa: float
    steps: int
    error: float
    order: Optional[float] = Field(None, description="log2(e(κ_prev)/e(κ)); None on the first row")


class ConvergenceReport(BaseModel):
    """Errors at successive κ-halvings and the observed orders between them"""

    scheme: str
    symbol: str
    signal: str
    final_time: float
    norm: str = "sup over step nodes in [0, T]"
    rows: List[ConvergenceRow] = Field(default_factory=list)

    @property
    def orders(self) -> List[float]:
        return [row.order for row in self.rows if row.order is not None]

    def to_csv(self) -> str:
        lines = ["kappa,steps,error,order"]
        for row in self.rows:
            order = "" if row.order is None else f"{row.order:.6f}"
            lines.append(f"{row.kappa:.17g},{row.steps},{row.error:.17g},{order}")
        return "\n".join(lines) + "\n"


class ScatterSummary(BaseModel):
    """Diagnostics and artifact paths of a scattering run"""

    scheme: str
    boundary_points: int
    steps: int
    kappa: float
    first_arrival: float
    causality_ratio: float = Field(..., description="max |η| before first arrival / max |η|")
    extinction_ratio: Optional[float] = Field(None, description="sup |U + u_inc| / sup |u_inc| inside")
    artifacts: Dict[str, str] = Field(default_factory=dict)
