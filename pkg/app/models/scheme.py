"""Scheme identifiers and descriptions"""
from enum import Enum
from typing import Optional

from pydantic import BaseModel, Field


class SchemeId(str, Enum):
    """Time discretizations selectable from the CLI and the API"""
    BE = "be"
    BDF2 = "bdf2"
    TR = "tr"
    BDF3 = "bdf3"
    BDF4 = "bdf4"
    BDF5 = "bdf5"
    BDF6 = "bdf6"
    RADAU3 = "radau3"
    LOBATTO4 = "lobatto4"


class SchemeKind(str, Enum):
    MULTISTEP = "multistep"
    RUNGE_KUTTA = "runge-kutta"


class SolveMethod(str, Enum):
    """Evaluation path for convolutions and convolution equations"""
    ALL_STEPS = "all-steps"
    MOT = "mot"
    LOOK_AHEAD = "look-ahead"


class SchemeInfo(BaseModel):
    """Public description of a scheme"""

    id: SchemeId
    kind: SchemeKind
    order: int = Field(..., description="Convergence order of the step values")
    a_stable: bool
    stages: int = Field(1, description="Number of stages (1 for multistep)")
    stage_order: Optional[int] = None
