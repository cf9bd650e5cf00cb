"""Numerical constants: Runge-Kutta tableaus and the discrete Calderón calculus"""
from app.constants.tableaus import (
    LOBATTO_IIIC_4,
    RADAU_IIA_3,
    SHIPPED_TABLEAUS,
)
from app.constants.calderon import (
    MASS_DIAGONAL,
    MASS_OFF_DIAGONAL,
    NORMAL_DIAGONAL,
    NORMAL_OFF_DIAGONAL,
    OBSERVATION_OFFSET,
)

__all__ = [
    # Tableaus
    "RADAU_IIA_3",
    "LOBATTO_IIIC_4",
    "SHIPPED_TABLEAUS",
    # Calderón calculus
    "OBSERVATION_OFFSET",
    "MASS_DIAGONAL",
    "MASS_OFF_DIAGONAL",
    "NORMAL_DIAGONAL",
    "NORMAL_OFF_DIAGONAL",
]
