"""Constants of the fully discrete single-layer calculus and incident waves

Used by BoundaryGeometry (app/scattering/geometry.py) and the scattering
solver.
"""

# ============================================================================
# OBSERVATION GRIDS
# ============================================================================
# Observation points sit at parameter offsets ±1/6 of a grid cell
OBSERVATION_OFFSET = 1 / 6

# ============================================================================
# CORRECTION MATRICES (circulant: diagonal, first off-diagonals)
# ============================================================================
MASS_DIAGONAL = 7 / 9
MASS_OFF_DIAGONAL = 1 / 9

NORMAL_DIAGONAL = 11 / 12
NORMAL_OFF_DIAGONAL = 1 / 24

MIN_BOUNDARY_POINTS = 3

# ============================================================================
# INCIDENT WAVE DEFAULTS
# ============================================================================
# ψ(t) = t^5 e^{-2t} for t >= 0
DEFAULT_SIGNAL_POWER = 5
DEFAULT_SIGNAL_RATE = 2.0

# t_lag = DEFAULT_LAG_MARGIN + max_j |m_j·d| / c
DEFAULT_LAG_MARGIN = 2.0

# Curves must keep |x'(r)| above this on the sampling grid
MIN_SPEED = 1e-12
