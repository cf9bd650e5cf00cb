"""Butcher tableaus shipped with the engine

Used by RKTableau (app/cq/rk_cq.py) and the scheme factory.
"""

# ============================================================================
# RADAU IIA, 2 STAGES (classical order 3, stage order 2)
# ============================================================================
RADAU_IIA_3 = {
    "name": "radau3",
    "A": [[5 / 12, -1 / 12],
          [3 / 4, 1 / 4]],
    "b": [3 / 4, 1 / 4],
    "c": [1 / 3, 1.0],
    "classical_order": 3,
    "stage_order": 2,
}

# ============================================================================
# LOBATTO IIIC, 3 STAGES (classical order 4, stage order 2)
# ============================================================================
LOBATTO_IIIC_4 = {
    "name": "lobatto4",
    "A": [[1 / 6, -1 / 3, 1 / 6],
          [1 / 6, 5 / 12, -1 / 12],
          [1 / 6, 2 / 3, 1 / 6]],
    "b": [1 / 6, 2 / 3, 1 / 6],
    "c": [0.0, 1 / 2, 1.0],
    "classical_order": 4,
    "stage_order": 2,
}

SHIPPED_TABLEAUS = {
    RADAU_IIA_3["name"]: RADAU_IIA_3,
    LOBATTO_IIIC_4["name"]: LOBATTO_IIIC_4,
}

# ============================================================================
# VALIDATION GRIDS
# ============================================================================
# |R(iω)| < 1 is checked on ω = ±logspace(-1, 2)
IMAGINARY_AXIS_DECADES = (-1.0, 2.0)
IMAGINARY_AXIS_POINTS = 40

# |R(z)| <= 1 + A_STABILITY_SLACK on a grid of the closed left half-plane
LEFT_HALF_PLANE_DECADES = (-3.0, 2.0)
LEFT_HALF_PLANE_POINTS = 30
A_STABILITY_SLACK = 1e-12

TABLEAU_TOLERANCE = 1e-12
