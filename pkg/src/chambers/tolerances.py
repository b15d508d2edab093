"""Numerical tolerances shared across the package.

All Gram-type matrices are pre-scaled to unit diagonal, so eigenvalues and
inner products are O(1) and a single set of absolute thresholds suffices at
the ranks (<= 10) this package targets.
"""

# eigenvalue magnitudes below this count as zero when computing signatures
TOL_SIG = 1e-9

# incidence / sidedness predicates on model-space coordinates
TOL_GEO = 1e-9

# matching an angle against pi/m (m an integer <= ANGLE_DENOM_MAX)
TOL_ANG = 1e-7
ANGLE_DENOM_MAX = 1000

# group-element identity grid: representation matrices are rounded to this
# grid to form hashable keys
ID_GRID = 1e-6
