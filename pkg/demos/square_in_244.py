"""The square group inside the (2,4,4) triangle group.

Eight copies of the right isoceles chamber tile a square: the reflections in
the square's four sides generate an index-8 subgroup.  This script computes
its canonical generators, verifies the tiling, and lists the interior
mirrors (the two diagonals and the two mid-lines).
"""

from chambers import SubgroupSpec, chamber_polytope, theorem_check, triangle_matrix
from chambers.engine import (
    _ctx,
    fundamental_angles,
    mirrors_of_decomposition,
    subgroup_chamber,
    verify_decomposition,
)

m = triangle_matrix(2, 4, 4)

# rotation of order 4 about the square's center is s0 s2; conjugating the
# side reflection s1 by its powers yields the other three sides
r = (0, 2)
h = SubgroupSpec.from_words(
    (1,),
    r + (1,) + r[::-1],
    r + r + (1,) + r[::-1] + r[::-1],
    r[::-1] + (1,) + r,
)

verdict = theorem_check(m, h)
print("verdict:", verdict.to_doc())

sc = subgroup_chamber(m, h)
square = chamber_polytope(m, sc.system)
ctx = _ctx(m)
report = verify_decomposition(square, ctx.chamber, sc.chambers)
print(f"decomposition: {report.tiles} tiles, ok={report.ok},",
      f"area residual {report.area_residual:.2e}")

mirrors = mirrors_of_decomposition(square, sc.chambers, m)
print(f"{len(mirrors)} interior mirrors")
for v, fundamental in fundamental_angles(square, mirrors).items():
    print(f"  corner {tuple(round(float(c), 6) for c in v.chart)}:",
          "fundamental" if fundamental else "on a mirror")
