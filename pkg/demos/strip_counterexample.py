"""Why finite volume matters for the facet-count bound.

Take the group generated by reflections in the three sides of a half-strip
(two parallel walls and a perpendicular cap).  The subgroup generated by the
two parallel walls alone has index 2, but its chamber -- the full strip --
has only 2 facets, fewer than the 3 facets of the group chamber.  The bound
k_P >= k_F fails precisely because the strip has infinite volume.
"""

from chambers import SubgroupSpec, theorem_check
from chambers.harness import HALF_STRIP_E2, HALF_STRIP_H2, remark2_regression

h = SubgroupSpec.from_words((0,), (1,))

for label, m in (("Euclidean", HALF_STRIP_E2), ("hyperbolic", HALF_STRIP_H2)):
    v = theorem_check(m, h)
    print(f"{label} half-strip group: k_F={v.k_F}, k_P={v.k_P},",
          f"index={v.index}, finite_volume={v.finite_volume}, holds={v.holds}")

rep = remark2_regression()
print("regression suite:", "pass" if rep.passed else "FAIL",
      f"({len(rep.expected_counterexamples)} expected counterexamples)")
