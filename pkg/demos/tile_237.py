"""Tile the hyperbolic plane by the (2,3,7) triangle group.

Walks the chamber graph breadth-first, prints the growth of the tiling, and
writes a Poincare-disk SVG.
"""

from chambers import chamber_bfs, triangle_matrix
from chambers.render import RenderSpec, render_svg

m = triangle_matrix(2, 3, 7)

for depth in range(7):
    print(f"word length <= {depth}: {len(chamber_bfs(m, depth))} chambers")

svg, count = render_svg(m, RenderSpec(depth=6))
with open("tiling_237.svg", "w") as fh:
    fh.write(svg + "\n")
print(f"wrote tiling_237.svg with {count} chambers")
