"""Model-space geometry: hyperplanes, polygons, angles, links, splits, areas.

Two model spaces are supported: the Euclidean plane and the hyperbolic plane
in the hyperboloid model (quadratic form ``x^2 + y^2 - t^2``).  All polygon
combinatorics is done in a Euclidean chart -- the plane itself, or the Klein
disk, where hyperbolic half-planes become linear constraints and geodesics
become chords.  Angles and distances always come from the Lorentzian inner
products of the hyperplane normals.

Dimension-3 support is combinatorial only (Coxeter simplices and
right-angled products described by their Coxeter matrix), enough for
vertex-link and face-extension analysis.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np
from scipy.optimize import linprog

from .diagrams import (
    ELLIPTIC,
    PARABOLIC_UNION,
    CoxeterDiagram,
    CoxeterMatrix,
    classify_diagram,
    coxeter_matrix,
    gram_from_coxeter,
    signature,
)
from .tolerances import ANGLE_DENOM_MAX, TOL_ANG, TOL_GEO

EUCLIDEAN = "euclidean"
HYPERBOLIC = "hyperbolic"

# coordinate matching is looser than the incidence predicates: chart
# coordinates carry a few extra ulps from the interval arithmetic
COORD_MATCH = 1e-7


class GeometryError(ValueError):
    pass


@dataclass(frozen=True)
class Space:
    kind: str
    dim: int = 2

    def __post_init__(self):
        if self.kind not in (EUCLIDEAN, HYPERBOLIC):
            raise GeometryError(f"unknown space kind {self.kind!r}")
        if self.dim not in (2, 3):
            raise GeometryError("only dimensions 2 and 3 are supported")


E2 = Space(EUCLIDEAN, 2)
H2 = Space(HYPERBOLIC, 2)


def minkowski(a, b) -> float:
    """Lorentzian inner product of signature (2, 1): x1*y1 + x2*y2 - x3*y3."""
    a = np.asarray(a, dtype=float)
    b = np.asarray(b, dtype=float)
    return float(a[0] * b[0] + a[1] * b[1] - a[2] * b[2])


# ---------------------------------------------------------------------------
# hyperplanes


@dataclass(frozen=True)
class Hyperplane:
    """Oriented hyperplane; the attached half-space is where eval() <= 0.

    Hyperbolic: spacelike unit normal ``e`` (3-vector, <e,e> = 1); locus
    <e, x> = 0.  Euclidean: unit normal ``u`` (2-vector) and offset ``b``;
    locus u.x = b, half-space u.x <= b.
    """

    space: Space
    normal: tuple
    offset: float = 0.0

    @staticmethod
    def hyperbolic(normal) -> "Hyperplane":
        e = np.asarray(normal, dtype=float)
        n2 = minkowski(e, e)
        if n2 <= TOL_GEO:
            raise GeometryError("hyperbolic normal must be spacelike")
        e = e / math.sqrt(n2)
        return Hyperplane(H2, tuple(e), 0.0)

    @staticmethod
    def euclidean(normal, offset) -> "Hyperplane":
        u = np.asarray(normal, dtype=float)
        n = np.linalg.norm(u)
        if n <= TOL_GEO:
            raise GeometryError("euclidean normal must be nonzero")
        return Hyperplane(E2, tuple(u / n), float(offset) / n)

    @property
    def n(self) -> np.ndarray:
        return np.asarray(self.normal, dtype=float)

    def eval(self, x) -> float:
        """Signed value; <= 0 on the attached half-space."""
        x = np.asarray(x, dtype=float)
        if self.space.kind == HYPERBOLIC:
            return minkowski(self.n, x)
        return float(self.n @ x) - self.offset

    def flip(self) -> "Hyperplane":
        return Hyperplane(self.space, tuple(-self.n), -self.offset)

    def same_locus(self, other: "Hyperplane", tol=COORD_MATCH) -> bool:
        a, b = self.n, other.n
        if self.space.kind == HYPERBOLIC:
            return bool(
                np.allclose(a, b, atol=tol) or np.allclose(a, -b, atol=tol)
            )
        return bool(
            (np.allclose(a, b, atol=tol) and abs(self.offset - other.offset) <= tol)
            or (np.allclose(a, -b, atol=tol) and abs(self.offset + other.offset) <= tol)
        )

    def locus_key(self, grid=1e-6) -> tuple:
        """Orientation-independent hashable key of the locus (for dedup)."""
        if self.space.kind == HYPERBOLIC:
            v = self.n
        else:
            v = np.array([self.n[0], self.n[1], self.offset])
        for comp in v:
            if abs(comp) > 10 * grid:
                if comp < 0:
                    v = -v
                break
        return tuple(0.0 + np.round(v / grid) * grid)

    # chart form: constraint alpha(X) = g . X - c <= 0 in the working chart
    def chart_coeffs(self) -> tuple[np.ndarray, float]:
        if self.space.kind == HYPERBOLIC:
            e = self.n
            return np.array([e[0], e[1]]), float(e[2])
        return self.n.copy(), float(self.offset)


def hyperplane_through(space: Space, p, q) -> Hyperplane:
    """Hyperplane through two chart points (Euclidean plane or Klein disk)."""
    p = np.asarray(p, dtype=float)
    q = np.asarray(q, dtype=float)
    if np.linalg.norm(p - q) <= COORD_MATCH:
        raise GeometryError("points coincide")
    if space.kind == EUCLIDEAN:
        d = q - p
        u = np.array([-d[1], d[0]])
        u /= np.linalg.norm(u)
        return Hyperplane.euclidean(u, float(u @ p))
    # Klein chord g.X = c through p, q; lift to a spacelike normal (g, c)
    d = q - p
    g = np.array([-d[1], d[0]])
    g /= np.linalg.norm(g)
    c = float(g @ p)
    return Hyperplane.hyperbolic([g[0], g[1], c])


# ---------------------------------------------------------------------------
# angle classification


INTERSECTING = "intersecting"
PARALLEL = "parallel"
DIVERGENT = "divergent"


@dataclass(frozen=True)
class AngleClass:
    kind: str
    theta: float | None = None  # for intersecting
    distance: float | None = None  # for divergent (hyperbolic)

    def __str__(self):
        if self.kind == INTERSECTING:
            return f"intersecting({self.theta:.9g})"
        if self.kind == DIVERGENT:
            return f"divergent(d={self.distance:.9g})"
        return "parallel"


def dihedral_angle(h1: Hyperplane, h2: Hyperplane, space: Space | None = None,
                   tol: float = TOL_GEO) -> AngleClass:
    """Angle between two half-space walls, measured inside both half-spaces.

    Normals are outward, so an interior angle theta has <e1,e2> = -cos(theta).
    """
    space = space or h1.space
    if h1.space != h2.space:
        raise GeometryError("hyperplanes from different spaces")
    if h1.same_locus(h2):
        raise GeometryError("identical hyperplanes have no dihedral angle")
    if space.kind == HYPERBOLIC:
        c = minkowski(h1.n, h2.n)
    else:
        c = float(h1.n @ h2.n)
    if c >= 1 - tol:
        if space.kind == EUCLIDEAN:
            return AngleClass(PARALLEL)  # same direction, distinct loci
        raise GeometryError("half-spaces are nested; no wedge to measure")
    if abs(c + 1) <= tol:
        return AngleClass(PARALLEL)
    if c < -1:
        if space.kind == EUCLIDEAN:
            return AngleClass(PARALLEL)  # numerical spill of c = -1
        return AngleClass(DIVERGENT, distance=math.acosh(-c))
    return AngleClass(INTERSECTING, theta=math.acos(max(-1.0, min(1.0, -c))))


def angle_order(theta: float, tol: float = TOL_ANG,
                max_m: int = ANGLE_DENOM_MAX) -> int | None:
    """Integer m >= 2 with theta = pi/m within tol, or None."""
    if theta <= 0:
        return None
    m = round(math.pi / theta)
    if 2 <= m <= max_m and abs(theta - math.pi / m) <= tol:
        return m
    return None


def mirror_angle_order(theta: float, tol: float = TOL_ANG,
                       max_m: int = ANGLE_DENOM_MAX) -> tuple[int, int] | None:
    """Smallest m <= max_m with theta = k*pi/m within tol; returns (k, m)."""
    for m in range(2, max_m + 1):
        k = round(theta * m / math.pi)
        if 1 <= k < m and abs(theta - k * math.pi / m) <= tol:
            return k, m
    return None


# ---------------------------------------------------------------------------
# 2D polytopes


@dataclass(frozen=True)
class Vertex:
    chart: tuple  # chart coordinates (plane or Klein disk)
    model: tuple  # model coordinates (R^2 or hyperboloid point)
    facets: frozenset  # indices into Polytope.halfspaces


@dataclass(frozen=True)
class IdealVertex:
    direction: tuple  # lightlike ray scaled to t = 1: (x, y, 1)
    facets: frozenset


@dataclass(frozen=True)
class Facet:
    index: int
    point: tuple  # chart point on the line
    direction: tuple  # unit chart direction
    lo: float
    hi: float
    lo_end: tuple  # ("vertex", vid) | ("ideal", ivid) | ("free", dir/ray)
    hi_end: tuple

    def chart_at(self, t: float) -> np.ndarray:
        return np.asarray(self.point) + t * np.asarray(self.direction)


def _klein_lift(X) -> np.ndarray:
    X = np.asarray(X, dtype=float)
    r2 = float(X @ X)
    if r2 >= 1:
        raise GeometryError("point not inside the Klein disk")
    return np.array([X[0], X[1], 1.0]) / math.sqrt(1 - r2)


def _line_param(h: Hyperplane) -> tuple[np.ndarray, np.ndarray]:
    g, c = h.chart_coeffs()
    norm = np.linalg.norm(g)
    p = c * g / (norm * norm)
    d = np.array([-g[1], g[0]]) / norm
    return p, d


@dataclass(frozen=True)
class Polytope:
    """Irredundant half-space intersection with 2D facet/vertex combinatorics."""

    space: Space
    halfspaces: tuple[Hyperplane, ...]
    facets: tuple[Facet, ...] = field(default=(), compare=False)
    ordinary_vertices: tuple[Vertex, ...] = field(default=(), compare=False)
    ideal_vertices: tuple[IdealVertex, ...] = field(default=(), compare=False)
    recessions: tuple[tuple, ...] = field(default=(), compare=False)
    interior: tuple = field(default=(), compare=False)  # chart point
    inradius: float = field(default=0.0, compare=False)

    @property
    def facet_count(self) -> int:
        return len(self.halfspaces)

    @property
    def bounded(self) -> bool:
        return all(
            f.lo_end[0] == "vertex" and f.hi_end[0] == "vertex"
            for f in self.facets
        ) and len(self.facets) > 0

    @property
    def finite_volume(self) -> bool:
        if not self.facets:
            return False
        if self.space.kind == EUCLIDEAN:
            return self.bounded
        for f in self.facets:
            for end in (f.lo_end, f.hi_end):
                if end[0] == "free":
                    return False
        return True

    def contains_chart(self, X, tol=TOL_GEO) -> bool:
        X = np.asarray(X, dtype=float)
        for h in self.halfspaces:
            g, c = h.chart_coeffs()
            if float(g @ X) - c > tol:
                return False
        if self.space.kind == HYPERBOLIC and float(X @ X) >= 1:
            return False
        return True

    def interior_model(self) -> np.ndarray:
        X = np.asarray(self.interior, dtype=float)
        if self.space.kind == HYPERBOLIC:
            return _klein_lift(X)
        return X

    def vertex_angle(self, v: Vertex) -> float:
        i, j = sorted(v.facets)[:2]
        ac = dihedral_angle(self.halfspaces[i], self.halfspaces[j], self.space)
        if ac.kind != INTERSECTING:
            raise GeometryError("vertex facets do not intersect")
        return ac.theta


def _chebyshev_interior(hyperplanes, space: Space):
    """Chart interior point maximizing the margin; None if interior is empty."""
    # variables (x, y, r, sx, sy) with sx >= |x|, sy >= |y|; the tiny
    # penalty on sx, sy keeps the center near the origin when the
    # Chebyshev problem is degenerate (unbounded polytopes)
    rows, rhs = [], []
    for h in hyperplanes:
        g, c = h.chart_coeffs()
        norm = np.linalg.norm(g)
        rows.append([g[0], g[1], norm, 0.0, 0.0])
        rhs.append(c)
    if space.kind == HYPERBOLIC:
        for k in range(48):
            th = 2 * math.pi * k / 48
            rows.append([math.cos(th), math.sin(th), 1.0, 0.0, 0.0])
            rhs.append(1.0)
        bound = 2.0
    else:
        bound = 1e7
    for sgn in (1.0, -1.0):
        rows.append([sgn, 0.0, 0.0, -1.0, 0.0])
        rhs.append(0.0)
        rows.append([0.0, sgn, 0.0, 0.0, -1.0])
        rhs.append(0.0)
    res = linprog(
        c=[0.0, 0.0, -1.0, 1e-6, 1e-6],
        A_ub=np.array(rows),
        b_ub=np.array(rhs),
        bounds=[(-bound, bound)] * 2 + [(0, bound)] + [(0, bound)] * 2,
        method="highs",
    )
    if not res.success or res.x[2] <= 10 * TOL_GEO:
        return None, 0.0
    return np.array(res.x[:2]), float(res.x[2])


def polytope_from_halfspaces(hyperplanes, space: Space | None = None) -> Polytope:
    """Build a 2D polytope; redundant half-spaces are dropped.

    Raises GeometryError when the interior is empty.
    """
    hyperplanes = list(hyperplanes)
    if not hyperplanes:
        raise GeometryError("need at least one half-space")
    space = space or hyperplanes[0].space
    if any(h.space != space for h in hyperplanes):
        raise GeometryError("mixed spaces")

    # drop exact duplicates (same oriented half-space)
    uniq = []
    for h in hyperplanes:
        if not any(
            np.allclose(u.n, h.n, atol=COORD_MATCH)
            and abs(u.offset - h.offset) <= COORD_MATCH
            for u in uniq
        ):
            uniq.append(h)
    hyperplanes = uniq

    interior, inradius = _chebyshev_interior(hyperplanes, space)
    if interior is None:
        raise GeometryError("empty interior")

    active = list(range(len(hyperplanes)))
    while True:
        intervals = _facet_intervals(hyperplanes, active, space)
        drop = [i for i in active if intervals[i] is None]
        if not drop:
            break
        active = [i for i in active if i not in drop]
        if not active:
            break

    kept = [hyperplanes[i] for i in active]
    intervals = _facet_intervals(kept, list(range(len(kept))), space)
    return _assemble(kept, intervals, space, interior, inradius)


def _facet_intervals(hyperplanes, active, space):
    """For each active index: (lo, hi, lo_binder, hi_binder) or None if the
    facet is empty/degenerate.  Binder is a hyperplane index or "inf"."""
    out = {}
    for i in active:
        h = hyperplanes[i]
        p, d = _line_param(h)
        lo, hi = -math.inf, math.inf
        lo_b, hi_b = "inf", "inf"
        ok = True
        for j in active:
            if j == i:
                continue
            g, c = hyperplanes[j].chart_coeffs()
            alpha = float(g @ p) - c
            beta = float(g @ d)
            if abs(beta) <= TOL_GEO:
                if alpha > TOL_GEO:
                    ok = False
                    break
                continue
            t = -alpha / beta
            if beta > 0:
                if t < hi:
                    hi, hi_b = t, j
            else:
                if t > lo:
                    lo, lo_b = t, j
        if not ok:
            out[i] = None
            continue
        if space.kind == HYPERBOLIC:
            # clip to the open Klein disk: |p + t d|^2 < 1
            pd = float(p @ d)
            disc = pd * pd - (float(p @ p) - 1.0)
            t_minus, t_plus = -pd - math.sqrt(disc), -pd + math.sqrt(disc)
            if t_minus > lo:
                lo, lo_b = t_minus, "inf"
            if t_plus < hi:
                hi, hi_b = t_plus, "inf"
        if hi - lo <= COORD_MATCH:
            out[i] = None
        else:
            out[i] = (lo, hi, lo_b, hi_b)
    return out


def _assemble(hyperplanes, intervals, space, interior, inradius) -> Polytope:
    n = len(hyperplanes)
    params = [_line_param(h) for h in hyperplanes]

    # collect endpoint records: (facet, which_end, kind, payload)
    vertex_pts: list[tuple[np.ndarray, set]] = []  # chart point, facet set
    ideal_pts: list[tuple[np.ndarray, set]] = []  # boundary chart point, facets
    recessions: list[np.ndarray] = []
    ends: dict[tuple[int, str], tuple] = {}

    def match(points, x, tol):
        for k, (y, fs) in enumerate(points):
            if np.linalg.norm(y - x) <= tol:
                return k
        return None

    for i in range(n):
        if intervals.get(i) is None:
            continue
        lo, hi, lo_b, hi_b = intervals[i]
        p, d = params[i]
        for which, t, binder in (("lo", lo, lo_b), ("hi", hi, hi_b)):
            if math.isinf(t):
                # Euclidean unbounded end
                direction = d if which == "hi" else -d
                if not any(
                    np.linalg.norm(r - direction) <= COORD_MATCH
                    for r in recessions
                ):
                    recessions.append(direction)
                ends[(i, which)] = ("free", tuple(direction))
                continue
            x = p + t * d
            if space.kind == HYPERBOLIC and float(x @ x) >= 1 - COORD_MATCH:
                x = x / np.linalg.norm(x)  # snap onto the boundary circle
                k = match(ideal_pts, x, 10 * COORD_MATCH)
                if k is None:
                    ideal_pts.append((x, {i}))
                    k = len(ideal_pts) - 1
                else:
                    ideal_pts[k][1].add(i)
                ends[(i, which)] = ("ideal_candidate", k)
            else:
                k = match(vertex_pts, x, 10 * COORD_MATCH)
                if k is None:
                    vertex_pts.append((x, {i}))
                    k = len(vertex_pts) - 1
                else:
                    vertex_pts[k][1].add(i)
                if binder != "inf" and binder is not None:
                    vertex_pts[k][1].add(binder)
                ends[(i, which)] = ("vertex", k)

    vertices = tuple(
        Vertex(
            tuple(x),
            tuple(_klein_lift(x)) if space.kind == HYPERBOLIC else tuple(x),
            frozenset(fs),
        )
        for x, fs in vertex_pts
    )
    ideals = []
    ideal_index = {}
    for k, (x, fs) in enumerate(ideal_pts):
        if len(fs) >= 2:
            ideal_index[k] = len(ideals)
            ideals.append(IdealVertex((x[0], x[1], 1.0), frozenset(fs)))

    facets = []
    for i in range(n):
        if intervals.get(i) is None:
            continue
        lo, hi, _, _ = intervals[i]
        p, d = params[i]

        def endrec(which, t):
            kind, payload = ends[(i, which)]
            if kind == "vertex":
                return ("vertex", payload)
            if kind == "ideal_candidate":
                if payload in ideal_index:
                    return ("ideal", ideal_index[payload])
                x = ideal_pts[payload][0]
                return ("free", (x[0], x[1], 1.0))
            return ends[(i, which)]

        facets.append(
            Facet(
                i, tuple(p), tuple(d), lo, hi,
                endrec("lo", lo), endrec("hi", hi),
            )
        )

    return Polytope(
        space=space,
        halfspaces=tuple(hyperplanes),
        facets=tuple(facets),
        ordinary_vertices=vertices,
        ideal_vertices=tuple(ideals),
        recessions=tuple(tuple(r) for r in recessions),
        interior=tuple(interior),
        inradius=inradius,
    )


# ---------------------------------------------------------------------------
# 3D combinatorial polytopes


@dataclass(frozen=True)
class CombinatorialPolytope3:
    """A 3-polytope known only through its Coxeter matrix and the sets of
    facets meeting at each (combinatorial) vertex.  Supports simplices and
    right-angled products, the only 3D shapes the package needs."""

    matrix: CoxeterMatrix
    vertex_facets: tuple[frozenset, ...]

    @property
    def dim(self) -> int:
        return 3

    def diagram(self) -> CoxeterDiagram:
        return CoxeterDiagram(self.matrix)


def coxeter_simplex3(m: CoxeterMatrix) -> CombinatorialPolytope3:
    if m.rank != 4:
        raise GeometryError("a 3-simplex has exactly 4 facets")
    triples = [frozenset({0, 1, 2, 3}) - {i} for i in range(4)]
    return CombinatorialPolytope3(m, tuple(triples))


# ---------------------------------------------------------------------------
# predicates


def _polygon_angles(p: Polytope):
    out = []
    for v in p.ordinary_vertices:
        out.append((v, p.vertex_angle(v)))
    return out


def is_coxeter_polytope(p) -> bool:
    """All dihedral angles equal to pi/m for integers m >= 2."""
    if isinstance(p, CombinatorialPolytope3):
        return True  # angles are pi/m by construction from a Coxeter matrix
    for _, theta in _polygon_angles(p):
        if angle_order(theta) is None:
            return False
    return True


def is_acute_angled(p) -> bool:
    """All dihedral angles <= pi/2."""
    if isinstance(p, CombinatorialPolytope3):
        # all angles are pi/m with m >= 2 (or zero/divergent): always acute
        return True
    return all(
        theta <= math.pi / 2 + TOL_ANG for _, theta in _polygon_angles(p)
    )


def vertices(p: Polytope):
    """(ordinary, ideal) vertex lists; Euclidean recession directions are on
    ``p.recessions``, not reported as vertices."""
    if isinstance(p, CombinatorialPolytope3):
        ordinary, ideal = [], []
        for fs in p.vertex_facets:
            c = classify_diagram(_subdiagram(p, fs))
            (ordinary if c.kind == ELLIPTIC else ideal).append(fs)
        return ordinary, ideal
    return list(p.ordinary_vertices), list(p.ideal_vertices)


def _subdiagram(p: CombinatorialPolytope3, facet_set) -> CoxeterDiagram:
    keep = sorted(facet_set)
    entries = tuple(
        tuple(p.matrix.entries[i][j] for j in keep) for i in keep
    )
    weights = tuple(
        (keep.index(i), keep.index(j), c)
        for i, j, c in p.matrix.weights
        if i in facet_set and j in facet_set
    )
    return CoxeterDiagram(CoxeterMatrix(entries, weights), tuple(keep))


@dataclass(frozen=True)
class VertexLink:
    kind: str  # "spherical" (ordinary vertex) or "horospherical" (ideal)
    angles: tuple[float, ...]
    diagram: CoxeterDiagram | None
    diagram_class: object | None


def vertex_link(p, v) -> VertexLink:
    """Link of a vertex: the single angle in dim 2, the angle triple of the
    section in dim 3; with the facet sub-diagram when p is Coxeter."""
    if isinstance(p, CombinatorialPolytope3):
        fs = frozenset(v)
        if fs not in p.vertex_facets:
            raise GeometryError(f"{set(v)} is not a vertex of the polytope")
        d = _subdiagram(p, fs)
        c = classify_diagram(d)
        if c.kind not in (ELLIPTIC, PARABOLIC_UNION):
            raise GeometryError("facet set does not bound a vertex")
        angles = tuple(
            math.pi / p.matrix.order(i, j) if p.matrix.order(i, j) else 0.0
            for i in sorted(fs)
            for j in sorted(fs)
            if i < j
        )
        kind = "spherical" if c.kind == ELLIPTIC else "horospherical"
        return VertexLink(kind, angles, d, c)

    if isinstance(v, IdealVertex):
        i, j = sorted(v.facets)[:2]
        d = CoxeterDiagram(coxeter_matrix([[1, 0], [0, 1]]), (i, j))
        return VertexLink("horospherical", (0.0,), d, classify_diagram(d))
    if isinstance(v, Vertex):
        if len(v.facets) < 2:
            raise GeometryError("vertex incident to fewer facets than dim")
        theta = p.vertex_angle(v)
        m = angle_order(theta)
        d = None
        c = None
        if m is not None:
            i, j = sorted(v.facets)
            d = CoxeterDiagram(coxeter_matrix([[1, m], [m, 1]]), (i, j))
            c = classify_diagram(d)
        return VertexLink("spherical", (theta,), d, c)
    raise GeometryError(f"not a vertex: {v!r}")


def has_finite_volume(p) -> bool:
    if isinstance(p, CombinatorialPolytope3):
        for fs in p.vertex_facets:
            c = classify_diagram(_subdiagram(p, fs))
            if c.kind not in (ELLIPTIC, PARABOLIC_UNION):
                return False
        return True
    if p.space.dim != 2:
        raise GeometryError("finite volume decision needs dim 2 coordinates")
    return p.finite_volume


# ---------------------------------------------------------------------------
# face extensions and the Andreev predicate


MEET = "meet"
DISJOINT = "disjoint"


def _faces_2d(p: Polytope):
    """All proper faces as facet-index sets: facets and ordinary vertices."""
    faces = [frozenset({f.index}) for f in p.facets]
    faces += [v.facets for v in p.ordinary_vertices]
    return faces


def _face_points_disjoint_2d(p: Polytope, f1: frozenset, f2: frozenset) -> bool:
    """Whether the two closed faces (ideal boundary excluded) are disjoint."""
    if len(f1) == 1 and len(f2) == 1:
        (i,), (j,) = f1, f2
        shared = any(
            {i, j} <= v.facets for v in p.ordinary_vertices
        )
        return not shared
    if len(f1) > len(f2):
        f1, f2 = f2, f1
    if len(f1) == 1 and len(f2) >= 2:
        return not (f1 <= f2)
    return f1 != f2


def extension_relation(p, f1, f2) -> str:
    """Whether the minimal flats through two faces meet in the model.

    The ideal boundary does not count: two hyperbolic lines meeting only at
    infinity are disjoint.
    """
    f1, f2 = frozenset(f1), frozenset(f2)
    if isinstance(p, CombinatorialPolytope3):
        union = sorted(f1 | f2)
        if not union or len(union) > p.matrix.rank:
            raise GeometryError("invalid face")
        g = gram_from_coxeter(p.matrix)[np.ix_(union, union)]
        k = len(union)
        return MEET if signature(g) == (k, 0, 0) else DISJOINT

    valid = set(map(frozenset, _faces_2d(p)))
    if f1 not in valid or f2 not in valid:
        raise GeometryError("faces must be facets or vertices of the polytope")

    def flat(face):
        if len(face) == 1:
            (i,) = face
            return ("line", p.halfspaces[i])
        for v in p.ordinary_vertices:
            if v.facets == face:
                return ("point", np.asarray(v.model))
        raise GeometryError("vertex face not found")

    k1, o1 = flat(f1)
    k2, o2 = flat(f2)
    if k1 == "point" and k2 == "point":
        return MEET if np.linalg.norm(o1 - o2) <= COORD_MATCH else DISJOINT
    if k1 == "point" or k2 == "point":
        pt = o1 if k1 == "point" else o2
        line = o2 if k1 == "point" else o1
        return MEET if abs(line.eval(pt)) <= COORD_MATCH else DISJOINT
    # line vs line
    if p.space.kind == HYPERBOLIC:
        c = minkowski(o1.n, o2.n)
        return MEET if abs(c) < 1 - TOL_GEO else DISJOINT
    c = float(o1.n @ o2.n)
    if abs(c) >= 1 - TOL_GEO:
        return MEET if o1.same_locus(o2) else DISJOINT
    return MEET


@dataclass(frozen=True)
class AndreevReport:
    pairs_checked: int
    disjoint_pairs: int
    violations: tuple

    @property
    def ok(self) -> bool:
        return not self.violations


def andreev_verify(p) -> AndreevReport:
    """Check: disjoint faces have disjoint extensions (acute-angled input)."""
    if not is_acute_angled(p):
        raise GeometryError("andreev_verify requires an acute-angled polytope")
    violations = []
    checked = disjoint = 0
    if isinstance(p, CombinatorialPolytope3):
        from itertools import combinations

        n = p.matrix.rank
        # an edge exists iff the two facet hyperplanes meet (finite order);
        # a vertex exists (ordinarily) iff its link diagram is elliptic
        edges = {
            frozenset(c)
            for c in combinations(range(n), 2)
            if p.matrix.order(*c) != 0
        }
        ordinary = {
            fs for fs in p.vertex_facets
            if classify_diagram(_subdiagram(p, fs)).kind == ELLIPTIC
        }
        faces = [frozenset({i}) for i in range(n)] + sorted(edges, key=sorted)

        def have_common_point(fa, fb):
            union = fa | fb
            if fa <= fb or fb <= fa:
                return True
            if len(union) == 2:
                return union in edges
            if len(union) == 3:
                return union in ordinary
            return False

        for a in range(len(faces)):
            for b in range(a + 1, len(faces)):
                fa, fb = faces[a], faces[b]
                checked += 1
                if have_common_point(fa, fb):
                    continue
                disjoint += 1
                if extension_relation(p, fa, fb) == MEET:
                    violations.append((tuple(sorted(fa)), tuple(sorted(fb))))
        return AndreevReport(checked, disjoint, tuple(violations))

    # dim 2: facet pairs only (vertex faces satisfy the implication trivially)
    faces = [frozenset({f.index}) for f in p.facets]
    for a in range(len(faces)):
        for b in range(a + 1, len(faces)):
            fa, fb = faces[a], faces[b]
            checked += 1
            if not _face_points_disjoint_2d(p, fa, fb):
                continue
            disjoint += 1
            if extension_relation(p, fa, fb) == MEET:
                violations.append((tuple(sorted(fa)), tuple(sorted(fb))))
    return AndreevReport(checked, disjoint, tuple(violations))


# ---------------------------------------------------------------------------
# splits and areas


@dataclass(frozen=True)
class SplitResult:
    p1: Polytope
    p2: Polytope
    meets_every_facet_interior: bool
    contains_vertex: bool


def split_by_hyperplane(p: Polytope, a: Hyperplane) -> SplitResult:
    """Cut p by the hyperplane a; both oriented pieces are returned."""
    if a.space != p.space:
        raise GeometryError("hyperplane from the wrong space")
    try:
        p1 = polytope_from_halfspaces(list(p.halfspaces) + [a], p.space)
        p2 = polytope_from_halfspaces(list(p.halfspaces) + [a.flip()], p.space)
    except GeometryError as exc:
        raise GeometryError(f"hyperplane misses the interior: {exc}") from exc

    g, c = a.chart_coeffs()
    meets_all = True
    for f in p.facets:
        pt, d = np.asarray(f.point), np.asarray(f.direction)
        alpha = float(g @ pt) - c
        beta = float(g @ d)
        if abs(beta) <= TOL_GEO:
            meets_all = False
            continue
        t = -alpha / beta
        if not (f.lo + COORD_MATCH < t < f.hi - COORD_MATCH):
            meets_all = False

    contains_vertex = any(
        abs(a.eval(np.asarray(v.model))) <= COORD_MATCH
        for v in p.ordinary_vertices
    ) or any(
        abs(a.eval(np.asarray(iv.direction))) <= COORD_MATCH
        for iv in p.ideal_vertices
    )
    return SplitResult(p1, p2, meets_all, contains_vertex)


def _vertex_cycle(p: Polytope):
    inter = np.asarray(p.interior)
    pts = [np.asarray(v.chart) for v in p.ordinary_vertices]
    return sorted(pts, key=lambda x: math.atan2(*(x - inter)[::-1]))


def area2(p: Polytope) -> float:
    """Area of a finite-volume 2D polytope.

    Hyperbolic: Gauss-Bonnet, (k-2)*pi - sum of interior angles (ideal
    vertices contribute zero).  Euclidean: shoelace on the vertex cycle.
    """
    if not p.finite_volume:
        raise GeometryError("infinite area")
    if p.space.kind == HYPERBOLIC:
        k = len(p.facets)
        total = sum(theta for _, theta in _polygon_angles(p))
        return (k - 2) * math.pi - total
    cyc = _vertex_cycle(p)
    s = 0.0
    for i in range(len(cyc)):
        x1, y1 = cyc[i]
        x2, y2 = cyc[(i + 1) % len(cyc)]
        s += x1 * y2 - x2 * y1
    return abs(s) / 2


# ---------------------------------------------------------------------------
# realization from Coxeter data


def realize_triangle(m: CoxeterMatrix) -> Polytope:
    """Concrete chamber of a rank-3 Coxeter matrix in E^2 or H^2."""
    if m.rank != 3:
        raise GeometryError("realize_triangle needs rank 3")
    return realize_polygon_group(m)


def realize_polygon_group(m: CoxeterMatrix) -> Polytope:
    """Chamber of a 2D reflection group given by its Coxeter matrix.

    Euclidean (Gram positive semidefinite of rank 2): unit normals factored
    from the Gram form, all offsets 1 (incenter at the origin).  Hyperbolic
    (signature (2, *, 1) with the form of rank 3): spacelike normals in the
    hyperboloid model.  Elliptic input has no E^2/H^2 chamber and raises.
    """
    g = gram_from_coxeter(m)
    n = m.rank
    sig = signature(g)
    if sig == (n, 0, 0):
        raise GeometryError("elliptic matrix: no Euclidean/hyperbolic chamber")
    ev, vec = np.linalg.eigh(g)
    if sig[2] == 0:
        # Euclidean: G must have rank exactly 2
        if sig[0] != 2:
            raise GeometryError(f"signature {sig} has no E^2 realization")
        idx = np.argsort(ev)[-2:]
        w = vec[:, idx] * np.sqrt(ev[idx])  # rows: normals in R^2
        # canonical congruence representative: first normal along +x
        u0 = w[0] / np.linalg.norm(w[0])
        rot = np.array([[u0[0], u0[1]], [-u0[1], u0[0]]])
        w = w @ rot.T
        if w.shape[0] > 1 and w[1][1] < 0:
            w = w @ np.diag([1.0, -1.0])
        planes = [Hyperplane.euclidean(w[i], 1.0) for i in range(n)]
        return polytope_from_halfspaces(planes, E2)
    if sig[2] != 1 or sig[0] != 2:
        raise GeometryError(f"signature {sig} has no 2D realization")
    return _realize_hyperbolic(g, n)


def _realize_hyperbolic(g: np.ndarray, n: int) -> Polytope:
    ev, vec = np.linalg.eigh(g)
    order = np.argsort(ev)  # ascending: the negative eigenvalue first
    lam = ev[order]
    v = vec[:, order]
    # rows e_i in R^{2,1}: spatial parts from the positive eigenvectors,
    # time part from the negative one
    pos = v[:, -2:] * np.sqrt(np.maximum(lam[-2:], 0.0))
    neg = v[:, :1] * math.sqrt(-lam[0])
    e = np.column_stack([pos, neg])
    try:
        planes = [Hyperplane.hyperbolic(e[i]) for i in range(n)]
        return polytope_from_halfspaces(planes, H2)
    except GeometryError:
        # the chamber cone met the lower sheet; flip time (an isometry)
        e[:, 2] = -e[:, 2]
        planes = [Hyperplane.hyperbolic(e[i]) for i in range(n)]
        return polytope_from_halfspaces(planes, H2)


def model_isometry_frame(m: CoxeterMatrix, chamber: Polytope) -> np.ndarray:
    """Matrix whose columns are the chamber's facet normals (model coords);
    maps root coordinates to model normals."""
    cols = []
    for h in chamber.halfspaces:
        if chamber.space.kind == HYPERBOLIC:
            cols.append(h.n)
        else:
            cols.append(np.array([h.n[0], h.n[1], h.offset]))
    return np.column_stack(cols)


# ---------------------------------------------------------------------------
# ready-made constructions (used by the verification corpora)


def euclidean_strip(width: float = 1.0) -> Polytope:
    """The set 0 <= y <= width: two parallel facets, infinite volume."""
    h1 = Hyperplane.euclidean([0, -1], 0.0)  # y >= 0
    h2 = Hyperplane.euclidean([0, 1], width)  # y <= width
    return polytope_from_halfspaces([h1, h2], E2)


def euclidean_half_strip(width: float = 1.0) -> Polytope:
    """The strip cut by x >= 0: three facets."""
    s = euclidean_strip(width)
    h = Hyperplane.euclidean([-1, 0], 0.0)
    return polytope_from_halfspaces(list(s.halfspaces) + [h], E2)


def euclidean_box(w: float, h: float) -> Polytope:
    planes = [
        Hyperplane.euclidean([1, 0], w / 2),
        Hyperplane.euclidean([-1, 0], w / 2),
        Hyperplane.euclidean([0, 1], h / 2),
        Hyperplane.euclidean([0, -1], h / 2),
    ]
    return polytope_from_halfspaces(planes, E2)


def hyperbolic_line_at(distance: float, direction_angle: float) -> Hyperplane:
    """Geodesic at the given distance from the origin, outward normal
    pointing along direction_angle."""
    d, th = distance, direction_angle
    return Hyperplane.hyperbolic(
        [math.cosh(d) * math.cos(th), math.cosh(d) * math.sin(th), math.sinh(d)]
    )


def right_angled_pentagon() -> Polytope:
    """Regular right-angled hyperbolic pentagon centered at the origin."""
    # adjacent normals must satisfy cosh^2(d) cos(2 pi/5) - sinh^2(d) = 0
    t2 = math.cos(2 * math.pi / 5)
    d = math.atanh(math.sqrt(t2))
    planes = [
        hyperbolic_line_at(d, 2 * math.pi * k / 5) for k in range(5)
    ]
    return polytope_from_halfspaces(planes, H2)


def lambert_quadrilateral(acute: float = math.pi / 3) -> Polytope:
    """Quadrilateral with three right angles and one given acute angle."""
    if not 0 < acute < math.pi / 2:
        raise GeometryError("acute angle must be in (0, pi/2)")
    s = math.sqrt(math.cos(acute))  # sinh a * sinh b = cos(acute), a = b
    a = math.asinh(s)
    planes = [
        Hyperplane.hyperbolic([0, -1, 0]),  # y >= 0
        Hyperplane.hyperbolic([-1, 0, 0]),  # x >= 0
        Hyperplane.hyperbolic([math.cosh(a), 0, math.sinh(a)]),
        Hyperplane.hyperbolic([0, math.cosh(a), math.sinh(a)]),
    ]
    return polytope_from_halfspaces(planes, H2)


def hyperbolic_strip(half_width: float = 0.5) -> Polytope:
    """Region between two divergent lines with a common perpendicular."""
    planes = [
        hyperbolic_line_at(half_width, 0.0),
        hyperbolic_line_at(half_width, math.pi),
    ]
    return polytope_from_halfspaces(planes, H2)


def hyperbolic_half_strip(half_width: float = 0.5) -> Polytope:
    s = hyperbolic_strip(half_width)
    h = Hyperplane.hyperbolic([0, -1, 0])  # y >= 0; perpendicular to both
    return polytope_from_halfspaces(list(s.halfspaces) + [h], H2)


# ---------------------------------------------------------------------------
# documents


def polytope_to_doc(p: Polytope) -> dict:
    return {
        "space": p.space.kind,
        "halfspaces": [
            {"normal": list(h.normal), "offset": h.offset} for h in p.halfspaces
        ],
    }


def polytope_from_doc(doc: dict) -> Polytope:
    kind = doc.get("space", EUCLIDEAN)
    if "triangle" in doc:
        p, q, r = doc["triangle"]
        return realize_triangle(
            coxeter_matrix([[1, p, q], [p, 1, r], [q, r, 1]])
        )
    space = Space(kind, 2)
    planes = []
    for h in doc["halfspaces"]:
        if kind == HYPERBOLIC:
            planes.append(Hyperplane.hyperbolic(h["normal"]))
        else:
            planes.append(Hyperplane.euclidean(h["normal"], h.get("offset", 0.0)))
    return polytope_from_halfspaces(planes, space)
