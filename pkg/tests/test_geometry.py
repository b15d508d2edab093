import math

import numpy as np
import pytest

from chambers.diagrams import coxeter_matrix, triangle_matrix
from chambers.geometry import (
    DISJOINT,
    DIVERGENT,
    E2,
    H2,
    INTERSECTING,
    MEET,
    PARALLEL,
    AngleClass,
    GeometryError,
    Hyperplane,
    IdealVertex,
    andreev_verify,
    area2,
    coxeter_simplex3,
    dihedral_angle,
    euclidean_box,
    euclidean_half_strip,
    euclidean_strip,
    extension_relation,
    has_finite_volume,
    hyperbolic_half_strip,
    hyperbolic_strip,
    hyperplane_through,
    is_acute_angled,
    is_coxeter_polytope,
    lambert_quadrilateral,
    minkowski,
    polytope_from_doc,
    polytope_from_halfspaces,
    polytope_to_doc,
    realize_polygon_group,
    realize_triangle,
    right_angled_pentagon,
    split_by_hyperplane,
    vertex_link,
    vertices,
)

INF = 0


def tri(p, q, r, weights=()):
    return realize_triangle(triangle_matrix(p, q, r, weights))


# --- dihedral angles ---------------------------------------------------------


def normals_with_product(c):
    """Two distinct spacelike unit normals in R^{2,1} with product c."""
    e1 = np.array([1.0, 0.0, 0.0])
    if abs(c) < 1:
        e2 = np.array([c, math.sqrt(1 - c * c), 0.0])
    elif c == -1.0:
        e2 = np.array([-1.0, 1.0, 1.0])  # asymptotically parallel to e1
    else:
        e2 = np.array([c, 0.0, math.sqrt(c * c - 1)])
    return Hyperplane.hyperbolic(e1), Hyperplane.hyperbolic(e2)


def test_dihedral_intersecting():
    h1, h2 = normals_with_product(-0.5)
    a = dihedral_angle(h1, h2)
    assert a.kind == INTERSECTING
    assert a.theta == pytest.approx(math.pi / 3)


def test_dihedral_parallel():
    h1, h2 = normals_with_product(-1.0)
    assert dihedral_angle(h1, h2).kind == PARALLEL


def test_dihedral_divergent():
    h1, h2 = normals_with_product(-1.2)
    a = dihedral_angle(h1, h2)
    assert a.kind == DIVERGENT
    assert a.distance == pytest.approx(math.acosh(1.2))
    assert a.distance == pytest.approx(0.6223625, abs=1e-7)


def test_dihedral_identical_raises():
    h = Hyperplane.hyperbolic([1, 0, 0])
    with pytest.raises(GeometryError):
        dihedral_angle(h, h)
    with pytest.raises(GeometryError):
        dihedral_angle(h, h.flip())


def test_dihedral_euclidean_parallel():
    h1 = Hyperplane.euclidean([0, 1], 1.0)
    h2 = Hyperplane.euclidean([0, -1], 0.0)
    assert dihedral_angle(h1, h2).kind == PARALLEL


# --- realization round-trips --------------------------------------------------


@pytest.mark.parametrize(
    "pqr",
    [(3, 3, 3), (2, 4, 4), (2, 3, 6), (2, 3, 7), (2, 3, 8), (2, 4, 5), (3, 3, 4)],
)
def test_realize_triangle_roundtrip(pqr):
    p, q, r = pqr
    poly = tri(p, q, r)
    assert poly.facet_count == 3
    want = sorted([math.pi / p, math.pi / q, math.pi / r])
    got = sorted(poly.vertex_angle(v) for v in poly.ordinary_vertices)
    assert got == pytest.approx(want, abs=1e-9)


def test_realize_triangle_elliptic_rejected():
    with pytest.raises(GeometryError):
        tri(2, 3, 5)


def test_realize_236_is_euclidean():
    poly = tri(2, 3, 6)
    assert poly.space == E2
    assert poly.bounded


def test_realize_237_is_hyperbolic():
    assert tri(2, 3, 7).space == H2


# --- predicates ----------------------------------------------------------------


def test_is_coxeter_triangle():
    assert is_coxeter_polytope(tri(2, 3, 7))


def test_is_coxeter_false_for_non_integer_part():
    # Euclidean quadrilateral with one angle 2*pi/5
    th = 2 * math.pi / 5
    planes = [
        Hyperplane.euclidean([0, -1], 0.0),
        Hyperplane.euclidean([-math.sin(th), math.cos(th)], 0.0),
        Hyperplane.euclidean([1, 0], 3.0),
        Hyperplane.euclidean([0, 1], 1.0),
    ]
    quad = polytope_from_halfspaces(planes, E2)
    assert quad.facet_count == 4
    assert not is_coxeter_polytope(quad)


def test_is_coxeter_strip_vacuous():
    assert is_coxeter_polytope(euclidean_strip())


def test_is_acute():
    assert is_acute_angled(tri(2, 3, 7))
    assert is_acute_angled(euclidean_box(2, 1))
    # regular Euclidean pentagon: interior angles 3*pi/5 > pi/2
    planes = [
        Hyperplane.euclidean(
            [math.cos(2 * math.pi * k / 5), math.sin(2 * math.pi * k / 5)], 1.0
        )
        for k in range(5)
    ]
    pent = polytope_from_halfspaces(planes, E2)
    assert not is_acute_angled(pent)


# --- vertices ---------------------------------------------------------------------


def test_vertices_237():
    o, i = vertices(tri(2, 3, 7))
    assert len(o) == 3 and len(i) == 0


def test_vertices_23inf():
    poly = tri(2, 3, INF)
    o, i = vertices(poly)
    assert len(o) == 2 and len(i) == 1
    iv = i[0]
    # the lightlike ray lies on both incident facet hyperplanes
    for k in iv.facets:
        assert abs(poly.halfspaces[k].eval(iv.direction)) < 1e-7


def test_vertices_strip():
    s = euclidean_strip()
    o, i = vertices(s)
    assert len(o) == 0 and len(i) == 0
    assert len(s.recessions) == 2


# --- vertex links -------------------------------------------------------------------


def test_vertex_link_2d_angle():
    poly = tri(2, 3, 7)
    links = sorted(
        vertex_link(poly, v).angles[0] for v in poly.ordinary_vertices
    )
    assert links == pytest.approx([math.pi / 7, math.pi / 3, math.pi / 2])
    v7 = min(poly.ordinary_vertices, key=lambda v: poly.vertex_angle(v))
    link = vertex_link(poly, v7)
    assert link.kind == "spherical"
    assert link.diagram_class.components == ("I2(7)",)


def test_vertex_link_ideal_2d():
    poly = tri(2, 3, INF)
    iv = poly.ideal_vertices[0]
    link = vertex_link(poly, iv)
    assert link.kind == "horospherical"
    assert link.diagram_class.components == ("A~1",)


def test_vertex_link_cube_corner():
    from chambers.geometry import CombinatorialPolytope3

    m = coxeter_matrix([[1 if i == j else 2 for j in range(6)] for i in range(6)])
    corners = []
    for a in (0, 1):
        for b in (2, 3):
            for c in (4, 5):
                corners.append(frozenset({a, b, c}))
    cube = CombinatorialPolytope3(m, tuple(corners))
    link = vertex_link(cube, {0, 2, 4})
    assert link.kind == "spherical"
    assert link.angles == (math.pi / 2,) * 3
    assert sorted(link.diagram_class.components) == ["A1", "A1", "A1"]


def test_vertex_link_336_tetrahedron():
    # linear diagram 3 - 3 - 6; vertex opposite the end node is ideal
    m = coxeter_matrix(
        [[1, 3, 2, 2], [3, 1, 3, 2], [2, 3, 1, 6], [2, 2, 6, 1]]
    )
    simplex = coxeter_simplex3(m)
    link = vertex_link(simplex, {1, 2, 3})
    assert link.kind == "horospherical"
    assert link.diagram_class.components == ("G~2",)
    assert has_finite_volume(simplex)


# --- finite volume --------------------------------------------------------------------


def test_finite_volume():
    assert has_finite_volume(tri(2, 3, 7))
    assert not has_finite_volume(euclidean_strip())
    poly = tri(2, 3, INF)
    assert has_finite_volume(poly)
    assert area2(poly) == pytest.approx(math.pi / 6, abs=1e-9)


def test_hyperbolic_strip_infinite():
    assert not has_finite_volume(hyperbolic_strip())
    assert not has_finite_volume(hyperbolic_half_strip())
    assert has_finite_volume(right_angled_pentagon())
    assert has_finite_volume(lambert_quadrilateral())


# --- extensions and Andreev ---------------------------------------------------------


def test_extension_adjacent_edges_meet():
    poly = tri(2, 3, 7)
    assert extension_relation(poly, {0}, {1}) == MEET


def test_extension_square_opposite_disjoint():
    box = euclidean_box(1, 1)
    # find the two horizontal sides
    idx = [
        f.index for f in box.facets
        if abs(box.halfspaces[f.index].n[0]) < 1e-12
    ]
    assert extension_relation(box, {idx[0]}, {idx[1]}) == DISJOINT


def test_extension_pentagon_nonadjacent_divergent():
    pent = right_angled_pentagon()
    count = 0
    for i in range(5):
        for j in range(i + 1, 5):
            rel = extension_relation(pent, {i}, {j})
            prod = minkowski(pent.halfspaces[i].n, pent.halfspaces[j].n)
            if abs(prod) > 1:
                assert rel == DISJOINT
                count += 1
            else:
                assert rel == MEET
    assert count == 5  # five non-adjacent side pairs


def test_andreev_triangle_vacuous():
    # all side pairs of a triangle meet: nothing to check
    rep = andreev_verify(tri(2, 3, 7))
    assert rep.ok and rep.disjoint_pairs == 0


def test_andreev_pentagon():
    rep = andreev_verify(right_angled_pentagon())
    assert rep.ok
    assert rep.disjoint_pairs >= 5


def test_andreev_lambert_quadrilateral():
    rep = andreev_verify(lambert_quadrilateral(math.pi / 3))
    assert rep.ok


def test_andreev_requires_acute():
    th = 2 * math.pi / 5
    planes = [
        Hyperplane.euclidean([0, -1], 0.0),
        Hyperplane.euclidean([-math.sin(th), math.cos(th)], 0.0),
        Hyperplane.euclidean([1, 0], 3.0),
        Hyperplane.euclidean([0, 1], 1.0),
    ]
    quad = polytope_from_halfspaces(planes, E2)
    with pytest.raises(GeometryError):
        andreev_verify(quad)


def test_andreev_simplex_link():
    m = coxeter_matrix(
        [[1, 3, 2, 2], [3, 1, 3, 2], [2, 3, 1, 6], [2, 2, 6, 1]]
    )
    rep = andreev_verify(coxeter_simplex3(m))
    assert rep.ok


# --- splits ------------------------------------------------------------------------------


def test_split_strip_by_perpendicular():
    s = euclidean_strip()
    cut = Hyperplane.euclidean([1, 0], 0.0)
    res = split_by_hyperplane(s, cut)
    assert res.p1.facet_count == 3 and res.p2.facet_count == 3
    assert res.meets_every_facet_interior
    assert not res.contains_vertex


def test_split_square_by_diagonal():
    box = euclidean_box(1, 1)
    diag = hyperplane_through(E2, [-0.5, -0.5], [0.5, 0.5])
    res = split_by_hyperplane(box, diag)
    assert res.contains_vertex
    assert res.p1.facet_count == 3


def test_split_equilateral_by_altitude():
    poly = tri(3, 3, 3)
    v = poly.ordinary_vertices[0]
    alt = hyperplane_through(E2, v.chart, poly.interior)
    res = split_by_hyperplane(poly, alt)
    assert res.contains_vertex
    assert not res.meets_every_facet_interior


def test_split_misses_interior():
    box = euclidean_box(1, 1)
    with pytest.raises(GeometryError):
        split_by_hyperplane(box, Hyperplane.euclidean([1, 0], 5.0))


def test_split_area_additivity():
    for poly in [tri(2, 3, 7), tri(2, 4, 5), euclidean_box(2, 1)]:
        space = poly.space
        a = np.asarray(poly.interior)
        b = a + np.array([0.013, 0.027])
        cut = hyperplane_through(space, a, b)
        res = split_by_hyperplane(poly, cut)
        assert area2(res.p1) + area2(res.p2) == pytest.approx(
            area2(poly), abs=1e-9
        )


# --- areas ------------------------------------------------------------------------------


def test_area_triangles():
    assert area2(tri(2, 3, 7)) == pytest.approx(math.pi / 42, abs=1e-12)
    assert area2(tri(2, 3, 8)) == pytest.approx(math.pi / 24, abs=1e-12)
    assert area2(tri(3, 3, 4)) == pytest.approx(math.pi / 12, abs=1e-12)
    assert area2(tri(3, 3, 4)) == pytest.approx(2 * area2(tri(2, 3, 8)))


def test_area_square():
    assert area2(euclidean_box(1, 1)) == pytest.approx(1.0, abs=1e-12)


def test_area_infinite_raises():
    with pytest.raises(GeometryError):
        area2(euclidean_strip())


def test_area_pentagon_gauss_bonnet():
    assert area2(right_angled_pentagon()) == pytest.approx(
        3 * math.pi - 5 * math.pi / 2, abs=1e-9
    )


# --- documents -----------------------------------------------------------------------------


def test_polytope_doc_roundtrip():
    poly = tri(2, 3, 7)
    doc = polytope_to_doc(poly)
    again = polytope_from_doc(doc)
    assert again.space == poly.space
    assert again.facet_count == poly.facet_count
    assert area2(again) == pytest.approx(area2(poly), abs=1e-12)


def test_polytope_doc_triangle_shorthand():
    poly = polytope_from_doc({"triangle": [2, 3, 7]})
    assert area2(poly) == pytest.approx(math.pi / 42)
