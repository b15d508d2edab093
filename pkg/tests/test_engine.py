import math

import numpy as np
import pytest

from chambers.diagrams import coxeter_matrix, triangle_matrix
from chambers.engine import (
    Bounds,
    EngineError,
    IndexBoundExceeded,
    InvalidReflection,
    NonDiscretePair,
    SubgroupSpec,
    canonical_generators,
    chamber_bfs,
    chamber_polytope,
    element_order,
    fundamental_angles,
    mirrors_of_decomposition,
    reflect_root,
    simple_reflections,
    subgroup_chamber,
    theorem_check,
    verify_decomposition,
    _ctx,
)
from chambers.geometry import area2, euclidean_box, has_finite_volume


T237 = triangle_matrix(2, 3, 7)
T238 = triangle_matrix(2, 3, 8)
T236 = triangle_matrix(2, 3, 6)
T244 = triangle_matrix(2, 4, 4)
A2 = coxeter_matrix([[1, 3], [3, 1]])

# half-strip groups: two parallel walls (0, 1) plus a cap wall at right angles
STRIP_E2 = coxeter_matrix([[1, 0, 2], [0, 1, 2], [2, 2, 1]])
STRIP_H2 = coxeter_matrix(
    [[1, 0, 2], [0, 1, 2], [2, 2, 1]], weights=[(0, 1, -math.cosh(1.0))]
)


# --- representation ----------------------------------------------------------


def test_simple_reflections_are_involutions():
    for s in simple_reflections(T237):
        assert np.allclose(s.matrix @ s.matrix, np.eye(3), atol=1e-12)


def test_representation_preserves_gram():
    ctx = _ctx(T237)
    for s in simple_reflections(T237):
        g2 = s.matrix.T @ ctx.gram @ s.matrix
        assert np.allclose(g2, ctx.gram, atol=1e-9)


def test_generator_orders():
    # product of two reflections at angle pi/m is a rotation of order m
    assert element_order(T237, (0, 1)) == 2
    assert element_order(T237, (0, 2)) == 3
    assert element_order(T237, (1, 2)) == 7
    assert element_order(T237, (0,)) == 2


def test_coxeter_element_has_infinite_order():
    assert element_order(T237, (0, 1, 2), max_steps=100) is None


def test_reflect_root_simple():
    # s2(a1) = a1 + a2 in A2
    img = reflect_root(A2, [1.0, 0.0], [0.0, 1.0])
    assert np.allclose(img, [1.0, 1.0], atol=1e-12)


# --- chamber BFS --------------------------------------------------------------


@pytest.mark.parametrize("depth,count", [(0, 1), (1, 4), (2, 9)])
def test_chamber_counts_237(depth, count):
    assert len(chamber_bfs(T237, depth)) == count


def test_chamber_keys_separate_probes():
    # distinct keys must carry distinct probe points
    cs = chamber_bfs(T237, 4, realized=True)
    probes = [np.asarray(c.probe) for c in cs.chambers.values()]
    probes = [p / p[2] for p in probes]
    for i in range(len(probes)):
        for j in range(i + 1, len(probes)):
            assert np.linalg.norm(probes[i] - probes[j]) > 1e-6


def test_chamber_bfs_truncation_flag():
    cs = chamber_bfs(T237, 10, max_chambers=20)
    assert cs.truncated
    assert len(cs) == 20


def test_chamber_bfs_bad_bounds():
    with pytest.raises(EngineError):
        chamber_bfs(T237, -1)


def test_model_isometries_preserve_minkowski_form():
    cs = chamber_bfs(T237, 3, realized=True)
    J = np.diag([1.0, 1.0, -1.0])
    for ch in cs.chambers.values():
        assert np.allclose(ch.model.T @ J @ ch.model, J, atol=1e-12)


# --- canonical generators ------------------------------------------------------


def test_canonical_a2_conjugate_pair():
    # h = {s1, s2 s1 s2}: roots a1 and a1+a2 close up to the full simple system
    sys = canonical_generators(A2, SubgroupSpec.from_words((0,), (1, 0, 1)))
    roots = sorted(tuple(np.round(r, 9)) for r in sys.arrays())
    assert roots == [(0.0, 1.0), (1.0, 0.0)]


def test_canonical_idempotent_on_simple_system():
    sys = canonical_generators(T237, SubgroupSpec.from_words((0,), (1,), (2,)))
    assert len(sys) == 3
    assert canonical_generators(
        T237, SubgroupSpec(roots=sys.roots)
    ).key() == sys.key()


def test_canonical_pair_values_238():
    # doubling (2,3,8) across wall 1 gives a (3,3,4) simple system
    sys = canonical_generators(
        T238, SubgroupSpec.from_words((0,), (2,), (1, 2, 1))
    )
    ctx = _ctx(T238)
    arr = sys.arrays()
    grams = sorted(
        round(ctx.b(arr[i], arr[j]), 9)
        for i in range(3)
        for j in range(i + 1, 3)
    )
    assert grams[0] == pytest.approx(-math.cos(math.pi / 4), abs=1e-9)
    assert grams[1] == pytest.approx(-0.5, abs=1e-9)
    assert grams[2] == pytest.approx(-0.5, abs=1e-9)


def test_canonical_parallel_pair_kept():
    sys = canonical_generators(
        STRIP_E2, SubgroupSpec.from_words((0,), (1,))
    )
    ctx = _ctx(STRIP_E2)
    a, b = sys.arrays()
    assert ctx.b(a, b) == pytest.approx(-1.0, abs=1e-12)


def test_canonical_nested_pair_replaced():
    # s1 and its translate s0 s1 s0 bound nested half-planes (Gram value +3);
    # the canonical pair is parallel again
    sys = canonical_generators(
        STRIP_E2, SubgroupSpec.from_words((1,), (0, 1, 0))
    )
    ctx = _ctx(STRIP_E2)
    a, b = sys.arrays()
    assert ctx.b(a, b) == pytest.approx(-1.0, abs=1e-9)


def test_canonical_rejects_even_word():
    with pytest.raises(InvalidReflection):
        canonical_generators(T237, SubgroupSpec.from_words((0, 1)))


def test_canonical_rejects_timelike_root():
    with pytest.raises(InvalidReflection):
        canonical_generators(
            T237, SubgroupSpec(roots=((0.0, 0.0, 0.0),))
        )


def test_non_discrete_pair():
    # a positive unit vector meeting wall 1 of (2,3,7) at 1.2 radians, which
    # is no rational multiple of pi
    from chambers.geometry import mirror_angle_order

    theta = 1.2
    assert mirror_angle_order(theta) is None
    ctx = _ctx(T237)
    g = ctx.gram
    c3 = 2 * math.cos(theta)  # makes B(e1, c) = -cos(theta) since B12 = 0
    # unit-norm condition for c = (0, c2, c3) is a quadratic in c2
    p = 2 * g[1, 2] * c3
    q = c3 * c3 - 1
    c2 = (-p + math.sqrt(p * p - 4 * q)) / 2
    c = np.array([0.0, c2, c3])
    assert c.min() >= 0 and ctx.b(c, c) == pytest.approx(1.0, abs=1e-12)
    assert ctx.b(np.eye(3)[0], c) == pytest.approx(-math.cos(theta), abs=1e-12)
    with pytest.raises(NonDiscretePair):
        canonical_generators(
            T237, SubgroupSpec(roots=(tuple(np.eye(3)[0]), tuple(c)))
        )


def test_subgroup_spec_doc_roundtrip():
    h = SubgroupSpec.from_words((0,), (1, 2, 1))
    assert SubgroupSpec.from_doc(h.to_doc()) == h
    with pytest.raises(EngineError):
        SubgroupSpec.from_doc({"reflections": [{"oops": 1}]})


# --- subgroup chambers -----------------------------------------------------------


def test_subgroup_chamber_full_group_is_index_one():
    sc = subgroup_chamber(T237, SubgroupSpec.from_words((0,), (1,), (2,)))
    assert sc.index == 1
    assert sc.facet_count == 3
    assert len(sc.system) == sc.facet_count


def test_subgroup_chamber_238():
    sc = subgroup_chamber(
        T238, SubgroupSpec.from_words((0,), (2,), (1, 2, 1))
    )
    assert sc.index == 2
    assert sc.facet_count == 3
    assert len(sc.system) == sc.facet_count


def test_subgroup_chamber_square_244():
    # reflections in the four sides of the square tiled by 8 chambers
    r = (0, 2)  # rotation of order 4 about the square's center
    words = [
        (1,),
        r + (1,) + r[::-1],
        r + r + (1,) + r[::-1] + r[::-1],
        r[::-1] + (1,) + r,
    ]
    sc = subgroup_chamber(T244, SubgroupSpec.from_words(*words))
    assert sc.index == 8
    assert sc.facet_count == 4
    assert len(sc.system) == 4


def test_subgroup_chamber_strip_configs():
    for m in (STRIP_E2, STRIP_H2):
        sc = subgroup_chamber(m, SubgroupSpec.from_words((0,), (1,)))
        assert sc.index == 2
        assert sc.facet_count == 2


def test_subgroup_index_bound():
    with pytest.raises(IndexBoundExceeded):
        subgroup_chamber(
            T237,
            SubgroupSpec.from_words((0,)),
            Bounds(max_chambers=500, max_index=16),
        )


def test_chamber_polytope_matches_wall_count():
    h = SubgroupSpec.from_words((0,), (2,), (1, 2, 1))
    sc = subgroup_chamber(T236, h)
    D = chamber_polytope(T236, sc.system)
    assert D.facet_count == sc.facet_count
    # equilateral chamber: all three angles pi/3
    assert sorted(D.vertex_angle(v) for v in D.ordinary_vertices) == pytest.approx(
        [math.pi / 3] * 3, abs=1e-9
    )


# --- theorem verdicts --------------------------------------------------------------


def test_theorem_238():
    v = theorem_check(T238, SubgroupSpec.from_words((0,), (2,), (1, 2, 1)))
    assert (v.k_F, v.k_P, v.index) == (3, 3, 2)
    assert v.holds and v.finite_volume
    assert v.area_fund == pytest.approx(math.pi / 24, abs=1e-12)
    assert v.area_chamber == pytest.approx(math.pi / 12, abs=1e-12)
    assert v.area_residual <= 1e-9


def test_theorem_236():
    v = theorem_check(T236, SubgroupSpec.from_words((0,), (2,), (1, 2, 1)))
    assert (v.k_F, v.k_P, v.index) == (3, 3, 2)
    assert v.holds and v.finite_volume
    assert v.area_residual <= 1e-9


def test_theorem_244_square():
    r = (0, 2)
    words = [
        (1,),
        r + (1,) + r[::-1],
        r + r + (1,) + r[::-1] + r[::-1],
        r[::-1] + (1,) + r,
    ]
    v = theorem_check(T244, SubgroupSpec.from_words(*words))
    assert (v.k_F, v.k_P, v.index) == (3, 4, 8)
    assert v.holds and v.finite_volume
    assert v.area_residual <= 1e-9


def test_theorem_strip_counterexamples():
    for m in (STRIP_E2, STRIP_H2):
        v = theorem_check(m, SubgroupSpec.from_words((0,), (1,)))
        assert (v.k_F, v.k_P, v.index) == (3, 2, 2)
        assert not v.finite_volume
        assert not v.holds
        assert v.area_residual is None


# --- decomposition checks -------------------------------------------------------------


def test_verify_decomposition_square():
    r = (0, 2)
    words = [
        (1,),
        r + (1,) + r[::-1],
        r + r + (1,) + r[::-1] + r[::-1],
        r[::-1] + (1,) + r,
    ]
    sc = subgroup_chamber(T244, SubgroupSpec.from_words(*words))
    D = chamber_polytope(T244, sc.system)
    F = _ctx(T244).chamber
    rep = verify_decomposition(D, F, sc.chambers)
    assert rep.ok
    assert rep.tiles == 8
    assert rep.mirror_symmetric
    assert rep.area_residual <= 1e-9


def test_verify_decomposition_negative_control():
    # translated copies of the chamber are congruent but stick out of D
    sc = subgroup_chamber(
        T244, SubgroupSpec.from_words((0,), (1,), (2,))
    )
    D = chamber_polytope(T244, sc.system)
    F = _ctx(T244).chamber
    box = euclidean_box(10.0, 10.0)
    rep = verify_decomposition(box, F, [F])
    assert not rep.ok
    assert "area residual" in " ".join(rep.failures)


def test_mirrors_and_fundamental_angles_236():
    h = SubgroupSpec.from_words((0,), (2,), (1, 2, 1))
    sc = subgroup_chamber(T236, h)
    D = chamber_polytope(T236, sc.system)
    mirrors = mirrors_of_decomposition(D, sc.chambers, T236)
    assert len(mirrors) == 1  # the doubling wall
    flags = fundamental_angles(D, mirrors)
    # the doubling mirror is an altitude: it passes through one vertex of the
    # equilateral chamber and crosses the opposite side
    assert sorted(flags.values()) == [False, True, True]


def test_mirrors_square_244():
    r = (0, 2)
    words = [
        (1,),
        r + (1,) + r[::-1],
        r + r + (1,) + r[::-1] + r[::-1],
        r[::-1] + (1,) + r,
    ]
    sc = subgroup_chamber(T244, SubgroupSpec.from_words(*words))
    D = chamber_polytope(T244, sc.system)
    mirrors = mirrors_of_decomposition(D, sc.chambers, T244)
    assert len(mirrors) == 4  # two diagonals and two mid-lines
    flags = fundamental_angles(D, mirrors)
    # every corner of the square lies on a diagonal mirror
    assert all(flag is False for flag in flags.values())
